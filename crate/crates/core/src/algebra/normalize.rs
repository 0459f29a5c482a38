use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::kernel::config_lattice;
use crate::error::{Error, Result};
use crate::lattice::{InitialConfig, LatticePoint};

type Q = BigRational;

/// A planar config moved onto both axes by a linear map.
#[derive(Debug, Clone, Serialize)]
pub struct AxisNormalization {
    pub config: InitialConfig,
    /// Row-major 2x2 matrix taking input vectors to output vectors.
    #[serde(serialize_with = "ser_matrix")]
    pub map: [[Q; 2]; 2],
}

fn ser_matrix<S: serde::Serializer>(m: &[[Q; 2]; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|r| [r[0].to_string(), r[1].to_string()]))
}

fn apply(m: &[[Q; 2]; 2], x: &Q, y: &Q) -> (Q, Q) {
    (&m[0][0] * x + &m[0][1] * y, &m[1][0] * x + &m[1][1] * y)
}

fn mul(a: &[[Q; 2]; 2], b: &[[Q; 2]; 2]) -> [[Q; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn to_point(x: &Q, y: &Q) -> Option<LatticePoint> {
    if !x.is_integer() || !y.is_integer() || x.is_negative() || y.is_negative() {
        return None;
    }
    Some(LatticePoint::new(vec![x.to_integer().to_u64()?, y.to_integer().to_u64()?]))
}

impl AxisNormalization {
    /// Image of an input point, if it is a lattice point.
    pub fn forward(&self, p: &LatticePoint) -> Option<LatticePoint> {
        let (x, y) = apply(&self.map, &Q::from_integer(p.coords()[0].into()), &Q::from_integer(p.coords()[1].into()));
        to_point(&x, &y)
    }

    /// Smallest box containing the image of the box `[0, limits]`.
    pub fn image_box(&self, limits: &[u64; 2]) -> Vec<u64> {
        let corners = [[0, 0], [limits[0], 0], [0, limits[1]], [limits[0], limits[1]]];
        (0..2)
            .map(|i| {
                corners
                    .iter()
                    .map(|&[x, y]| {
                        let (a, b) = apply(&self.map, &Q::from_integer(x.into()), &Q::from_integer(y.into()));
                        if i == 0 { a } else { b }
                    })
                    .max()
                    .unwrap()
                    .ceil()
                    .to_integer()
                    .to_u64()
                    .unwrap_or(u64::MAX)
            })
            .collect()
    }

    /// Preimage of an output point, if it is a lattice point.
    pub fn backward(&self, p: &LatticePoint) -> Option<LatticePoint> {
        let [[a, b], [c, d]] = &self.map;
        let det = a * d - b * c;
        let inv = [[d / &det, -b / &det], [-c / &det, a / &det]];
        let (x, y) = apply(&inv, &Q::from_integer(p.coords()[0].into()), &Q::from_integer(p.coords()[1].into()));
        to_point(&x, &y)
    }
}

/// Shears a planar config so that one vector lies on each axis.
///
/// First `(x, y) -> (x, y - c1 x)` with `c1` the least slope `y/x`, then
/// `(x, y) -> (x - c2 y, y)` with `c2` the least ratio `x/y` among the
/// sheared vectors; denominators are then cleared and common factors
/// removed. The characteristic lattice is checked to be unchanged.
pub fn normalize_axes_2d(config: &InitialConfig) -> Result<AxisNormalization> {
    if config.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: config.dim() });
    }
    let vs: Vec<(Q, Q)> = config
        .initials()
        .iter()
        .map(|p| (Q::from_integer(p.coords()[0].into()), Q::from_integer(p.coords()[1].into())))
        .collect();
    let (x0, y0) = &vs[0];
    if vs.iter().all(|(x, y)| x * y0 == y * x0) {
        return Err(Error::DegenerateSpan);
    }

    let c1 = vs.iter().filter(|(x, _)| x.is_positive()).map(|(x, y)| y / x).min().ok_or(Error::DegenerateSpan)?;
    let s1 = [[Q::one(), Q::zero()], [-c1, Q::one()]];
    let c2 = vs
        .iter()
        .map(|(x, y)| apply(&s1, x, y))
        .filter(|(_, y)| y.is_positive())
        .map(|(x, y)| x / y)
        .min()
        .ok_or(Error::DegenerateSpan)?;
    let s2 = [[Q::one(), -c2], [Q::zero(), Q::one()]];
    let mut map = mul(&s2, &s1);

    let images: Vec<(Q, Q)> = vs.iter().map(|(x, y)| apply(&map, x, y)).collect();
    let lcd = images.iter().fold(BigInt::one(), |acc, (x, y)| acc.lcm(x.denom()).lcm(y.denom()));
    let g = images.iter().fold(BigInt::zero(), |acc, (x, y)| {
        acc.gcd(&(x * Q::from_integer(lcd.clone())).to_integer()).gcd(&(y * Q::from_integer(lcd.clone())).to_integer())
    });
    let factor = Q::new(lcd, g);
    for row in map.iter_mut() {
        for e in row.iter_mut() {
            *e = &*e * &factor;
        }
    }

    let points = vs
        .iter()
        .map(|(x, y)| {
            let (a, b) = apply(&map, x, y);
            to_point(&a, &b).ok_or(Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = InitialConfig::new(2, points)?;
    if config_lattice(&out) != config_lattice(config) {
        return Err(Error::IndependenceViolated("normalization changed the characteristic lattice".into()));
    }
    Ok(AxisNormalization { config: out, map })
}
