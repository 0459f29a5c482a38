use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::Serialize;

use super::kernel::{config_lattice, lattice_unchecked};
use super::symbolic::{approx_coord, check_config, coord_sign, SymbolTable, SymbolicVector};
use crate::error::{Error, Result};
use crate::lattice::{InitialConfig, LatticePoint};

/// The first `n` primes.
fn primes(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    let mut c = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// The real number `Σ e_j log p_j`, kept as its exponent vector.
///
/// Comparison uses the integer `Π p_j^{e_j}`, which orders these reals
/// exactly; distinct exponent vectors never tie.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalReal {
    exponents: Vec<u64>,
    #[serde(skip)]
    product: BigUint,
}

impl FormalReal {
    pub fn new(exponents: Vec<u64>) -> Self {
        let product = primes(exponents.len())
            .into_iter()
            .zip(&exponents)
            .fold(BigUint::one(), |acc, (p, &e)| acc * BigUint::from(p).pow(e as u32));
        FormalReal { exponents, product }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `Π p_j^{e_j}`, whose logarithm is this real.
    pub fn product(&self) -> &BigUint {
        &self.product
    }

    pub fn approx(&self) -> f64 {
        let ps = primes(self.exponents.len());
        ps.iter().zip(&self.exponents).map(|(&p, &e)| e as f64 * (p as f64).ln()).sum()
    }

    fn add(&self, other: &FormalReal) -> FormalReal {
        FormalReal {
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
            product: &self.product * &other.product,
        }
    }
}

impl PartialOrd for FormalReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FormalReal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.product.cmp(&other.product)
    }
}

impl std::fmt::Display for FormalReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ps = primes(self.exponents.len());
        let terms: Vec<String> = ps
            .iter()
            .zip(&self.exponents)
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| if e == 1 { format!("log {p}") } else { format!("{e} log {p}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Maps each vector `x` to `log(2^{x_1} 3^{x_2} ... p_n^{x_n})`.
pub fn embed_one_dimensional(config: &InitialConfig) -> Vec<FormalReal> {
    config.initials().iter().map(|v| FormalReal::new(v.coords().to_vec())).collect()
}

/// One-dimensional Ulam run over formal reals, in increasing order, keeping
/// only sums whose exponents stay within `caps`.
pub fn formal_ulam_run(initials: &[FormalReal], caps: &[u64]) -> Result<Vec<FormalReal>> {
    let n = caps.len();
    let mut pending: BTreeMap<FormalReal, (u8, bool)> = BTreeMap::new();
    for v in initials {
        if v.exponents.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.exponents.len() });
        }
        if v.exponents.iter().zip(caps).any(|(e, c)| e > c) {
            return Err(Error::BoundTooSmall(v.to_string()));
        }
        pending.insert(v.clone(), (0, true));
    }
    let mut members: Vec<FormalReal> = Vec::new();
    while let Some((w, (count, initial))) = pending.pop_first() {
        if !initial && count != 1 {
            continue;
        }
        for u in &members {
            let s = u.add(&w);
            if s.exponents.iter().zip(caps).all(|(e, c)| e <= c) {
                let slot = pending.entry(s).or_insert((0, false));
                slot.0 = (slot.0 + 1).min(2);
            }
        }
        members.push(w);
    }
    Ok(members)
}

/// Output of [`embed_integer_lattice`].
#[derive(Debug, Clone, Serialize)]
pub struct LatticeEmbedding {
    /// Integer config with the same characteristic lattice as the input.
    pub config: InitialConfig,
    /// Input indices of the spanning subset.
    pub basis_indices: Vec<usize>,
    /// Rational direction with positive dot product against every
    /// coefficient vector.
    #[serde(serialize_with = "ser_rationals")]
    pub direction: Vec<BigRational>,
    pub multiplier: u64,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Solves `Σ c_j basis_j = target` exactly, or returns `None` when the
/// target is outside the span. The basis must be independent.
fn express(basis: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let l = basis.len();
    // Rows are coordinates; columns are basis vectors, then the target.
    let mut rows: Vec<Vec<BigRational>> = (0..target.len())
        .map(|i| basis.iter().map(|b| b[i].clone()).chain([target[i].clone()]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..l {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (a, b) = if i < r {
                    let (h, t) = rows.split_at_mut(r);
                    (&mut h[i], &t[0])
                } else {
                    let (h, t) = rows.split_at_mut(i);
                    (&mut t[0], &h[r])
                };
                for (x, y) in a.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[l].is_zero()) {
        return None;
    }
    let mut out = vec![BigRational::zero(); l];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][l].clone();
    }
    Some(out)
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Replaces a config of real vectors in the nonnegative orthant by an
/// integer config with the same characteristic lattice.
///
/// The spanning subset `Q` is chosen greedily in input order and every
/// vector is written over it with rational coefficients `u_i`. Let `b_j` be
/// the coordinate sum of `q_j`. A dyadic rounding `u'` of `b` has
/// `u_i · u' > 0` for all `i`; with `m` the least such product, `Ω` the
/// least coefficient and `M` the least positive integer with `Ω + M m > 0`,
/// the vectors `u_i + M (u_i · u') 1` are positive, and clearing
/// denominators gives the result. The lattice is compared exactly before
/// returning.
pub fn embed_integer_lattice(config: &[SymbolicVector], symbols: &SymbolTable) -> Result<LatticeEmbedding> {
    check_config(config, symbols)?;
    for (i, v) in config.iter().enumerate() {
        if v.coords().iter().any(|c| coord_sign(c, symbols).is_lt()) {
            return Err(Error::NonPositiveDirection(i));
        }
    }
    let width = config.iter().map(SymbolicVector::width).max().unwrap_or(1);
    let flat: Vec<Vec<BigRational>> = config.iter().map(|v| v.flatten(width)).collect();

    let mut basis_indices: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    for (i, f) in flat.iter().enumerate() {
        if express(&basis, f).is_none() {
            basis_indices.push(i);
            basis.push(f.clone());
        }
    }
    let coeffs: Vec<Vec<BigRational>> = flat
        .iter()
        .map(|f| express(&basis, f).expect("spanning subset covers every vector"))
        .collect();

    let b: Vec<f64> = basis_indices
        .iter()
        .map(|&i| config[i].coords().iter().map(|c| approx_coord(c, symbols)).sum())
        .collect();
    let direction = (0..=64)
        .find_map(|t| {
            let scale = 2f64.powi(t);
            let den = BigInt::one() << t as usize;
            let u: Vec<BigRational> = b
                .iter()
                .map(|&x| BigRational::new(BigInt::from_f64((x * scale).round()).unwrap_or_default(), den.clone()))
                .collect();
            coeffs.iter().all(|c| dot(c, &u).is_positive()).then_some(u)
        })
        .ok_or_else(|| {
            // Only reachable when the declared values are too inaccurate.
            let sums = config.iter().map(|v| v.approx(symbols).iter().sum::<f64>());
            Error::NonPositiveDirection(sums.into_iter().position(|s| s <= 0.0).unwrap_or(0))
        })?;

    let dots: Vec<BigRational> = coeffs.iter().map(|c| dot(c, &direction)).collect();
    let m = dots.iter().min().unwrap().clone();
    let omega = coeffs.iter().flatten().min().unwrap().clone();
    // Smallest positive M with Ω + M m > 0.
    let mut multiplier = if omega.is_positive() {
        BigInt::one()
    } else {
        (-&omega / &m).floor().to_integer() + 1
    };
    let dir_sum: BigRational = direction.iter().sum();
    // det(I + M 1 u'^T) = 1 + M Σ u'_j.
    while (BigRational::one() + BigRational::from_integer(multiplier.clone()) * &dir_sum).is_zero() {
        multiplier += 1;
    }
    let mq = BigRational::from_integer(multiplier.clone());

    let ys: Vec<Vec<BigRational>> =
        coeffs.iter().zip(&dots).map(|(c, d)| c.iter().map(|x| x + &mq * d).collect()).collect();
    let lcd = ys.iter().flatten().fold(BigInt::one(), |acc, y| acc.lcm(y.denom()));
    let lcdq = BigRational::from_integer(lcd);
    let mut points = Vec::with_capacity(ys.len());
    for y in &ys {
        let coords: Option<Vec<u64>> = y.iter().map(|x| num_traits::ToPrimitive::to_u64(&(x * &lcdq).to_integer())).collect();
        points.push(LatticePoint::new(coords.ok_or(Error::Overflow)?));
    }
    let out = InitialConfig::new(basis.len(), points)?;
    if config_lattice(&out) != lattice_unchecked(config) {
        return Err(Error::IndependenceViolated("embedding changed the characteristic lattice".into()));
    }
    let multiplier = num_traits::ToPrimitive::to_u64(&multiplier).ok_or(Error::Overflow)?;
    Ok(LatticeEmbedding { config: out, basis_indices, direction, multiplier })
}
