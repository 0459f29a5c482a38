//! Closed-form membership oracles, set-versus-oracle diffs and the angle
//! analysis of three-dimensional sets.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_bound, Bound, InitialConfig, LatticePoint, UlamSet};
use crate::lattice::{bound::ResolvedBound, size::LevelFn};
use crate::par::{self, Execution};

/// The three parameter ranges of the `{(1,0),(0,1),(m,n)}` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Class55Case {
    /// `m, n` even: repeating L-shapes.
    EvenEven,
    /// `m` even, `n` odd, `n > 3`: two-generator set truncated at `y = n`.
    EvenOdd,
    /// `m` even, `n = 3`: two-generator set shifted right.
    EvenThree,
}

impl Class55Case {
    fn number(self) -> u8 {
        match self {
            Class55Case::EvenEven => 1,
            Class55Case::EvenOdd => 2,
            Class55Case::EvenThree => 3,
        }
    }
}

/// A closed-form characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OracleId {
    /// `{(1,0),(0,1)}`.
    TwoGenerators,
    /// `{(2,0),(0,1),(3,1)}`.
    Config2031,
    /// `{(1,0),(0,1),(2,3)}`.
    Config1023,
    /// `{(1,0),(0,1),(m,n)}`. Degenerate parameters, where `(m,n)` already
    /// belongs to the two-generator set, are answered by that oracle.
    Class55 { case: Class55Case, m: u64, n: u64 },
    /// The plane `x = 2` of the set generated by the unit vectors of `Z^3`.
    Unit3dHyperplane,
}

fn two_generators(x: u64, y: u64) -> bool {
    x == 1 || y == 1 || (x >= 3 && y >= 3 && x % 2 == 1 && y % 2 == 1)
}

impl OracleId {
    /// Builds a `{(1,0),(0,1),(m,n)}` oracle, checking the case's side
    /// conditions. Degenerate `(m,n)` is accepted for every case.
    pub fn class55(case: Class55Case, m: u64, n: u64) -> Result<OracleId> {
        let id = OracleId::Class55 { case, m, n };
        if (m, n) == (0, 0) || two_generators(m, n) {
            return Ok(id);
        }
        let ok = match case {
            Class55Case::EvenEven => m % 2 == 0 && n % 2 == 0 && m >= 4 && n >= 4,
            Class55Case::EvenOdd => m % 2 == 0 && m >= 2 && n % 2 == 1 && n > 3,
            Class55Case::EvenThree => m % 2 == 0 && m >= 2 && n == 3,
        };
        if !ok {
            let need = match case {
                Class55Case::EvenEven => "m, n even and at least 4",
                Class55Case::EvenOdd => "m even and positive, n odd and greater than 3",
                Class55Case::EvenThree => "m even and positive, n = 3",
            };
            return Err(Error::BadParameters(format!("case {} needs {need}, got ({m},{n})", case.number())));
        }
        Ok(id)
    }

    /// Looks up an oracle by name; the `class-5_5-case*` oracles need `(m, n)`.
    pub fn parse(name: &str, params: Option<(u64, u64)>) -> Result<OracleId> {
        let case = match name {
            "class-5_5-case1" => Some(Class55Case::EvenEven),
            "class-5_5-case2" => Some(Class55Case::EvenOdd),
            "class-5_5-case3" => Some(Class55Case::EvenThree),
            _ => None,
        };
        if let Some(case) = case {
            let (m, n) = params.ok_or_else(|| Error::BadParameters(format!("{name} needs parameters m,n")))?;
            return OracleId::class55(case, m, n);
        }
        let id = match name {
            "two-generators" | "theorem1" => OracleId::TwoGenerators,
            "config-2_0-0_1-3_1" => OracleId::Config2031,
            "config-1_0-0_1-2_3" => OracleId::Config1023,
            "unit3d-hyperplane" => OracleId::Unit3dHyperplane,
            _ => return Err(Error::UnknownOracle(name.to_string())),
        };
        if params.is_some() {
            return Err(Error::BadParameters(format!("{name} takes no parameters")));
        }
        Ok(id)
    }

    /// Names accepted by [`OracleId::parse`].
    pub fn names() -> &'static [&'static str] {
        &[
            "two-generators",
            "config-2_0-0_1-3_1",
            "config-1_0-0_1-2_3",
            "class-5_5-case1",
            "class-5_5-case2",
            "class-5_5-case3",
            "unit3d-hyperplane",
        ]
    }

    pub fn dim(&self) -> usize {
        match self {
            OracleId::Unit3dHyperplane => 3,
            _ => 2,
        }
    }

    /// The configuration the oracle describes.
    pub fn config(&self) -> InitialConfig {
        let rows: Vec<Vec<u64>> = match *self {
            OracleId::TwoGenerators => vec![vec![1, 0], vec![0, 1]],
            OracleId::Config2031 => vec![vec![2, 0], vec![0, 1], vec![3, 1]],
            OracleId::Config1023 => vec![vec![1, 0], vec![0, 1], vec![2, 3]],
            OracleId::Class55 { m, n, .. } => vec![vec![1, 0], vec![0, 1], vec![m, n]],
            OracleId::Unit3dHyperplane => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        };
        InitialConfig::from_rows(&rows).expect("oracle configs are valid")
    }

    /// True when `(m, n)` already lies in the two-generator set.
    pub fn is_degenerate(&self) -> bool {
        matches!(*self, OracleId::Class55 { m, n, .. } if two_generators(m, n))
    }

    /// Whether the oracle makes a claim about `p`.
    fn in_domain(&self, p: &[u64]) -> bool {
        match self {
            OracleId::Unit3dHyperplane => p[0] == 2,
            _ => true,
        }
    }

    /// Points whose membership the oracle reports but does not vouch for.
    fn is_transient(&self, p: &[u64]) -> bool {
        match *self {
            OracleId::Class55 { case: Class55Case::EvenEven, m, n } if !self.is_degenerate() => {
                p[0] <= m + n || p[1] <= m + n
            }
            _ => false,
        }
    }

    fn member(&self, p: &[u64]) -> bool {
        if self.is_degenerate() {
            return two_generators(p[0], p[1]);
        }
        match *self {
            OracleId::TwoGenerators => two_generators(p[0], p[1]),
            OracleId::Config2031 => {
                let (x, y) = (p[0], p[1]);
                (x, y) == (2, 0) || (x, y) == (0, 1) || (y == 1 && x >= 2) || ((x == 2 || x == 3) && y >= 2)
            }
            OracleId::Config1023 => {
                let (x, y) = (p[0], p[1]);
                x == 1 || y == 1 || (x, y) == (2, 3) || (x >= 4 && x % 2 == 0 && y >= 3 && y % 2 == 1)
            }
            OracleId::Class55 { case, m, n } => class55_member(case, m, n, p[0], p[1]),
            OracleId::Unit3dHyperplane => {
                let (y, z) = (p[1], p[2]);
                (y, z) == (0, 1) || (y, z) == (1, 0) || (y >= 3 && z >= 3 && y % 2 == 1 && z % 2 == 1)
            }
        }
    }
}

/// Membership in the non-degenerate `{(1,0),(0,1),(m,n)}` sets.
///
/// Case 1 layout, read off computed sets: apart from the axis families and
/// `(m,n)`, members have both coordinates odd. With `x = 2u+1, y = 2v+1`,
/// the block `j` L-shape has a vertical arm `jm <= u < jm + m/2, v >= jn`
/// and a horizontal arm `jn <= v < jn + n/2, u >= jm`.
fn class55_member(case: Class55Case, m: u64, n: u64, x: u64, y: u64) -> bool {
    if x == 1 || y == 1 || (x, y) == (m, n) {
        return true;
    }
    match case {
        Class55Case::EvenEven => {
            if x % 2 == 0 || y % 2 == 0 {
                return false;
            }
            let (u, v) = ((x - 1) / 2, (y - 1) / 2);
            let j = u / m;
            let k = v / n;
            (u - j * m < m / 2 && v >= j * n) || (v - k * n < n / 2 && u >= k * m)
        }
        Class55Case::EvenOdd => two_generators(x, y) && !(x == m + 1 && y % 2 == 1 && y >= n),
        Class55Case::EvenThree => match x.cmp(&m) {
            std::cmp::Ordering::Less => two_generators(x, y),
            std::cmp::Ordering::Equal => y == 3,
            std::cmp::Ordering::Greater => x % 2 == 0 && y % 2 == 1 && y >= 3,
        },
    }
}

impl fmt::Display for OracleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleId::TwoGenerators => write!(f, "two-generators"),
            OracleId::Config2031 => write!(f, "config-2_0-0_1-3_1"),
            OracleId::Config1023 => write!(f, "config-1_0-0_1-2_3"),
            OracleId::Class55 { case, m, n } => write!(f, "class-5_5-case{} (m={m},n={n})", case.number()),
            OracleId::Unit3dHyperplane => write!(f, "unit3d-hyperplane"),
        }
    }
}

impl FromStr for OracleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OracleId::parse(s, None)
    }
}

/// Closed-form membership of `p` (coefficients of the oracle's config).
pub fn oracle_membership(id: OracleId, p: &[u64]) -> Result<bool> {
    if p.len() != id.dim() {
        return Err(Error::BadParameters(format!("{id} takes {} coordinates, got {}", id.dim(), p.len())));
    }
    if !id.in_domain(p) {
        return Err(Error::BadParameters(format!("{id} only describes points with x = 2")));
    }
    Ok(id.member(p))
}

/// Differences between a computed set and an oracle.
#[derive(Debug, Clone, Serialize)]
pub struct MismatchReport {
    pub oracle: String,
    pub region: Bound,
    /// Number of region points the oracle was evaluated on.
    pub checked: usize,
    /// Predicted by the oracle but absent from the set.
    pub missing: Vec<LatticePoint>,
    /// In the set but not predicted.
    pub extra: Vec<LatticePoint>,
    /// Mismatches inside the oracle's declared transient band. These do not
    /// count against verification.
    pub transient_missing: Vec<LatticePoint>,
    pub transient_extra: Vec<LatticePoint>,
    /// The parameters were degenerate and the two-generator form was used.
    pub degenerate: bool,
}

impl MismatchReport {
    pub fn is_verified(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compares `set` with `id` on every lattice point of `region`.
pub fn compare_set_to_oracle(set: &UlamSet, id: OracleId, region: &Bound) -> Result<MismatchReport> {
    compare_set_to_oracle_with(set, id, region, Execution::default())
}

pub fn compare_set_to_oracle_with(
    set: &UlamSet,
    id: OracleId,
    region: &Bound,
    exec: Execution,
) -> Result<MismatchReport> {
    let dim = set.dim();
    if dim != id.dim() {
        return Err(Error::DimensionMismatch { expected: id.dim(), found: dim });
    }
    let mut want = id.config().initials().to_vec();
    let mut have = set.config().initials().to_vec();
    want.sort();
    have.sort();
    if want != have {
        return Err(Error::BadParameters(format!("set was not generated from the {id} config")));
    }
    let points = enumerate_bound(region, set.sizefn(), dim)?;
    let outer = ResolvedBound::new(set.bound(), LevelFn::new(set.sizefn(), dim)?, dim)?;
    for p in &points {
        if outer.level_if_inside(p.coords())?.is_none() {
            return Err(Error::RegionExceedsBound);
        }
    }
    let points: Vec<LatticePoint> = points.into_iter().filter(|p| id.in_domain(p.coords())).collect();

    const CHUNK: usize = 4096;
    let chunks = points.len().div_ceil(CHUNK);
    // Each point is tagged: 0 missing, 1 extra, 2 transient missing, 3 transient extra.
    let tagged: Vec<Vec<(u8, LatticePoint)>> = par::map_range(exec, chunks, |c| {
        let mut out = Vec::new();
        for p in &points[c * CHUNK..((c + 1) * CHUNK).min(points.len())] {
            let predicted = id.member(p.coords());
            let present = set.contains(p.coords());
            if predicted != present {
                let t = u8::from(id.is_transient(p.coords())) * 2 + u8::from(present);
                out.push((t, p.clone()));
            }
        }
        out
    });
    let mut lists: [Vec<LatticePoint>; 4] = Default::default();
    for (t, p) in tagged.into_iter().flatten() {
        lists[t as usize].push(p);
    }
    let [missing, extra, transient_missing, transient_extra] = lists;
    Ok(MismatchReport {
        oracle: id.to_string(),
        region: region.clone(),
        checked: points.len(),
        missing,
        extra,
        transient_missing,
        transient_extra,
        degenerate: id.is_degenerate(),
    })
}

/// True iff no member has all coordinates equal.
pub fn diagonal_absent(set: &UlamSet) -> bool {
    !set.points().iter().any(|p| p.coords().windows(2).all(|w| w[0] == w[1]))
}

/// A member with its angle to the all-ones direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleEntry {
    pub point: LatticePoint,
    /// Exact squared cosine `s^2 / (d |p|^2)` with `s` the coordinate sum.
    #[serde(serialize_with = "ser_ratio")]
    pub cos2: Ratio<u128>,
    /// The angle in degrees.
    pub degrees: f64,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl AngleEntry {
    /// Coordinates sorted ascending: the permutation class.
    pub fn class(&self) -> Vec<u64> {
        let mut c = self.point.coords().to_vec();
        c.sort_unstable();
        c
    }

    /// Away from the coordinate planes and the low planes `x_i <= 2` that
    /// hold the explicit families.
    pub fn is_interior(&self) -> bool {
        self.point.coords().iter().all(|&c| c >= 3)
    }
}

fn angle_entry(p: &LatticePoint) -> Result<AngleEntry> {
    let c = p.coords();
    let s = c.iter().try_fold(0u128, |a, &x| a.checked_add(x as u128)).ok_or(Error::Overflow)?;
    let q = c
        .iter()
        .try_fold(0u128, |a, &x| (x as u128).checked_mul(x as u128).and_then(|x2| a.checked_add(x2)))
        .ok_or(Error::Overflow)?;
    let num = s.checked_mul(s).ok_or(Error::Overflow)?;
    let den = q.checked_mul(c.len() as u128).ok_or(Error::Overflow)?;
    let cos2 = Ratio::new(num, den);
    let degrees = (num as f64 / den as f64).sqrt().min(1.0).acos().to_degrees();
    Ok(AngleEntry { point: p.clone(), cos2, degrees })
}

/// Members sorted by decreasing angle with `(1,...,1)`, ties broken
/// lexicographically.
pub fn angle_ranking(set: &UlamSet) -> Result<Vec<AngleEntry>> {
    let mut out = set.points().iter().map(angle_entry).collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.cos2.cmp(&b.cos2).then_with(|| a.point.cmp(&b.point)));
    Ok(out)
}

/// Distinct permutation classes of a ranking, in ranking order.
pub fn ranked_classes(ranking: &[AngleEntry]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    for e in ranking {
        let c = e.class();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}
