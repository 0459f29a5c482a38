//! Column periodicity of planar Ulam sets.
//!
//! A column is the membership pattern along one coordinate with the other
//! held fixed. When the config contains `(0, a)` and no other vector on that
//! axis, every column is eventually periodic with period `a * 2^n`, and each
//! period equals or doubles the period of an earlier column. The word map
//! [`transform_t`] is the combinatorial step behind the doubling.
//!
//! Detection here is empirical: it reads finite words and reports the
//! smallest period that is consistent with enough repetitions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, UlamSet};
use crate::par::{self, Execution};

/// Default cap on detected periods.
pub const DEFAULT_MAX_PERIOD: usize = 64;
/// Default number of full periods required as evidence.
pub const DEFAULT_MIN_EVIDENCE: usize = 3;

/// The coordinate a column runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Sweep `x`, fix `y`.
    X,
    /// Sweep `y`, fix `x`.
    Y,
}

impl Axis {
    fn point(self, fixed: u64, swept: u64) -> [u64; 2] {
        match self {
            Axis::X => [swept, fixed],
            Axis::Y => [fixed, swept],
        }
    }

    fn swept_coord(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

/// Applies the word transform: `T(x)_0 = [x_0 = 1]` and
/// `T(x)_i = [x_i + T(x)_{i-1} = 1]`.
pub fn transform_t(x: &[u8]) -> Result<Vec<u8>> {
    if x.is_empty() {
        return Err(Error::InvalidArgument("word must be nonempty".into()));
    }
    let mut out = Vec::with_capacity(x.len());
    let mut prev = 0u8;
    for &s in x {
        if s > 2 {
            return Err(Error::BadAlphabet(s));
        }
        prev = u8::from(s + prev == 1);
        out.push(prev);
    }
    Ok(out)
}

/// Effect of [`transform_t`] on the period of an eventually periodic word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodEffect {
    Preserves,
    Doubles,
}

/// Given one period of the periodic part, decides whether `T` doubles the
/// period: it does iff the period holds an odd number of 1s and no 2.
pub fn classify_period_doubling(pattern: &[u8]) -> PeriodEffect {
    let ones = pattern.iter().filter(|&&s| s == 1).count();
    if ones % 2 == 1 && !pattern.contains(&2) {
        PeriodEffect::Doubles
    } else {
        PeriodEffect::Preserves
    }
}

/// Result of a successful period search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodFit {
    pub preperiod: usize,
    pub period: usize,
    pub pattern: Vec<u8>,
    /// Whole periods covered by the periodic suffix.
    pub evidence: usize,
}

impl PeriodFit {
    pub fn is_empty(&self) -> bool {
        self.pattern.iter().all(|&s| s == 0)
    }
}

/// Outcome of [`detect_eventual_period`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Detection {
    Periodic(PeriodFit),
    Inconclusive,
}

impl Detection {
    pub fn fit(&self) -> Option<&PeriodFit> {
        match self {
            Detection::Periodic(f) => Some(f),
            Detection::Inconclusive => None,
        }
    }
}

/// Smallest preperiod for which `w` is `p`-periodic.
fn preperiod_for(w: &[u8], p: usize) -> usize {
    let n = w.len();
    if p >= n {
        return 0;
    }
    let mut t = n - p;
    while t > 0 && w[t - 1] == w[t - 1 + p] {
        t -= 1;
    }
    t
}

/// Finds the smallest preperiod `t`, then the smallest period
/// `p <= max_period` for it, such that `w[j + p] == w[j]` for all `j >= t`
/// and the periodic suffix spans at least `min_evidence` periods.
pub fn detect_eventual_period(w: &[u8], max_period: usize, min_evidence: usize) -> Result<Detection> {
    if min_evidence < 3 {
        return Err(Error::InvalidArgument("min_evidence must be at least 3".into()));
    }
    Ok(detect(w, max_period, min_evidence))
}

fn detect(w: &[u8], max_period: usize, min_evidence: usize) -> Detection {
    let n = w.len();
    let mut best: Option<(usize, usize)> = None;
    for p in 1..=max_period.min(n / min_evidence) {
        let t = preperiod_for(w, p);
        if (n - t) / p >= min_evidence && best.is_none_or(|(bt, _)| t < bt) {
            best = Some((t, p));
        }
    }
    match best {
        Some((t, p)) => Detection::Periodic(PeriodFit {
            preperiod: t,
            period: p,
            pattern: w[t..t + p].to_vec(),
            evidence: (n - t) / p,
        }),
        None => Detection::Inconclusive,
    }
}

/// Membership word of one column: symbol `j` is 1 iff the point whose swept
/// coordinate is `lo + j * step` (fixed coordinate `index`) is a member.
pub fn column_word(set: &UlamSet, axis: Axis, index: u64, range: (u64, u64), step: u64) -> Result<Vec<u8>> {
    if set.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: set.dim() });
    }
    let (lo, hi) = range;
    if step == 0 || lo > hi {
        return Err(Error::InvalidArgument("need step >= 1 and lo <= hi".into()));
    }
    let top = LatticePoint::from(axis.point(index, hi));
    if !in_bound(set, &top)? {
        return Err(Error::RangeExceedsBound);
    }
    Ok((lo..=hi)
        .step_by(step as usize)
        .map(|s| u8::from(set.contains(&axis.point(index, s))))
        .collect())
}

fn in_bound(set: &UlamSet, p: &LatticePoint) -> Result<bool> {
    use crate::lattice::Bound;
    Ok(match set.bound() {
        Bound::Box(limits) => p.coords().iter().zip(limits).all(|(x, l)| x <= l),
        Bound::Level(limit) => {
            let v = set.sizefn().value(p.coords())?;
            v <= num_rational::Ratio::from_integer(*limit as u128)
        }
    })
}

/// Period report for one residue class of one column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnProfile {
    pub axis: Axis,
    pub index: u64,
    /// Swept coordinates `residue, residue + step, ...` form the word.
    pub residue: u64,
    pub step: u64,
    /// Period is counted in units of `step`.
    pub detection: Detection,
    /// Nearest earlier column (same residue) whose period equals this one
    /// or is half of it.
    pub doubling_source: Option<u64>,
}

impl ColumnProfile {
    pub fn period(&self) -> Option<usize> {
        self.detection.fit().map(|f| f.period)
    }

    /// True when the periodic part has no members.
    pub fn is_empty(&self) -> Option<bool> {
        self.detection.fit().map(PeriodFit::is_empty)
    }
}

/// A column profile outside the allowed eventual forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColumnViolation {
    /// The period in original units has an odd part not dividing the step.
    OddPeriod { index: u64, residue: u64, period: usize },
    /// No earlier column has the same or half the period.
    NoSource { index: u64, residue: u64, period: usize },
}

/// Settings for [`columns_report`].
#[derive(Debug, Clone, Copy)]
pub struct ColumnOptions {
    pub max_period: usize,
    pub min_evidence: usize,
    pub execution: Execution,
}

impl Default for ColumnOptions {
    fn default() -> Self {
        ColumnOptions {
            max_period: DEFAULT_MAX_PERIOD,
            min_evidence: DEFAULT_MIN_EVIDENCE,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnsReport {
    pub profiles: Vec<ColumnProfile>,
    pub violations: Vec<ColumnViolation>,
    /// Columns (index, residue) without a conclusive period.
    pub inconclusive: Vec<(u64, u64)>,
}

impl ColumnsReport {
    /// Indices with a nonempty periodic part in at least one residue class.
    pub fn nonempty_columns(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .profiles
            .iter()
            .filter(|p| p.is_empty() == Some(false))
            .map(|p| p.index)
            .collect();
        v.dedup();
        v
    }

    /// Distinct detected periods, ascending.
    pub fn periods(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.profiles.iter().filter_map(|p| p.period()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn odd_part(mut n: u64) -> u64 {
    while n > 0 && n % 2 == 0 {
        n /= 2;
    }
    n
}

/// Profiles every column of a box-bounded planar set.
///
/// The periodic suffix must span `min_evidence` periods plus one guard period
/// at the box edge; columns failing that are listed as inconclusive. Flags
/// are reported, never dropped.
pub fn columns_report(set: &UlamSet, axis: Axis, step: u64, opts: &ColumnOptions) -> Result<ColumnsReport> {
    let limits = match set.bound() {
        crate::lattice::Bound::Box(l) if l.len() == 2 => l.clone(),
        _ => return Err(Error::InvalidArgument("columns need a planar box bound".into())),
    };
    if step == 0 {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    if opts.min_evidence < 3 {
        return Err(Error::InvalidArgument("min_evidence must be at least 3".into()));
    }
    let swept = axis.swept_coord();
    let fixed_max = limits[1 - swept];
    let swept_max = limits[swept];
    let residues = step.min(swept_max + 1);

    let n_cols = fixed_max as usize + 1;
    let detected: Vec<Result<Vec<(u64, Detection)>>> = par::map_range(opts.execution, n_cols, |col| {
        (0..residues)
            .map(|r| {
                let w = column_word(set, axis, col as u64, (r, swept_max), step)?;
                Ok((r, detect(&w, opts.max_period, opts.min_evidence + 1)))
            })
            .collect()
    });

    let mut profiles = Vec::new();
    let mut violations = Vec::new();
    let mut inconclusive = Vec::new();
    // Last index seen per (residue, period).
    let mut last_with: std::collections::HashMap<(u64, usize), u64> = Default::default();
    for (col, res) in detected.into_iter().enumerate() {
        let col = col as u64;
        for (r, detection) in res? {
            let mut doubling_source = None;
            if let Some(fit) = detection.fit() {
                let p = fit.period;
                if step % odd_part(step * p as u64) != 0 {
                    violations.push(ColumnViolation::OddPeriod { index: col, residue: r, period: p });
                }
                let same = last_with.get(&(r, p)).copied();
                let half = if p % 2 == 0 { last_with.get(&(r, p / 2)).copied() } else { None };
                doubling_source = match (same, half) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, b) => a.or(b),
                };
                let is_base = col == 0 && p == 1;
                if doubling_source.is_none() && !is_base {
                    violations.push(ColumnViolation::NoSource { index: col, residue: r, period: p });
                }
                last_with.insert((r, p), col);
            } else {
                inconclusive.push((col, r));
            }
            profiles.push(ColumnProfile { axis, index: col, residue: r, step, detection, doubling_source });
        }
    }
    Ok(ColumnsReport { profiles, violations, inconclusive })
}
