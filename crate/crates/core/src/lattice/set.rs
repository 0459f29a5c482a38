use std::borrow::Borrow;
use std::collections::{HashMap, HashSet};

use super::bound::{Bound, ResolvedBound};
use super::config::InitialConfig;
use super::point::{add_coords, LatticePoint};
use super::size::{LevelFn, SizeFunction};
use crate::error::Result;

impl Borrow<[u64]> for LatticePoint {
    fn borrow(&self) -> &[u64] {
        self.coords()
    }
}

/// A finite truncation of an Ulam set.
///
/// Points are sorted by size-function level, then lexicographically. For
/// weighted sums the stored levels are `f(p) * level_scale()` so that they
/// stay integral.
#[derive(Debug, Clone)]
pub struct UlamSet {
    config: InitialConfig,
    sizefn: SizeFunction,
    bound: Bound,
    points: Vec<LatticePoint>,
    levels: Vec<u64>,
    level_scale: u64,
    members: HashSet<LatticePoint>,
}

impl UlamSet {
    pub(crate) fn from_sorted(
        config: InitialConfig,
        sizefn: SizeFunction,
        bound: Bound,
        points: Vec<LatticePoint>,
        levels: Vec<u64>,
        level_scale: u64,
    ) -> Self {
        let members = points.iter().cloned().collect();
        UlamSet { config, sizefn, bound, points, levels, level_scale, members }
    }

    /// Builds a set from arbitrary points without checking the Ulam
    /// property. Used for re-imported data and for fault injection.
    pub fn from_points(
        config: InitialConfig,
        sizefn: SizeFunction,
        bound: Bound,
        points: impl IntoIterator<Item = LatticePoint>,
    ) -> Result<Self> {
        let lf = LevelFn::new(&sizefn, config.dim())?;
        let mut keyed = points
            .into_iter()
            .collect::<HashSet<_>>()
            .into_iter()
            .map(|p| lf.level(p.coords()).map(|l| (l, p)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort();
        let (levels, points) = keyed.into_iter().unzip();
        Ok(UlamSet::from_sorted(config, sizefn, bound, points, levels, lf.scale))
    }

    pub fn config(&self) -> &InitialConfig {
        &self.config
    }

    pub fn sizefn(&self) -> &SizeFunction {
        &self.sizefn
    }

    pub fn bound(&self) -> &Bound {
        &self.bound
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn level_scale(&self) -> u64 {
        self.level_scale
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[u64]) -> bool {
        self.members.contains(p)
    }

    pub fn members(&self) -> &HashSet<LatticePoint> {
        &self.members
    }

    /// The member set as a sorted vector, handy for set comparisons.
    pub fn sorted_points(&self) -> Vec<LatticePoint> {
        let mut v = self.points.clone();
        v.sort();
        v
    }

    /// Copy with `p` added (no validity check).
    pub fn with_point(&self, p: LatticePoint) -> Result<UlamSet> {
        let pts = self.points.iter().cloned().chain(std::iter::once(p));
        UlamSet::from_points(self.config.clone(), self.sizefn.clone(), self.bound.clone(), pts)
    }

    /// Copy with `p` removed (no validity check).
    pub fn without_point(&self, p: &LatticePoint) -> Result<UlamSet> {
        let pts = self.points.iter().filter(|q| *q != p).cloned();
        UlamSet::from_points(self.config.clone(), self.sizefn.clone(), self.bound.clone(), pts)
    }

    pub fn representation_count(&self, p: &LatticePoint) -> u64 {
        representation_count(p, &self.members)
    }

    /// Every point inside the bound, zero excluded, in lexicographic order.
    pub fn bound_points(&self) -> Result<Vec<LatticePoint>> {
        enumerate_bound(&self.bound, &self.sizefn, self.dim())
    }

    /// Exhaustive check of the defining property over the whole bound.
    pub fn uniqueness_violations(&self) -> Result<Vec<Violation>> {
        let lf = LevelFn::new(&self.sizefn, self.dim())?;
        let rb = ResolvedBound::new(&self.bound, lf, self.dim())?;
        let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
        for (i, u) in self.points.iter().enumerate() {
            for v in &self.points[i + 1..] {
                let s = add_coords(u.coords(), v.coords())?;
                if rb.level_if_inside(&s)?.is_some() {
                    *counts.entry(s).or_insert(0) += 1;
                }
            }
        }
        let mut out = Vec::new();
        for p in &self.points {
            if rb.level_if_inside(p.coords())?.is_none() {
                out.push(Violation::OutOfBound(p.clone()));
            }
        }
        for p in self.config.initials() {
            if !self.contains(p.coords()) {
                out.push(Violation::MissingInitial(p.clone()));
            }
        }
        for p in self.bound_points()? {
            if self.config.contains(&p) {
                continue;
            }
            let c = counts.get(p.coords()).copied().unwrap_or(0);
            let member = self.contains(p.coords());
            if member && c != 1 {
                out.push(Violation::MemberNotUnique { point: p, count: c });
            } else if !member && c == 1 {
                out.push(Violation::UniqueNonMember(p));
            }
        }
        Ok(out)
    }
}

/// A breach of the Ulam-set invariants found by
/// [`UlamSet::uniqueness_violations`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingInitial(LatticePoint),
    OutOfBound(LatticePoint),
    MemberNotUnique { point: LatticePoint, count: u64 },
    UniqueNonMember(LatticePoint),
}

/// Number of unordered pairs `{u, v}` of distinct members with `u + v = p`.
pub fn representation_count<S>(p: &LatticePoint, members: &HashSet<LatticePoint, S>) -> u64
where
    S: std::hash::BuildHasher,
{
    let mut count = 0;
    for u in members {
        if let Some(v) = p.checked_sub(u) {
            if u < &v && members.contains(&v) {
                count += 1;
            }
        }
    }
    count
}

/// Lists every nonzero point inside `bound`.
pub fn enumerate_bound(bound: &Bound, sizefn: &SizeFunction, dim: usize) -> Result<Vec<LatticePoint>> {
    let lf = LevelFn::new(sizefn, dim)?;
    let rb = ResolvedBound::new(bound, lf, dim)?;
    let mut out = Vec::new();
    let mut cur = vec![0u64; dim];
    loop {
        if cur.iter().any(|&c| c != 0) && rb.level_if_inside(&cur)?.is_some() {
            out.push(LatticePoint::new(cur.clone()));
        }
        // Odometer over the enclosing caps, last coordinate fastest.
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < rb.caps[i] {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}
