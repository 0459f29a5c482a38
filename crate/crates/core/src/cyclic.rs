//! Ulam sets in `Z≥0 × Z_n`.
//!
//! Points are pairs `(x, r)` with `x >= 1` and `r` a residue mod `n`;
//! addition wraps the residue. Only `x` carries size, so every sum lies
//! strictly above both summands and the set can be grown one `x` at a time.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicPoint {
    pub x: u64,
    pub r: u64,
}

impl CyclicPoint {
    pub fn new(x: u64, r: u64) -> Self {
        CyclicPoint { x, r }
    }
}

impl std::fmt::Display for CyclicPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.r)
    }
}

/// Size function on `Z≥0 × Z_n`. Both give the same set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CyclicSize {
    /// `f(x, r) = x`; all residues at one `x` tie.
    #[default]
    X,
    /// `f(x, r) = n x + r`; no ties.
    Linear,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclicUlamSet {
    modulus: u64,
    initials: Vec<CyclicPoint>,
    /// Members in generation order.
    points: Vec<CyclicPoint>,
    x_bound: u64,
    finite_certificate: bool,
}

impl CyclicUlamSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn initials(&self) -> &[CyclicPoint] {
        &self.initials
    }

    pub fn points(&self) -> &[CyclicPoint] {
        &self.points
    }

    pub fn x_bound(&self) -> u64 {
        self.x_bound
    }

    /// True only when [`finiteness_certificate`] proved the set complete.
    pub fn finite_certificate(&self) -> bool {
        self.finite_certificate
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: CyclicPoint) -> bool {
        self.points.contains(&p)
    }

    /// Members sorted by `(x, r)`.
    pub fn sorted_points(&self) -> Vec<CyclicPoint> {
        let mut v = self.points.clone();
        v.sort_unstable();
        v
    }

    /// Largest `x` among members.
    pub fn x_max(&self) -> u64 {
        self.points.iter().map(|p| p.x).max().unwrap_or(0)
    }

    /// Residues that never occur among members.
    pub fn missing_residues(&self) -> Vec<u64> {
        let seen: HashSet<u64> = self.points.iter().map(|p| p.r).collect();
        (0..self.modulus).filter(|r| !seen.contains(r)).collect()
    }
}

fn validate(initials: &[CyclicPoint], modulus: u64, x_bound: u64) -> Result<Vec<CyclicPoint>> {
    if modulus == 0 {
        return Err(Error::BadParameters("modulus must be positive".into()));
    }
    if initials.is_empty() {
        return Err(Error::EmptyConfig);
    }
    let mut seen = HashSet::new();
    for p in initials {
        if p.x == 0 {
            return Err(Error::ZeroVector(format!("{p}: initial points need x >= 1")));
        }
        if p.r >= modulus {
            return Err(Error::BadParameters(format!("{p}: residue out of range mod {modulus}")));
        }
        if p.x > x_bound {
            return Err(Error::BoundTooSmall(p.to_string()));
        }
        if !seen.insert(*p) {
            return Err(Error::DuplicateVector(p.to_string()));
        }
    }
    Ok(initials.to_vec())
}

/// Generates the set up to `x <= x_bound` with `f(x, r) = x`.
pub fn generate_cyclic(initials: &[CyclicPoint], modulus: u64, x_bound: u64) -> Result<CyclicUlamSet> {
    generate_cyclic_with(initials, modulus, x_bound, CyclicSize::X)
}

pub fn generate_cyclic_with(
    initials: &[CyclicPoint],
    modulus: u64,
    x_bound: u64,
    size: CyclicSize,
) -> Result<CyclicUlamSet> {
    let initials = validate(initials, modulus, x_bound)?;
    let n = modulus as usize;
    let cells = (x_bound as usize)
        .checked_add(1)
        .and_then(|v| v.checked_mul(n))
        .filter(|&c| c as u128 <= crate::lattice::DENSE_CELL_LIMIT)
        .ok_or(Error::RegionExceedsBound)?;
    let idx = |x: u64, r: u64| x as usize * n + r as usize;
    let mut counts = vec![0u8; cells];
    let mut is_initial = vec![false; cells];
    for p in &initials {
        is_initial[idx(p.x, p.r)] = true;
    }

    let mut points: Vec<CyclicPoint> = Vec::new();
    let min_x = initials.iter().map(|p| p.x).min().unwrap();
    for x in min_x..=x_bound {
        // Counts at this x only depend on members with smaller x, so the
        // batch and one-at-a-time orders admit the same points.
        let batch: Vec<CyclicPoint> = (0..modulus)
            .filter(|&r| is_initial[idx(x, r)] || counts[idx(x, r)] == 1)
            .map(|r| CyclicPoint::new(x, r))
            .collect();
        let admit = |w: CyclicPoint, points: &mut Vec<CyclicPoint>, counts: &mut Vec<u8>| {
            for u in points.iter() {
                let sx = u.x + w.x;
                if sx > x_bound {
                    continue;
                }
                let c = &mut counts[idx(sx, (u.r + w.r) % modulus)];
                *c = (*c + 1).min(2);
            }
            points.push(w);
        };
        match size {
            CyclicSize::X => {
                for w in batch {
                    admit(w, &mut points, &mut counts);
                }
            }
            CyclicSize::Linear => {
                for r in 0..modulus {
                    if is_initial[idx(x, r)] || counts[idx(x, r)] == 1 {
                        admit(CyclicPoint::new(x, r), &mut points, &mut counts);
                    }
                }
            }
        }
    }

    let mut set = CyclicUlamSet { modulus, initials, points, x_bound, finite_certificate: false };
    set.finite_certificate = finiteness_certificate(&set).unwrap_or(false);
    Ok(set)
}

/// Proves that the set is complete, hence finite.
///
/// Requires `2 X_max <= x_bound`. Recounts every pairwise sum of distinct
/// members from scratch and returns true iff no sum outside the set has
/// exactly one representation: then nothing can ever be added, because
/// every future element would have to be such a sum.
pub fn finiteness_certificate(set: &CyclicUlamSet) -> Result<bool> {
    let x_max = set.x_max();
    if set.x_bound < 2 * x_max {
        return Err(Error::InconclusiveBound { x_bound: set.x_bound, x_max });
    }
    let members: HashSet<CyclicPoint> = set.points.iter().copied().collect();
    let mut counts: HashMap<CyclicPoint, u32> = HashMap::new();
    for (i, u) in set.points.iter().enumerate() {
        for v in &set.points[i + 1..] {
            let s = CyclicPoint::new(u.x + v.x, (u.r + v.r) % set.modulus);
            *counts.entry(s).or_insert(0) += 1;
        }
    }
    Ok(counts.into_iter().all(|(p, c)| c != 1 || members.contains(&p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(u64, u64)]) -> Vec<CyclicPoint> {
        v.iter().map(|&(x, r)| CyclicPoint::new(x, r)).collect()
    }

    /// Rebuilds the set round by round from all pairwise sums.
    fn brute(initials: &[CyclicPoint], n: u64, x_bound: u64) -> Vec<CyclicPoint> {
        let mut members: Vec<CyclicPoint> = initials.to_vec();
        loop {
            let mut counts: HashMap<CyclicPoint, u32> = HashMap::new();
            for (i, u) in members.iter().enumerate() {
                for v in &members[i + 1..] {
                    let s = CyclicPoint::new(u.x + v.x, (u.r + v.r) % n);
                    if s.x <= x_bound {
                        *counts.entry(s).or_insert(0) += 1;
                    }
                }
            }
            let fresh: Vec<CyclicPoint> = counts
                .into_iter()
                .filter(|(p, c)| *c == 1 && !members.contains(p))
                .map(|(p, _)| p)
                .collect();
            let Some(low) = fresh.iter().map(|p| p.x).min() else { break };
            members.extend(fresh.into_iter().filter(|p| p.x == low));
        }
        members.sort_unstable();
        members
    }

    #[test]
    fn matches_brute_force() {
        let cases: Vec<(Vec<CyclicPoint>, u64)> = vec![
            (pts(&[(1, 3), (3, 4)]), 6),
            (pts(&[(1, 0), (1, 1)]), 11),
            (pts(&[(1, 0), (2, 1), (3, 3)]), 4),
            (pts(&[(2, 0), (3, 1)]), 7),
        ];
        for (init, n) in cases {
            let set = generate_cyclic(&init, n, 40).unwrap();
            assert_eq!(set.sorted_points(), brute(&init, n, 40), "{init:?} mod {n}");
        }
    }

    #[test]
    fn size_functions_agree() {
        for (init, n) in [(pts(&[(1, 3), (3, 4)]), 6), (pts(&[(1, 0), (1, 1)]), 11), (pts(&[(1, 2), (2, 0)]), 5)] {
            let a = generate_cyclic_with(&init, n, 60, CyclicSize::X).unwrap();
            let b = generate_cyclic_with(&init, n, 60, CyclicSize::Linear).unwrap();
            assert_eq!(a.sorted_points(), b.sorted_points());
        }
    }

    #[test]
    fn all_residues_at_one_is_finite() {
        let init: Vec<CyclicPoint> = (0..5).map(|r| CyclicPoint::new(1, r)).collect();
        let set = generate_cyclic(&init, 5, 10).unwrap();
        assert_eq!(set.len(), 5);
        assert!(set.finite_certificate());
    }

    #[test]
    fn larger_finite_example() {
        let init = pts(&[(1, 0), (1, 1), (1, 2), (1, 3), (2, 3)]);
        let set = generate_cyclic(&init, 5, 40).unwrap();
        assert_eq!(set.sorted_points(), brute(&init, 5, 40));
        assert!(finiteness_certificate(&set).unwrap());
        let again = generate_cyclic(&init, 5, 80).unwrap();
        assert_eq!(again.sorted_points(), set.sorted_points());
    }

    #[test]
    fn single_initial_stays_single() {
        let set = generate_cyclic(&pts(&[(1, 0)]), 2, 4).unwrap();
        assert_eq!(set.sorted_points(), pts(&[(1, 0)]));
        assert!(set.finite_certificate());
    }

    #[test]
    fn growing_set_is_not_certified() {
        let set = generate_cyclic(&pts(&[(1, 3), (3, 4)]), 6, 100).unwrap();
        assert!(!set.finite_certificate());
        assert!(matches!(finiteness_certificate(&set), Err(Error::InconclusiveBound { .. })));
    }

    #[test]
    fn powers_of_two_mod_three() {
        let set = generate_cyclic(&pts(&[(1, 0), (1, 1), (1, 2)]), 3, 64).unwrap();
        let xs: HashSet<u64> = set.points().iter().map(|p| p.x).collect();
        assert_eq!(xs, [1, 2, 4, 8, 16, 32, 64].into_iter().collect());
        assert_eq!(set.len(), 21);
        assert!(!set.finite_certificate());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(generate_cyclic(&pts(&[(0, 1)]), 3, 5), Err(Error::ZeroVector(_))));
        assert!(matches!(generate_cyclic(&pts(&[(1, 3)]), 3, 5), Err(Error::BadParameters(_))));
        assert!(matches!(generate_cyclic(&pts(&[(1, 1), (1, 1)]), 3, 5), Err(Error::DuplicateVector(_))));
        assert!(matches!(generate_cyclic(&pts(&[(9, 1)]), 3, 5), Err(Error::BoundTooSmall(_))));
        assert!(matches!(generate_cyclic(&[], 3, 5), Err(Error::EmptyConfig)));
    }
}
