//! Brute-force generator used as an oracle for [`super::generate`].
//!
//! Each round recomputes every pairwise sum of the current set from
//! scratch and admits the smallest candidates whose count is exactly one.
//! Nothing is carried between rounds except the member list.

use std::collections::{HashMap, HashSet};

use super::bound::{Bound, ResolvedBound};
use super::config::InitialConfig;
use super::point::LatticePoint;
use super::set::UlamSet;
use super::size::{LevelFn, SizeFunction};
use crate::error::{Error, Result};

/// Reference generation under the coordinate-sum size function.
pub fn generate_reference(config: &InitialConfig, bound: &Bound) -> Result<UlamSet> {
    let sizefn = SizeFunction::CoordinateSum;
    let dim = config.dim();
    let rb = ResolvedBound::new(bound, LevelFn::new(&sizefn, dim)?, dim)?;
    for v in config.initials() {
        if rb.level_if_inside(v.coords())?.is_none() {
            return Err(Error::BoundTooSmall(v.to_string()));
        }
    }

    let mut members: Vec<LatticePoint> = config.initials().to_vec();
    let mut member_set: HashSet<LatticePoint> = members.iter().cloned().collect();
    loop {
        let mut counts: HashMap<LatticePoint, u32> = HashMap::new();
        for (i, u) in members.iter().enumerate() {
            for v in &members[i + 1..] {
                let s = u.checked_add(v)?;
                if rb.level_if_inside(s.coords())?.is_some() {
                    *counts.entry(s).or_insert(0) += 1;
                }
            }
        }
        let mut best: Option<u64> = None;
        let mut batch: Vec<LatticePoint> = Vec::new();
        for (p, c) in counts {
            if c != 1 || member_set.contains(&p) {
                continue;
            }
            let lvl: u64 = p.coords().iter().sum();
            match best {
                Some(b) if lvl > b => {}
                Some(b) if lvl == b => batch.push(p),
                _ => {
                    best = Some(lvl);
                    batch = vec![p];
                }
            }
        }
        if batch.is_empty() {
            break;
        }
        for p in batch {
            member_set.insert(p.clone());
            members.push(p);
        }
    }
    UlamSet::from_points(config.clone(), sizefn, bound.clone(), members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_generators_match_closed_form_corner() {
        let cfg = InitialConfig::from_rows(&[[1u64, 0], [0, 1]]).unwrap();
        let set = generate_reference(&cfg, &Bound::Box(vec![4, 4])).unwrap();
        let mut got: Vec<String> = set.sorted_points().iter().map(|p| p.to_string()).collect();
        got.sort();
        let mut want = vec![
            "(0,1)", "(1,0)", "(1,1)", "(1,2)", "(1,3)", "(1,4)", "(2,1)", "(3,1)", "(3,3)", "(4,1)",
        ];
        want.sort();
        assert_eq!(got, want);
    }
}
