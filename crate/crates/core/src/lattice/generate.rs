use std::collections::{BTreeMap, HashSet};

use super::bound::{Bound, ResolvedBound};
use super::config::InitialConfig;
use super::point::LatticePoint;
use super::set::UlamSet;
use super::size::{LevelFn, SizeFunction};
use super::store::{CellIndex, CountStore, Storage};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Tuning knobs for [`generate_with`]. None of them change the result.
#[derive(Debug, Clone, Copy, Default)]
pub struct GenerateOptions {
    pub execution: Execution,
    pub storage: Storage,
}

/// Members per work unit when spreading pair updates over threads.
const PAIR_CHUNK: usize = 8192;

/// Generates the Ulam set of `config` truncated to `bound`.
pub fn generate(config: &InitialConfig, bound: &Bound, sizefn: &SizeFunction) -> Result<UlamSet> {
    generate_with(config, bound, sizefn, &GenerateOptions::default())
}

/// [`generate`] with explicit execution and storage choices.
///
/// Levels are processed in increasing order. A candidate is admitted when
/// its count over strictly smaller members is exactly one; every admitted
/// point of a level goes in as one batch, since no two points of the same
/// level can be summands of each other.
pub fn generate_with(
    config: &InitialConfig,
    bound: &Bound,
    sizefn: &SizeFunction,
    opts: &GenerateOptions,
) -> Result<UlamSet> {
    let dim = config.dim();
    let levels = LevelFn::new(sizefn, dim)?;
    let scale = levels.scale;
    let rb = ResolvedBound::new(bound, levels, dim)?;

    let mut pending: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut initials: HashSet<&[u64]> = HashSet::new();
    for v in config.initials() {
        let lvl = rb
            .level_if_inside(v.coords())?
            .ok_or_else(|| Error::BoundTooSmall(v.to_string()))?;
        pending.entry(lvl).or_default().extend_from_slice(v.coords());
        initials.insert(v.coords());
    }

    let store = CountStore::new(opts.storage, || {
        if rb.is_level_bound() && rb.levels.is_coordinate_sum() {
            CellIndex::simplex(dim, rb.max_level)
        } else {
            CellIndex::boxed(&rb.caps)
        }
    })?;

    // Finalized members, flattened with stride `dim`, in level order.
    let mut members: Vec<u64> = Vec::new();
    let mut member_levels: Vec<u64> = Vec::new();

    while let Some((lvl, flat)) = pending.pop_first() {
        let mut candidates: Vec<&[u64]> = flat.chunks_exact(dim).collect();
        candidates.sort_unstable();
        candidates.dedup();
        let admitted: Vec<Vec<u64>> = candidates
            .into_iter()
            .filter(|c| initials.contains(c) || store.get(c) == 1)
            .map(|c| c.to_vec())
            .collect();

        for w in admitted {
            // Every admissible size function satisfies
            // level(u + w) >= level(u) + level(w), so members above this
            // budget cannot produce in-bound sums.
            let budget = rb.max_level.saturating_sub(lvl);
            let usable = member_levels.partition_point(|&l| l <= budget);
            let fresh = par::try_collect_ranges(opts.execution, usable, PAIR_CHUNK, |range, out| {
                let mut sum = vec![0u64; dim];
                for i in range {
                    let u = &members[i * dim..(i + 1) * dim];
                    for ((s, a), b) in sum.iter_mut().zip(u).zip(&w) {
                        *s = a.checked_add(*b).ok_or(Error::Overflow)?;
                    }
                    if let Some(l) = rb.level_if_inside(&sum)? {
                        if store.bump(&sum) {
                            out.push(l);
                            out.extend_from_slice(&sum);
                        }
                    }
                }
                Ok::<(), Error>(())
            })?;
            for rec in fresh.chunks_exact(dim + 1) {
                pending.entry(rec[0]).or_default().extend_from_slice(&rec[1..]);
            }
            members.extend_from_slice(&w);
            member_levels.push(lvl);
        }
    }

    let points = members.chunks_exact(dim).map(|c| LatticePoint::new(c.to_vec())).collect();
    Ok(UlamSet::from_sorted(
        config.clone(),
        sizefn.clone(),
        bound.clone(),
        points,
        member_levels,
        scale,
    ))
}
