//! Saturating representation counters keyed by lattice point.

use std::sync::atomic::{AtomicU8, Ordering};

use dashmap::DashMap;

use crate::error::{Error, Result};

/// Largest number of cells backed by a dense counter array.
pub const DENSE_CELL_LIMIT: u128 = 100_000_000;

/// Counts saturate here: 0, 1 and "two or more" are all that matter.
const SATURATED: u8 = 2;

/// Which counter storage a generation run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Storage {
    /// Dense when the indexed region has at most [`DENSE_CELL_LIMIT`] cells.
    #[default]
    Auto,
    Dense,
    Sparse,
}

/// Maps in-bound points to dense array offsets.
#[derive(Debug, Clone)]
pub(crate) enum CellIndex {
    /// Mixed radix over per-coordinate caps.
    Boxed { radix: Vec<u64>, size: u128 },
    /// Combinatorial rank of `{x : sum(x) <= max_sum}`; this keeps level
    /// bounds under the coordinate sum from paying for the enclosing cube.
    Simplex { dim: usize, binom: Vec<Vec<u64>>, size: u128 },
}

impl CellIndex {
    pub(crate) fn boxed(caps: &[u64]) -> Result<Self> {
        let mut size: u128 = 1;
        let mut radix = Vec::with_capacity(caps.len());
        for &c in caps {
            let r = c.checked_add(1).ok_or(Error::Overflow)?;
            size = size.checked_mul(r as u128).ok_or(Error::Overflow)?;
            radix.push(r);
        }
        Ok(CellIndex::Boxed { radix, size })
    }

    pub(crate) fn simplex(dim: usize, max_sum: u64) -> Result<Self> {
        let size = binomial(max_sum as u128 + dim as u128, dim as u128).ok_or(Error::Overflow)?;
        if size > DENSE_CELL_LIMIT * 4 {
            return Err(Error::Overflow);
        }
        // binom[j][n] = C(n, j) for n <= max_sum + dim - 1.
        let top = max_sum as usize + dim;
        let mut binom = vec![vec![0u64; top]; dim + 1];
        for n in 0..top {
            binom[0][n] = 1;
            for j in 1..=dim {
                binom[j][n] = if n == 0 { 0 } else { binom[j - 1][n - 1] + binom[j][n - 1] };
            }
        }
        Ok(CellIndex::Simplex { dim, binom, size })
    }

    pub(crate) fn size(&self) -> u128 {
        match self {
            CellIndex::Boxed { size, .. } | CellIndex::Simplex { size, .. } => *size,
        }
    }

    #[inline]
    pub(crate) fn offset(&self, p: &[u64]) -> usize {
        match self {
            CellIndex::Boxed { radix, .. } => {
                let mut idx: u64 = 0;
                for (x, r) in p.iter().zip(radix) {
                    idx = idx * r + x;
                }
                idx as usize
            }
            CellIndex::Simplex { dim, binom, .. } => {
                // s_j = x_1 + ... + x_j + (j - 1) is strictly increasing; its
                // combinadic rank enumerates the simplex densely.
                let mut partial = 0u64;
                let mut rank = 0u64;
                for (j, &x) in p.iter().enumerate().take(*dim) {
                    partial += x;
                    rank += binom[j + 1][(partial + j as u64) as usize];
                }
                rank as usize
            }
        }
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Saturating counters shared by worker threads.
pub(crate) enum CountStore {
    Dense { index: CellIndex, cells: Vec<AtomicU8> },
    Sparse(DashMap<Box<[u64]>, u8>),
}

impl CountStore {
    pub(crate) fn new(storage: Storage, index: impl FnOnce() -> Result<CellIndex>) -> Result<Self> {
        let dense = match storage {
            Storage::Sparse => None,
            Storage::Dense => Some(index()?),
            Storage::Auto => match index() {
                Ok(ix) if ix.size() <= DENSE_CELL_LIMIT => Some(ix),
                _ => None,
            },
        };
        Ok(match dense {
            Some(index) => {
                let n = usize::try_from(index.size()).map_err(|_| Error::Overflow)?;
                let cells = std::iter::repeat_with(|| AtomicU8::new(0)).take(n).collect();
                CountStore::Dense { index, cells }
            }
            None => CountStore::Sparse(DashMap::new()),
        })
    }

    /// Adds one representation to `p`; returns true on the 0 -> 1 step.
    #[inline]
    pub(crate) fn bump(&self, p: &[u64]) -> bool {
        match self {
            CountStore::Dense { index, cells } => {
                let c = &cells[index.offset(p)];
                if c.load(Ordering::Relaxed) >= SATURATED {
                    return false;
                }
                matches!(
                    c.fetch_update(Ordering::Relaxed, Ordering::Relaxed, |v| (v < SATURATED).then_some(v + 1)),
                    Ok(0)
                )
            }
            CountStore::Sparse(map) => {
                let mut entry = map.entry(p.into()).or_insert(0);
                let v = entry.value_mut();
                let was_zero = *v == 0;
                if *v < SATURATED {
                    *v += 1;
                }
                was_zero
            }
        }
    }

    #[inline]
    pub(crate) fn get(&self, p: &[u64]) -> u8 {
        match self {
            CountStore::Dense { index, cells } => cells[index.offset(p)].load(Ordering::Relaxed),
            CountStore::Sparse(map) => map.get(p).map(|v| *v).unwrap_or(0),
        }
    }
}
