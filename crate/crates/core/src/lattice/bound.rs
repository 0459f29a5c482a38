use serde::{Deserialize, Serialize};

use super::size::LevelFn;
use crate::error::{Error, Result};

/// Finite truncation of an Ulam set.
///
/// Both kinds are closed under taking summands: if `u + v` is inside, so are
/// `u` and `v`. That makes truncated generation exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Inclusive per-coordinate maxima.
    Box(Vec<u64>),
    /// Inclusive maximum of the size function.
    Level(u64),
}

impl Bound {
    pub fn validate(&self, dim: usize) -> Result<()> {
        match self {
            Bound::Box(limits) if limits.len() != dim => {
                Err(Error::DimensionMismatch { expected: dim, found: limits.len() })
            }
            _ => Ok(()),
        }
    }

    /// True if `self` contains every point of `other` (same dimension and
    /// size function assumed).
    pub fn covers(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::Box(a), Bound::Box(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x >= y),
            (Bound::Level(a), Bound::Level(b)) => a >= b,
            _ => false,
        }
    }
}

/// A bound resolved against a size function.
#[derive(Debug, Clone)]
pub(crate) struct ResolvedBound {
    pub(crate) levels: LevelFn,
    /// Per-coordinate maxima; for level bounds these enclose the sublevel set.
    pub(crate) caps: Vec<u64>,
    /// Largest level any in-bound point can have.
    pub(crate) max_level: u64,
    /// Set for level bounds.
    level_limit: Option<u64>,
}

impl ResolvedBound {
    pub(crate) fn new(bound: &Bound, levels: LevelFn, dim: usize) -> Result<Self> {
        bound.validate(dim)?;
        match bound {
            Bound::Box(limits) => {
                let max_level = levels.level(limits)?;
                Ok(ResolvedBound { levels, caps: limits.clone(), max_level, level_limit: None })
            }
            Bound::Level(limit) => {
                let max_level = levels.scaled_limit(*limit)?;
                let caps = (0..dim).map(|i| levels.coord_cap(i, max_level)).collect();
                Ok(ResolvedBound { levels, caps, max_level, level_limit: Some(max_level) })
            }
        }
    }

    /// Level of `p` if it lies inside the bound.
    #[inline]
    pub(crate) fn level_if_inside(&self, p: &[u64]) -> Result<Option<u64>> {
        if p.iter().zip(&self.caps).any(|(x, c)| x > c) {
            return Ok(None);
        }
        let lvl = self.levels.level(p)?;
        match self.level_limit {
            Some(limit) if lvl > limit => Ok(None),
            _ => Ok(Some(lvl)),
        }
    }

    pub(crate) fn is_level_bound(&self) -> bool {
        self.level_limit.is_some()
    }
}
