use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::point::LatticePoint;
use crate::error::{Error, Result};

/// A validated set of initial vectors in the nonnegative orthant.
///
/// Vectors keep the order in which they were supplied; that order fixes the
/// coefficient indices used by the algebra module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialConfig {
    dim: usize,
    initials: Vec<LatticePoint>,
}

impl InitialConfig {
    pub fn new(dim: usize, initials: Vec<LatticePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if initials.is_empty() {
            return Err(Error::EmptyConfig);
        }
        let mut seen = HashSet::with_capacity(initials.len());
        for v in &initials {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
            if v.is_zero() {
                return Err(Error::ZeroVector(v.to_string()));
            }
            if !seen.insert(v) {
                return Err(Error::DuplicateVector(v.to_string()));
            }
        }
        Ok(InitialConfig { dim, initials })
    }

    /// Builds a config from unsigned rows; the dimension is taken from the
    /// first row.
    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map(|r| r.as_ref().len()).ok_or(Error::EmptyConfig)?;
        let initials = rows.iter().map(|r| LatticePoint::new(r.as_ref().to_vec())).collect();
        InitialConfig::new(dim, initials)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn initials(&self) -> &[LatticePoint] {
        &self.initials
    }

    pub fn len(&self) -> usize {
        self.initials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.initials.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.initials.contains(p)
    }

    /// The `dim` unit vectors `e_1, ..., e_dim`.
    pub fn unit_vectors(dim: usize) -> Result<Self> {
        let initials = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                LatticePoint::new(v)
            })
            .collect();
        InitialConfig::new(dim, initials)
    }

    /// Every initial vector multiplied by `c`.
    pub fn scaled(&self, c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let initials = self.initials.iter().map(|v| v.scaled(c)).collect::<Result<_>>()?;
        InitialConfig::new(self.dim, initials)
    }
}

/// Validates raw signed tuples into an [`InitialConfig`].
pub fn validate_config(raw: &[Vec<i64>], dim: usize) -> Result<InitialConfig> {
    if raw.is_empty() {
        return Err(Error::EmptyConfig);
    }
    let mut initials = Vec::with_capacity(raw.len());
    for row in raw {
        if row.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
        }
        if row.iter().any(|&c| c < 0) {
            return Err(Error::NegativeCoordinate(format_signed(row)));
        }
        initials.push(LatticePoint::new(row.iter().map(|&c| c as u64).collect()));
    }
    InitialConfig::new(dim, initials)
}

fn format_signed(row: &[i64]) -> String {
    let parts: Vec<String> = row.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}
