use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the nonnegative integer lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<u64>);

impl LatticePoint {
    pub fn new(coords: Vec<u64>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &LatticePoint) -> Result<LatticePoint> {
        add_coords(&self.0, &other.0).map(LatticePoint)
    }

    /// `self - other` if the result stays in the nonnegative orthant.
    pub fn checked_sub(&self, other: &LatticePoint) -> Option<LatticePoint> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(LatticePoint)
    }

    /// Multiplies every coordinate by `c`.
    pub fn scaled(&self, c: u64) -> Result<LatticePoint> {
        self.0
            .iter()
            .map(|&x| x.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }

    /// Reorders coordinates: output coordinate `i` is input coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LatticePoint {
        LatticePoint(perm.iter().map(|&i| self.0[i]).collect())
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

impl From<Vec<u64>> for LatticePoint {
    fn from(v: Vec<u64>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[u64; N]> for LatticePoint {
    fn from(v: [u64; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn add_coords(a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}
