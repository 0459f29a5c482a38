use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An admissible size function on the nonnegative orthant.
///
/// All three kinds satisfy `f(u+v) > max(f(u), f(v))` for nonzero `u, v` and
/// have finite sublevel sets, so any of them yields the same Ulam set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SizeFunction {
    #[default]
    CoordinateSum,
    WeightedSum(Vec<Ratio<u64>>),
    EuclideanSquared,
}

impl SizeFunction {
    /// Checks the function against a dimension.
    pub fn validate(&self, dim: usize) -> Result<()> {
        if let SizeFunction::WeightedSum(w) = self {
            if w.len() != dim {
                return Err(Error::InvalidSizeFunction(format!(
                    "expected {dim} weights, got {}",
                    w.len()
                )));
            }
            if w.iter().any(|x| *x.numer() == 0 || *x.denom() == 0) {
                return Err(Error::InvalidSizeFunction("weights must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            SizeFunction::CoordinateSum => "coordinate-sum",
            SizeFunction::WeightedSum(_) => "weighted-sum",
            SizeFunction::EuclideanSquared => "euclidean-norm-squared",
        }
    }

    /// Exact value `f(p)`.
    pub fn value(&self, p: &[u64]) -> Result<Ratio<u128>> {
        let lf = LevelFn::new(self, p.len())?;
        Ok(Ratio::new(lf.level(p)? as u128, lf.scale as u128))
    }
}

/// Integer-valued form of a size function: `level(p) = scale * f(p)`.
#[derive(Debug, Clone)]
pub(crate) struct LevelFn {
    kind: LevelKind,
    pub(crate) scale: u64,
}

#[derive(Debug, Clone)]
enum LevelKind {
    Linear(Vec<u64>),
    EuclideanSquared,
}

impl LevelFn {
    pub(crate) fn new(sizefn: &SizeFunction, dim: usize) -> Result<Self> {
        sizefn.validate(dim)?;
        Ok(match sizefn {
            SizeFunction::CoordinateSum => LevelFn { kind: LevelKind::Linear(vec![1; dim]), scale: 1 },
            SizeFunction::WeightedSum(w) => {
                let scale = w.iter().fold(1u64, |acc, r| acc.lcm(r.denom()));
                let weights = w
                    .iter()
                    .map(|r| {
                        (scale / r.denom()).checked_mul(*r.numer()).ok_or(Error::Overflow)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let g = weights.iter().fold(0u64, |acc, &x| acc.gcd(&x));
                // Dividing out a common factor keeps the ordering and the
                // integer levels small.
                let g = g.gcd(&scale).max(1);
                LevelFn {
                    kind: LevelKind::Linear(weights.into_iter().map(|x| x / g).collect()),
                    scale: scale / g,
                }
            }
            SizeFunction::EuclideanSquared => LevelFn { kind: LevelKind::EuclideanSquared, scale: 1 },
        })
    }

    pub(crate) fn level(&self, p: &[u64]) -> Result<u64> {
        let mut acc: u64 = 0;
        match &self.kind {
            LevelKind::Linear(w) => {
                for (x, wi) in p.iter().zip(w) {
                    let t = x.checked_mul(*wi).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(t).ok_or(Error::Overflow)?;
                }
            }
            LevelKind::EuclideanSquared => {
                for x in p {
                    let t = x.checked_mul(*x).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(t).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(acc)
    }

    /// Converts an f-value limit `f(p) <= limit` into a level limit.
    pub(crate) fn scaled_limit(&self, limit: u64) -> Result<u64> {
        limit.checked_mul(self.scale).ok_or(Error::Overflow)
    }

    /// Largest coordinate `i` can take while the level stays `<= max_level`.
    pub(crate) fn coord_cap(&self, i: usize, max_level: u64) -> u64 {
        match &self.kind {
            LevelKind::Linear(w) => max_level / w[i],
            LevelKind::EuclideanSquared => max_level.isqrt(),
        }
    }

    /// True for the plain coordinate sum.
    pub(crate) fn is_coordinate_sum(&self) -> bool {
        matches!(&self.kind, LevelKind::Linear(w) if w.iter().all(|&x| x == 1))
    }
}
