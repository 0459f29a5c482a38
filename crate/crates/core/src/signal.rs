//! Cosine sums over Ulam sequences.
//!
//! For the classical sequence, `S(α) = Σ cos(α a_n)` is close to `-0.79 N`
//! at `α ≈ 2.571447`, and `cos(α a_n)` is negative for all but four terms.
//!
//! Phases are reduced exactly: `α / 2π` is held as a 128-bit binary
//! fraction, so `α a_n mod 2π` keeps full double precision for any `a_n`
//! below `2^64`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::onedim::Sequence1D;
use crate::par::{self, Execution};

const PI_DIGITS: &str = "31415926535897932384626433832795028841971693993751";
const TAU: f64 = std::f64::consts::TAU;

/// Finest step reached by [`alpha_scan`] refinement.
pub const REFINED_STEP: f64 = 1e-9;
/// Coarse grid step used when none is given.
pub const DEFAULT_STEP: f64 = 1e-5;

/// Grid points evaluated per reseeded rotation block.
const BLOCK: usize = 64;
/// Coarse local minima carried into refinement.
const CANDIDATES: usize = 8;
/// Refinement window half-width, in units of the new step.
const HALF_WINDOW: i64 = 20;

/// A frequency `α`, stored as the 128-bit fraction `α / 2π mod 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Turns(u128);

impl Turns {
    fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidArgument(format!("frequency must be finite and nonnegative, got {alpha}")));
        }
        if alpha == 0.0 {
            return Ok(Turns(0));
        }
        let bits = alpha.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
        // α / 2π = mant 2^exp 10^49 / (2 PI_DIGITS), scaled by 2^128.
        let mut num = BigUint::from(mant) * BigUint::from(10u32).pow(49);
        let mut den = BigUint::parse_bytes(PI_DIGITS.as_bytes(), 10).unwrap() * 2u32;
        let shift = 128 + exp;
        if shift >= 0 {
            num <<= shift as usize;
        } else {
            den <<= (-shift) as usize;
        }
        let q = (num / den) & ((BigUint::from(1u8) << 128usize) - 1u8);
        Ok(Turns(q.to_u128().unwrap()))
    }

    /// `α a mod 2π`, in `[0, 2π)`.
    #[inline]
    fn angle(self, a: u64) -> f64 {
        let f = self.0.wrapping_mul(a as u128);
        (f >> 64) as u64 as f64 * (TAU / 18446744073709551616.0)
    }
}

/// `Σ cos(α a_n)` over all terms.
pub fn cosine_sum(seq: &Sequence1D, alpha: f64) -> Result<f64> {
    let t = Turns::new(alpha)?;
    Ok(seq.terms().iter().map(|&a| t.angle(a).cos()).sum())
}

/// Terms with `cos(α a_n) >= 0`.
pub fn sign_exception_set(seq: &Sequence1D, alpha: f64) -> Result<Vec<u64>> {
    let t = Turns::new(alpha)?;
    Ok(seq.terms().iter().copied().filter(|&a| t.angle(a).cos() >= 0.0).collect())
}

/// Normalized sums `S(α)/N` at `α = start + k step`, `k < count`.
///
/// Each block of grid points is seeded with exact phases and advanced by
/// complex rotation, which avoids a cosine call per term and grid point.
fn grid_sums(terms: &[u64], start: f64, step: f64, count: usize, exec: Execution) -> Result<Vec<f64>> {
    let n_blocks = count.div_ceil(BLOCK);
    let rot = Turns::new(step)?;
    let rotors: Vec<(f64, f64)> = terms.iter().map(|&a| rot.angle(a).sin_cos()).collect();
    let blocks: Vec<Result<Vec<f64>>> = par::map_range(exec, n_blocks, |b| {
        let k0 = b * BLOCK;
        let len = BLOCK.min(count - k0);
        let seed = Turns::new(start + k0 as f64 * step)?;
        let mut acc = vec![0.0f64; len];
        for (&a, &(ws, wc)) in terms.iter().zip(&rotors) {
            let (mut s, mut c) = seed.angle(a).sin_cos();
            for slot in acc.iter_mut() {
                *slot += c;
                (c, s) = (c * wc - s * ws, s * wc + c * ws);
            }
        }
        let n = terms.len() as f64;
        Ok(acc.into_iter().map(|v| v / n).collect())
    });
    let mut out = Vec::with_capacity(count);
    for b in blocks {
        out.extend(b?);
    }
    Ok(out)
}

/// Result of [`alpha_scan`].
#[derive(Debug, Clone, Serialize)]
pub struct SignalScan {
    /// `(lo, hi, step)` of the coarse grid.
    pub alpha_grid: (f64, f64, f64),
    /// `S(α)/N` over the full sequence at each coarse grid point.
    pub sums: Vec<f64>,
    pub best_alpha: f64,
    pub best_value: f64,
}

impl SignalScan {
    /// The coarse grid points, matching `sums`.
    pub fn alphas(&self) -> impl Iterator<Item = f64> + '_ {
        let (lo, hi, step) = self.alpha_grid;
        (0..self.sums.len()).map(move |k| (lo + k as f64 * step).min(hi))
    }
}

/// Terms resolvable at a grid step: peaks of `S` restricted to terms up to
/// `a` have width about `1/a`.
fn resolvable(terms: &[u64], step: f64) -> &[u64] {
    let cap = 0.5 / step;
    let n = terms.partition_point(|&a| (a as f64) <= cap);
    &terms[..n.max(terms.len().min(2))]
}

/// Indices of the lowest local minima of `v`.
fn lowest_minima(v: &[f64], keep: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len())
        .filter(|&k| (k == 0 || v[k] <= v[k - 1]) && (k + 1 == v.len() || v[k] <= v[k + 1]))
        .collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    idx.truncate(keep);
    idx
}

/// Scans `α` over `(0, π]` for the minimum of `S(α)/N`.
///
/// Integer terms make `S` even and `2π`-periodic, so `(0, π]` covers every
/// frequency. The full-length sums are recorded on the coarse grid, but
/// candidate minima are picked on the prefix of terms the grid can
/// resolve; each is then refined by tenfold grid shrinking down to
/// [`REFINED_STEP`], lengthening the prefix as the step allows.
pub fn alpha_scan(seq: &Sequence1D, step: f64) -> Result<SignalScan> {
    alpha_scan_with(seq, step, Execution::default())
}

pub fn alpha_scan_with(seq: &Sequence1D, step: f64, exec: Execution) -> Result<SignalScan> {
    if !(step > 0.0 && step <= 1e-4) {
        return Err(Error::InvalidArgument(format!("grid step must be in (0, 1e-4], got {step}")));
    }
    if seq.is_empty() {
        return Err(Error::TooShort { needed: 1, have: 0 });
    }
    let terms = seq.terms();
    let (lo, hi) = (step, std::f64::consts::PI);
    let count = ((hi - lo) / step).floor() as usize + 1;
    let mut sums = grid_sums(terms, lo, step, count, exec)?;
    let last = lo + (count - 1) as f64 * step;
    if hi - last > step * 1e-6 {
        sums.push(cosine_sum(seq, hi)? / terms.len() as f64);
    }
    let alpha_at = |k: usize| (lo + k as f64 * step).min(hi);

    let coarse = lowest_minima(&sums, 1)[0];
    let (mut best_alpha, mut best_value) = (alpha_at(coarse), sums[coarse]);

    let prefix = resolvable(terms, step);
    let prefix_sums = if prefix.len() == terms.len() {
        sums.clone()
    } else {
        grid_sums(prefix, lo, step, sums.len(), exec)?
    };
    let mut starts: Vec<f64> = lowest_minima(&prefix_sums, CANDIDATES).into_iter().map(alpha_at).collect();
    starts.push(best_alpha);

    for start in starts {
        let mut center = start;
        let mut s = step;
        while s > REFINED_STEP * 1.000001 {
            s /= 10.0;
            let part = resolvable(terms, s);
            let first = (center - HALF_WINDOW as f64 * s).max(s);
            let vals = grid_sums(part, first, s, 2 * HALF_WINDOW as usize + 1, exec)?;
            let k = lowest_minima(&vals, 1)[0];
            center = (first + k as f64 * s).min(hi);
        }
        let value = cosine_sum(seq, center)? / terms.len() as f64;
        if value < best_value {
            (best_alpha, best_value) = (center, value);
        }
    }

    Ok(SignalScan { alpha_grid: (lo, hi, step), sums, best_alpha, best_value })
}
