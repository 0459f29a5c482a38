//! One-dimensional Ulam sequences with integer initial terms.

use serde::Serialize;

use crate::error::{Error, Result};

/// The first terms of an Ulam sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sequence1D {
    initials: Vec<u64>,
    terms: Vec<u64>,
}

impl Sequence1D {
    /// Wraps an arbitrary strictly increasing sequence of positive integers.
    /// No Ulam property is checked.
    pub fn from_terms(terms: Vec<u64>) -> Result<Self> {
        if terms.first() == Some(&0) || terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("terms must be positive and strictly increasing".into()));
        }
        Ok(Sequence1D { initials: Vec::new(), terms })
    }

    /// Sorted initial terms.
    pub fn initials(&self) -> &[u64] {
        &self.initials
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The term `a_n`, counting from `n = 1`.
    pub fn term(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.terms.get(i)).copied()
    }

    /// The gap `a_{n+1} - a_n`, counting from `n = 1`.
    pub fn gap(&self, n: usize) -> Option<u64> {
        Some(self.term(n + 1)? - self.term(n)?)
    }
}

/// Computes the first `n_terms` terms of the Ulam sequence started from
/// `initials`.
///
/// Values are visited in increasing order. A value is a term if it is an
/// initial or is the sum of two distinct earlier terms in exactly one way;
/// every sum of earlier terms is already counted by the time it is reached.
pub fn ulam_sequence(initials: &[u64], n_terms: usize) -> Result<Sequence1D> {
    let mut init = initials.to_vec();
    init.sort_unstable();
    if init.len() < 2 {
        return Err(Error::InvalidInitials("need at least two initial terms".into()));
    }
    if init[0] == 0 {
        return Err(Error::InvalidInitials("initial terms must be positive".into()));
    }
    if init.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInitials("initial terms must be distinct".into()));
    }
    if n_terms < init.len() {
        return Err(Error::InvalidInitials(format!(
            "n_terms = {n_terms} is smaller than the number of initial terms"
        )));
    }

    let top = *init.last().unwrap();
    // Saturating representation counts, indexed by value.
    let mut counts: Vec<u8> = vec![0; 2 * top as usize + 2];
    let mut terms: Vec<u64> = Vec::with_capacity(n_terms);
    let mut v = init[0];
    while terms.len() < n_terms {
        if v as usize >= counts.len() {
            counts.resize(2 * v as usize + 2, 0);
        }
        let is_term = init.binary_search(&v).is_ok() || counts[v as usize] == 1;
        if is_term {
            let needed = 2 * v as usize + 1;
            if needed > counts.len() {
                counts.resize(needed.max(2 * counts.len()), 0);
            }
            for &s in &terms {
                let c = &mut counts[(s + v) as usize];
                *c = (*c + 1).min(2);
            }
            terms.push(v);
        }
        v = v.checked_add(1).ok_or(Error::Overflow)?;
    }
    Ok(Sequence1D { initials: init, terms })
}

/// Differences of consecutive terms: `gaps[i] = terms[i + 1] - terms[i]`.
pub fn consecutive_gaps(seq: &Sequence1D) -> Result<Vec<u64>> {
    if seq.len() < 2 {
        return Err(Error::TooShort { needed: 2, have: seq.len() });
    }
    Ok(seq.terms.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Checks `a_n <= F_{n+1}` for every computed term, with `F_1 = F_2 = 1`.
pub fn fibonacci_bound_check(seq: &Sequence1D) -> bool {
    // (F_{n+1}, F_{n+2}) starting at n = 1.
    let (mut f, mut g) = (1u64, 2u64);
    for &a in &seq.terms {
        if a > f {
            return false;
        }
        (f, g) = (g, f.saturating_add(g));
    }
    true
}
