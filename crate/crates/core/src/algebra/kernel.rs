use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::symbolic::{check_config, SymbolTable, SymbolicVector};
use crate::error::{Error, Result};
use crate::lattice::InitialConfig;

/// Integer relations `a` with `Σ a_i v_i = 0`, as a basis in Hermite
/// normal form. Equal lattices have identical bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CharacteristicLattice {
    k: usize,
    #[serde(serialize_with = "ser_rows")]
    basis: Vec<Vec<BigInt>>,
}

fn ser_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        let strs: Vec<String> = r.iter().map(ToString::to_string).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}

impl CharacteristicLattice {
    /// Builds the lattice spanned by `rows`, each of length `k`.
    pub fn from_generators(k: usize, rows: Vec<Vec<BigInt>>) -> Self {
        CharacteristicLattice { k, basis: hermite_normal_form(rows) }
    }

    /// Number of initial vectors.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership of an integer vector in the lattice.
    pub fn contains(&self, a: &[BigInt]) -> bool {
        if a.len() != self.k {
            return false;
        }
        let mut r = a.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            let (q, rem) = r[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        r.iter().all(Zero::is_zero)
    }
}

/// Row-style Hermite normal form: zero rows dropped, pivots positive and
/// strictly moving right, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let r = echelon_prefix(&mut rows, ncols);
    rows.truncate(r);
    for i in 0..r {
        let p = rows[i].iter().position(|x| !x.is_zero()).unwrap();
        if rows[i][p].is_negative() {
            for x in rows[i].iter_mut() {
                *x = -&*x;
            }
        }
        let (head, tail) = rows.split_at_mut(i);
        for row in head {
            let q = row[p].div_floor(&tail[0][p]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&tail[0]) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows
}

/// Basis of `{a ∈ Z^k : a M = 0}` for an integer matrix with `k` rows.
pub(crate) fn integer_left_kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = m.len();
    // Augment with the identity and reduce the left block; the right block
    // stays unimodular, so its rows beside zero rows span the kernel.
    let cols = m.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigInt>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let reduced = echelon_prefix(&mut rows, cols);
    rows.drain(..reduced);
    rows.into_iter().map(|r| r[cols..].to_vec()).collect()
}

/// Integer echelon form on the first `cols` columns; returns the number of
/// nonzero rows in that block (they come first).
fn echelon_prefix(rows: &mut [Vec<BigInt>], cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        loop {
            let Some(pick) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
            else {
                break;
            };
            rows.swap(r, pick);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                done &= rows[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            r += 1;
        }
    }
    r
}

/// Clears denominators column by column; the left kernel is unchanged.
pub(crate) fn integer_columns(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<BigInt>> = vec![Vec::with_capacity(cols); m.len()];
    for c in 0..cols {
        let l = m.iter().fold(BigInt::one(), |acc, r| acc.lcm(r[c].denom()));
        for (o, r) in out.iter_mut().zip(m) {
            o.push((&r[c] * BigRational::from_integer(l.clone())).to_integer());
        }
    }
    out
}

/// The characteristic lattice of a symbolic config.
pub fn characteristic_lattice(config: &[SymbolicVector], symbols: &SymbolTable) -> Result<CharacteristicLattice> {
    check_config(config, symbols)?;
    Ok(lattice_unchecked(config))
}

pub(crate) fn lattice_unchecked(config: &[SymbolicVector]) -> CharacteristicLattice {
    let width = config.iter().map(SymbolicVector::width).max().unwrap_or(1);
    let m: Vec<Vec<BigRational>> = config.iter().map(|v| v.flatten(width)).collect();
    CharacteristicLattice::from_generators(config.len(), integer_left_kernel(&integer_columns(&m)))
}

/// The characteristic lattice of an integer config.
pub fn config_lattice(config: &InitialConfig) -> CharacteristicLattice {
    lattice_unchecked(&super::symbolic::symbolic_config(config))
}

/// True iff both configs have the same characteristic lattice.
pub fn structurally_equivalent(
    a: &[SymbolicVector],
    b: &[SymbolicVector],
    symbols: &SymbolTable,
) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::MismatchedArity { left: a.len(), right: b.len() });
    }
    Ok(characteristic_lattice(a, symbols)? == characteristic_lattice(b, symbols)?)
}

/// True iff the only integer relation among the vectors is the trivial one.
pub fn is_generic(config: &[SymbolicVector], symbols: &SymbolTable) -> Result<bool> {
    Ok(characteristic_lattice(config, symbols)?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn cfg(rows: &[&[i64]]) -> Vec<SymbolicVector> {
        rows.iter().map(|r| SymbolicVector::from_integers(r)).collect()
    }

    /// All integer relations with entries in [-b, b], by enumeration.
    fn brute_relations(m: &[Vec<BigInt>], b: i64) -> Vec<Vec<BigInt>> {
        let k = m.len();
        let cols = m[0].len();
        let mut out = Vec::new();
        let mut a = vec![-b; k];
        loop {
            if (0..cols).all(|c| (0..k).map(|i| &m[i][c] * a[i]).sum::<BigInt>().is_zero()) {
                out.push(a.iter().map(|&x| BigInt::from(x)).collect());
            }
            let mut i = 0;
            while i < k && a[i] == b {
                a[i] = -b;
                i += 1;
            }
            if i == k {
                break;
            }
            a[i] += 1;
        }
        out
    }

    #[test]
    fn kernel_examples() {
        let t = SymbolTable::new();
        let l = characteristic_lattice(&cfg(&[&[1, 0], &[0, 1], &[1, 1]]), &t).unwrap();
        assert_eq!(l.basis(), ints(&[&[1, 1, -1]]).as_slice());
        assert!(characteristic_lattice(&cfg(&[&[1, 0], &[0, 1]]), &t).unwrap().is_trivial());
        let l = characteristic_lattice(&cfg(&[&[1, 0], &[2, 0], &[0, 1]]), &t).unwrap();
        assert!(l.contains(&ints(&[&[2, -1, 0]])[0]));
        assert!(!is_generic(&cfg(&[&[1, 0], &[2, 0], &[0, 1]]), &t).unwrap());
    }

    #[test]
    fn kernel_matches_enumeration() {
        let mats = [
            ints(&[&[2], &[3], &[5]]),
            ints(&[&[1, 0], &[2, 0], &[0, 1], &[3, 1]]),
            ints(&[&[6, 4], &[3, 2], &[9, 6]]),
            ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
        ];
        for m in mats {
            let basis = hermite_normal_form(integer_left_kernel(&m));
            let lat = CharacteristicLattice { k: m.len(), basis: basis.clone() };
            let found = brute_relations(&m, 3);
            assert!(found.iter().all(|a| lat.contains(a)));
            // The basis vectors themselves are relations.
            for row in &basis {
                for c in 0..m[0].len() {
                    assert!((0..m.len()).map(|i| &m[i][c] * &row[i]).sum::<BigInt>().is_zero());
                }
            }
            // Rank equals k minus the matrix rank (checked on small vectors).
            let small: Vec<_> = found.iter().filter(|a| a.iter().any(|x| !x.is_zero())).collect();
            assert_eq!(small.is_empty(), basis.is_empty());
        }
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hermite_normal_form(ints(&[&[2, 4, 6], &[1, 1, 1]]));
        let b = hermite_normal_form(ints(&[&[1, 1, 1], &[2, 4, 6], &[3, 5, 7]]));
        let c = hermite_normal_form(ints(&[&[3, 5, 7], &[-1, -1, -1]]));
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, ints(&[&[1, 1, 1], &[0, 2, 4]]));
    }

    #[test]
    fn equivalence_examples() {
        let t = SymbolTable::new();
        let a = cfg(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(structurally_equivalent(&a, &cfg(&[&[2, 0], &[0, 2], &[2, 2]]), &t).unwrap());
        assert!(!structurally_equivalent(&a, &cfg(&[&[1, 0], &[0, 1], &[1, 2]]), &t).unwrap());
        assert!(matches!(
            structurally_equivalent(&a, &cfg(&[&[1, 0], &[0, 1]]), &t),
            Err(Error::MismatchedArity { left: 3, right: 2 })
        ));
    }
}
