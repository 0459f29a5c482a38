use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{InitialConfig, LatticePoint};

/// Irrational constants used as opaque symbols.
///
/// The symbols, together with 1, are declared linearly independent over the
/// rationals. Each carries a numeric value, used only to decide signs and
/// to pick rational approximations; exact results never depend on it.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SymbolTable {
    names: Vec<String>,
    values: Vec<f64>,
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable::default()
    }

    /// Declares a symbol and returns its index (1-based; 0 is the constant 1).
    ///
    /// A symbol that is a number, or a repeated name, contradicts the
    /// independence declaration.
    pub fn declare(&mut self, name: &str, value: f64) -> Result<usize> {
        let name = name.trim();
        if name.is_empty() || name == "1" || name.parse::<f64>().is_ok() || name.contains('/') {
            return Err(Error::IndependenceViolated(format!("`{name}` is not an opaque symbol")));
        }
        if self.names.iter().any(|n| n == name) {
            return Err(Error::IndependenceViolated(format!("symbol `{name}` declared twice")));
        }
        if !value.is_finite() || value == 0.0 {
            return Err(Error::IndependenceViolated(format!("symbol `{name}` needs a finite nonzero value")));
        }
        self.names.push(name.to_string());
        self.values.push(value);
        Ok(self.names.len())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|i| i + 1)
    }

    /// Numeric value of basis element `i` (0 is the constant 1).
    pub fn value(&self, i: usize) -> f64 {
        if i == 0 {
            1.0
        } else {
            self.values[i - 1]
        }
    }
}

/// One coordinate: rational coefficients over `1, s_1, s_2, ...`.
pub type Coord = Vec<BigRational>;

/// A vector whose coordinates are rational combinations of `1` and the
/// declared symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicVector {
    coords: Vec<Coord>,
}

impl SymbolicVector {
    pub fn new(coords: Vec<Coord>) -> Self {
        let mut v = SymbolicVector { coords };
        for c in &mut v.coords {
            while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
                c.pop();
            }
            if c.is_empty() {
                c.push(BigRational::zero());
            }
        }
        v
    }

    /// A vector with integer coordinates.
    pub fn from_integers(xs: &[i64]) -> Self {
        SymbolicVector::new(xs.iter().map(|&x| vec![BigRational::from_integer(BigInt::from(x))]).collect())
    }

    pub fn from_point(p: &LatticePoint) -> Self {
        SymbolicVector::new(p.coords().iter().map(|&x| vec![BigRational::from_integer(BigInt::from(x))]).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// Highest symbol index in use.
    pub fn width(&self) -> usize {
        self.coords.iter().map(Vec::len).max().unwrap_or(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.iter().all(Zero::is_zero))
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.len() == 1)
    }

    /// Coefficients flattened to `dim * width` rationals, coordinate-major.
    pub(crate) fn flatten(&self, width: usize) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.dim() * width);
        for c in &self.coords {
            out.extend(c.iter().cloned());
            out.extend(std::iter::repeat_n(BigRational::zero(), width - c.len()));
        }
        out
    }

    /// Numeric value of each coordinate.
    pub fn approx(&self, symbols: &SymbolTable) -> Vec<f64> {
        self.coords.iter().map(|c| approx_coord(c, symbols)).collect()
    }
}

pub(crate) fn approx_coord(c: &Coord, symbols: &SymbolTable) -> f64 {
    c.iter()
        .enumerate()
        .map(|(i, q)| q.to_f64().unwrap_or(f64::NAN) * symbols.value(i))
        .sum()
}

/// Sign of a coordinate: exact for rational ones, numeric otherwise.
pub(crate) fn coord_sign(c: &Coord, symbols: &SymbolTable) -> std::cmp::Ordering {
    if c.len() == 1 {
        return c[0].cmp(&BigRational::zero());
    }
    approx_coord(c, symbols).total_cmp(&0.0)
}

impl From<&LatticePoint> for SymbolicVector {
    fn from(p: &LatticePoint) -> Self {
        SymbolicVector::from_point(p)
    }
}

/// The vectors of an integer config as symbolic vectors.
pub fn symbolic_config(config: &InitialConfig) -> Vec<SymbolicVector> {
    config.initials().iter().map(SymbolicVector::from_point).collect()
}

/// Checks a symbolic config: nonempty, one dimension, symbols declared,
/// no zero or repeated vector.
pub(crate) fn check_config(config: &[SymbolicVector], symbols: &SymbolTable) -> Result<usize> {
    let first = config.first().ok_or(Error::EmptyConfig)?;
    let dim = first.dim();
    let mut seen = HashSet::new();
    for v in config {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
        }
        if v.width() > symbols.len() + 1 {
            return Err(Error::InvalidArgument(format!("vector uses undeclared symbol index {}", v.width() - 1)));
        }
        if v.is_zero() {
            return Err(Error::ZeroVector(v.display(symbols).to_string()));
        }
        if !seen.insert(v) {
            return Err(Error::DuplicateVector(v.display(symbols).to_string()));
        }
    }
    Ok(dim)
}

/// Formats a vector with symbol names.
pub struct Display<'a> {
    v: &'a SymbolicVector,
    symbols: &'a SymbolTable,
}

impl SymbolicVector {
    pub fn display<'a>(&'a self, symbols: &'a SymbolTable) -> Display<'a> {
        Display { v: self, symbols }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.v.coords.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            let mut wrote = false;
            for (i, q) in c.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                if wrote {
                    write!(f, "{}", if q.is_negative() { "-" } else { "+" })?;
                } else if q.is_negative() {
                    write!(f, "-")?;
                }
                let a = q.abs();
                if i == 0 {
                    write!(f, "{a}")?;
                } else {
                    let name = self.symbols.names.get(i - 1).map(String::as_str).unwrap_or("?");
                    if a == BigRational::from_integer(1.into()) {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{a}*{name}")?;
                    }
                }
                wrote = true;
            }
            if !wrote {
                write!(f, "0")?;
            }
        }
        write!(f, ")")
    }
}
