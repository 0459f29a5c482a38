//! Ulam sequences and Ulam sets.
//!
//! An Ulam set starts from finitely many initial vectors and repeatedly
//! admits the smallest points that are the sum of two distinct members in
//! exactly one way. This crate generates such sets in any dimension, checks
//! known closed forms against computed sets, analyses the periodic columns
//! of planar sets, and scans the cosine signal of the classical sequence.
//!
//! Data-parallel loops use rayon when the `parallel` feature is on (the
//! default) and fall back to sequential code otherwise.

pub mod algebra;
pub mod columns;
pub mod cyclic;
pub mod error;
pub mod lattice;
pub mod onedim;
pub mod par;
pub mod signal;
pub mod verify;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
pub use lattice::{
    generate, generate_reference, generate_with, validate_config, Bound, GenerateOptions, InitialConfig,
    LatticePoint, SizeFunction, UlamSet,
};
pub use par::Execution;
