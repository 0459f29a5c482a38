//! Ulam sets over the nonnegative integer lattice.

pub(crate) mod bound;
mod config;
mod generate;
mod point;
mod reference;
mod set;
pub(crate) mod size;
mod store;

pub use bound::Bound;
pub use config::{validate_config, InitialConfig};
pub use generate::{generate, generate_with, GenerateOptions};
pub use point::LatticePoint;
pub use reference::generate_reference;
pub use set::{enumerate_bound, representation_count, UlamSet, Violation};
pub use size::SizeFunction;
pub use store::{Storage, DENSE_CELL_LIMIT};
