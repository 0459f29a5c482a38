//! Exact linear algebra on initial configurations.
//!
//! Two configs with the same integer relations `Σ a_i v_i = 0` generate
//! sets that correspond term by term. This module computes those relations
//! (the characteristic lattice), and moves configs of real vectors to
//! integer or axis-aligned configs with the same relations.

mod embed;
mod kernel;
mod normalize;
mod symbolic;

pub use embed::{embed_integer_lattice, embed_one_dimensional, formal_ulam_run, FormalReal, LatticeEmbedding};
pub use kernel::{
    characteristic_lattice, config_lattice, hermite_normal_form, is_generic, structurally_equivalent,
    CharacteristicLattice,
};
pub use normalize::{normalize_axes_2d, AxisNormalization};
pub use symbolic::{symbolic_config, Coord, SymbolTable, SymbolicVector};
