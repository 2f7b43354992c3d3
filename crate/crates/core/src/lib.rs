//! Exact computation of the adjunction lower bound `h(A)` for the minimal
//! genus function on 4-manifolds with `b+ = 1`.
//!
//! The crate works with the combinatorial shadow of the cohomology ring: an
//! [`IntersectionForm`], the rank of the cup product on degree one, and a
//! generator of its image. On top of that it provides adjunction classes and
//! an exhaustive oracle ([`adjunction`]), orbit reduction ([`reduction`]),
//! closed-form genus bounds ([`closedform`]) and sphere obstructions
//! ([`sphere`]).

pub mod adjunction;
pub mod algebra;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod lattice;
pub mod reduction;
mod search;
pub mod sphere;

pub use adjunction::{AdjunctionVerdict, HWitness};
pub use algebra::{AlgebraDescriptor, AlgebraJson, CaseTag};
pub use error::{GenusError, Result};
pub use lattice::{FormTag, IntersectionForm, LatticeClass};
pub use search::classes_in_box;
