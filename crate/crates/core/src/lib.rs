//! Classical mechanics on Lie-algebraic noncommutative phase spaces.
//!
//! * [`algebra`]: bracket algebras, structure matrices, Jacobi checks.
//! * [`composition`]: center-of-mass and relative variables of many-particle systems.
//! * [`dynamics`]: equations of motion in gravitational fields and equivalence-principle tests.

pub mod algebra;
pub mod composition;
pub mod dynamics;
mod error;

pub use error::{Error, Result};
