//! Bracket algebras on a particle's phase space and their structure matrices.

mod generalized;
mod jacobi;
mod observable;
mod spec;
mod state;
mod structure;
mod tables;

pub use generalized::{as_generalized, generalized_params};
pub use jacobi::{jacobi_residual, jacobi_residual_numeric, DEFAULT_FD_STEP};
pub use observable::{
    bracket, bracket_with, linear_bracket, FnObservable, Linear, Observable, Product, Quadratic, Sum,
};
pub use spec::{AlgebraKind, AlgebraSpec, Axis, GeneralizedParams, Tensor2, Tensor3, ZERO2, ZERO3};
pub use state::{p_index, x_index, PhaseState, PARTICLE_DIM};
pub use structure::{structure_derivatives, structure_matrix, StructureMatrix};
pub use tables::{particle_brackets, ParticleBrackets};
