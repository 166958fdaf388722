use nalgebra::DMatrix;

use super::generalized::generalized_params;
use super::spec::AlgebraSpec;
use super::state::{PhaseState, PARTICLE_DIM};
use super::tables::particle_brackets;
use crate::error::{Error, Result};

/// Elementary brackets `J_ab = {z_a, z_b}` over the flattened phase vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureMatrix {
    matrix: DMatrix<f64>,
}

impl StructureMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.matrix[(a, b)]
    }

    /// `max |J + Jᵀ|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        (&self.matrix + self.matrix.transpose()).amax()
    }

    /// Largest entry coupling two different particles.
    pub fn cross_particle_max(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                if a / PARTICLE_DIM != b / PARTICLE_DIM {
                    worst = worst.max(self.matrix[(a, b)].abs());
                }
            }
        }
        worst
    }
}

pub(crate) fn check_specs(specs: &[AlgebraSpec], state: &PhaseState) -> Result<()> {
    state.expect_len(specs.len())?;
    state.validate()?;
    for spec in specs {
        spec.validate()?;
    }
    Ok(())
}

/// Assembles the block-diagonal structure matrix for one spec per particle.
pub fn structure_matrix(specs: &[AlgebraSpec], state: &PhaseState) -> Result<StructureMatrix> {
    check_specs(specs, state)?;
    Ok(assemble(specs, state))
}

pub(crate) fn assemble(specs: &[AlgebraSpec], state: &PhaseState) -> StructureMatrix {
    let n = state.dim();
    let mut matrix = DMatrix::zeros(n, n);
    for (a, spec) in specs.iter().enumerate() {
        let block = particle_brackets(spec, &state.x[a], &state.p[a], state.t).block();
        let o = PARTICLE_DIM * a;
        matrix.view_mut((o, o), (PARTICLE_DIM, PARTICLE_DIM)).copy_from(&block);
    }
    StructureMatrix { matrix }
}

/// Exact partial derivatives `∂J/∂z_d`, one matrix per phase coordinate.
///
/// Every supported algebra is affine in the phase point, so the derivatives are
/// the constant slices of the tensor encoding: `∂{Xi,Xj}/∂Xk = θᵏij`,
/// `∂{Xi,Pj}/∂Xk = θ̄ᵏij`, `∂{Xi,Pj}/∂Pk = θ̃ᵏij`.
pub fn structure_derivatives(specs: &[AlgebraSpec], n_particles: usize) -> Result<Vec<DMatrix<f64>>> {
    if specs.len() != n_particles {
        return Err(Error::DimensionMismatch {
            expected: specs.len(),
            found: n_particles,
        });
    }
    let dim = PARTICLE_DIM * n_particles;
    let mut out = vec![DMatrix::zeros(dim, dim); dim];
    for (a, spec) in specs.iter().enumerate() {
        spec.validate()?;
        let g = generalized_params(spec);
        let o = PARTICLE_DIM * a;
        for k in 0..3 {
            let dx = &mut out[o + k];
            for i in 0..3 {
                for j in 0..3 {
                    dx[(o + i, o + j)] = g.theta[k][i][j];
                    dx[(o + i, o + 3 + j)] = g.theta_bar[k][i][j];
                    dx[(o + 3 + j, o + i)] = -g.theta_bar[k][i][j];
                }
            }
            let dp = &mut out[o + 3 + k];
            for i in 0..3 {
                for j in 0..3 {
                    dp[(o + i, o + 3 + j)] = g.theta_tilde[k][i][j];
                    dp[(o + 3 + j, o + i)] = -g.theta_tilde[k][i][j];
                }
            }
        }
    }
    Ok(out)
}
