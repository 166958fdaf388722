use nalgebra::{DMatrix, DVector};

use super::spec::AlgebraSpec;
use super::state::PhaseState;
use super::structure::{assemble, check_specs, structure_derivatives};
use crate::error::{invalid, Result};

pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Largest Jacobi defect `|Σd (J_ad ∂d J_bc + J_bd ∂d J_ca + J_cd ∂d J_ab)|`
/// over index triples, with time held fixed.
///
/// The built-in algebras are affine in the phase point and use exact
/// derivatives; `fd_step` is validated for interface parity with
/// [`jacobi_residual_numeric`].
pub fn jacobi_residual(specs: &[AlgebraSpec], state: &PhaseState, fd_step: f64) -> Result<f64> {
    check_step(fd_step)?;
    check_specs(specs, state)?;
    let j = assemble(specs, state).into_matrix();
    let ders = structure_derivatives(specs, state.len())?;
    Ok(residual(&j, &ders))
}

/// Jacobi defect of an arbitrary structure `J(z)` using central differences.
pub fn jacobi_residual_numeric<F>(structure: F, z: &DVector<f64>, fd_step: f64) -> Result<f64>
where
    F: Fn(&DVector<f64>) -> DMatrix<f64>,
{
    check_step(fd_step)?;
    let j = structure(z);
    let ders: Vec<DMatrix<f64>> = (0..z.len())
        .map(|d| {
            let mut up = z.clone();
            let mut down = z.clone();
            up[d] += fd_step;
            down[d] -= fd_step;
            (structure(&up) - structure(&down)) / (2.0 * fd_step)
        })
        .collect();
    Ok(residual(&j, &ders))
}

fn check_step(fd_step: f64) -> Result<()> {
    if !(fd_step > 0.0 && fd_step.is_finite()) {
        return Err(invalid("fd_step", format!("must be positive, got {fd_step}")));
    }
    Ok(())
}

fn residual(j: &DMatrix<f64>, ders: &[DMatrix<f64>]) -> f64 {
    let n = j.nrows();
    // Only coordinates with a nonzero derivative contribute to the sums.
    let active: Vec<usize> = (0..n).filter(|&d| ders[d].amax() != 0.0).collect();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let mut s = 0.0;
                for &d in &active {
                    let dj = &ders[d];
                    s += j[(a, d)] * dj[(b, c)] + j[(b, d)] * dj[(c, a)] + j[(c, d)] * dj[(a, b)];
                }
                worst = worst.max(s.abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use nalgebra::Vector3;

    use super::*;
    use crate::algebra::spec::{Axis, GeneralizedParams};
    use crate::algebra::structure::structure_matrix;

    #[test]
    fn canonical_residual_is_zero() {
        let s = PhaseState::single(Vector3::new(1.0, -2.0, 3.0), Vector3::new(0.4, 0.5, 0.6), 2.0);
        assert_eq!(
            jacobi_residual(&[AlgebraSpec::Canonical], &s, DEFAULT_FD_STEP).unwrap(),
            0.0
        );
    }

    fn unconstrained() -> AlgebraSpec {
        let mut g = GeneralizedParams::default();
        g.theta[0][1][2] = 1.0;
        g.theta[0][2][1] = -1.0;
        g.theta_bar[1][0][2] = 1.0;
        g.theta_bar[1][2][0] = -1.0;
        AlgebraSpec::Generalized(g)
    }

    #[test]
    fn unconstrained_tensors_violate_jacobi() {
        let s = PhaseState::single(Vector3::new(1.0, 1.0, 1.0), Vector3::new(1.0, 1.0, 1.0), 0.0);
        let r = jacobi_residual(&[unconstrained()], &s, DEFAULT_FD_STEP).unwrap();
        assert!(r > 0.1, "residual {r}");
    }

    #[test]
    fn finite_differences_agree_with_exact_derivatives() {
        let s = PhaseState::single(Vector3::new(1.0, 1.0, 1.0), Vector3::new(1.0, 1.0, 1.0), 0.5);
        let specs = [unconstrained()];
        let exact = jacobi_residual(&specs, &s, DEFAULT_FD_STEP).unwrap();
        let t = s.t;
        let numeric = jacobi_residual_numeric(
            |z| {
                structure_matrix(&specs, &PhaseState::from_vector(z, t))
                    .unwrap()
                    .into_matrix()
            },
            &s.to_vector(),
            DEFAULT_FD_STEP,
        )
        .unwrap();
        assert!((exact - numeric).abs() < 1e-8, "{exact} vs {numeric}");
    }

    #[test]
    fn rejects_non_positive_step() {
        let s = PhaseState::single(Vector3::zeros(), Vector3::zeros(), 0.0);
        let spec = AlgebraSpec::SpaceTime {
            kappa: 1.0,
            rho: Axis::X1,
            tau: Axis::X3,
        };
        assert!(jacobi_residual(&[spec], &s, 0.0).is_err());
    }
}
