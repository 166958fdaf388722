use nalgebra::{DVector, Vector3};

use super::potential::Potential;
use crate::algebra::{bracket, p_index, x_index, FnObservable, Linear, PhaseState, Quadratic};
use crate::composition::ParticleSystem;
use crate::error::Result;

/// `|{P̃²/2M + M V(X̃), H_rel}|` with `H_rel = Σ ΔPa²/(2 μa ma) + Σ ‖ΔXa‖²`.
pub fn decoupling_check(system: &ParticleSystem, potential: &Potential, state: &PhaseState) -> Result<f64> {
    state.expect_len(system.len())?;
    let n = system.len();
    let mu = system.mass_fractions();
    let masses = system.masses();
    let total = system.total_mass();
    let com_x = |z: &DVector<f64>| Vector3::from_fn(|i, _| (0..n).map(|a| mu[a] * z[x_index(a, i)]).sum::<f64>());
    let com_p = |z: &DVector<f64>| Vector3::from_fn(|i, _| (0..n).map(|a| z[p_index(a, i)]).sum::<f64>());
    let h_com = FnObservable {
        value: |z: &DVector<f64>| Ok(com_p(z).norm_squared() / (2.0 * total) + total * potential.value(&com_x(z))?),
        gradient: |z: &DVector<f64>| {
            let dv = potential.gradient(&com_x(z))?;
            let p = com_p(z);
            let mut g = DVector::zeros(z.len());
            for a in 0..n {
                for i in 0..3 {
                    g[x_index(a, i)] = masses[a] * dv[i];
                    g[p_index(a, i)] = p[i] / total;
                }
            }
            Ok(g)
        },
    };
    let mut terms = Vec::with_capacity(6 * n);
    for a in 0..n {
        for i in 0..3 {
            terms.push((1.0 / (2.0 * mu[a] * masses[a]), Linear::relative_momentum(&mu, a, i)));
            terms.push((1.0, Linear::relative_position(&mu, a, i)));
        }
    }
    let h_rel = Quadratic { terms };
    Ok(bracket(&h_com, &h_rel, &system.specs(), state)?.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraSpec, Axis};

    fn st(kappa: f64) -> AlgebraSpec {
        AlgebraSpec::SpaceTime {
            kappa,
            rho: Axis::X1,
            tau: Axis::X2,
        }
    }

    fn state() -> PhaseState {
        PhaseState::new(
            vec![Vector3::new(0.4, -1.0, 0.3), Vector3::new(1.2, 0.5, -0.7)],
            vec![Vector3::new(0.1, 0.9, -0.4), Vector3::new(-0.6, 0.2, 0.3)],
            1.0,
        )
        .unwrap()
    }

    fn field() -> Potential {
        Potential::Uniform {
            g: Vector3::new(0.3, 1.0, -0.2),
        }
    }

    #[test]
    fn scaled_space_time_decouples() {
        let sys = ParticleSystem::from_masses(&[1.0, 2.0], |m| st(1.7 * m)).unwrap();
        assert!(decoupling_check(&sys, &field(), &state()).unwrap() <= 1e-12);
    }

    #[test]
    fn unscaled_space_time_couples() {
        let sys = ParticleSystem::from_masses(&[1.0, 2.0], |_| st(1.0)).unwrap();
        assert!(decoupling_check(&sys, &field(), &state()).unwrap() > 1e-6);
    }

    #[test]
    fn constant_potential_always_decouples() {
        let sys = ParticleSystem::from_masses(&[1.0, 2.0], |_| st(1.0)).unwrap();
        let flat = Potential::Uniform { g: Vector3::zeros() };
        assert!(decoupling_check(&sys, &flat, &state()).unwrap() <= 1e-12);
    }
}
