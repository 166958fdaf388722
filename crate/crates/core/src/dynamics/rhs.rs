//! Hamilton's equations `ż = J(z, t)∇H` for `H = Σ Pa²/2ma + ma V(Xa)`.

use nalgebra::{DVector, Vector3, Vector6};

use super::potential::Potential;
use super::scenario::GravityScenario;
use crate::algebra::{generalized_params, particle_brackets, AlgebraKind, AlgebraSpec, PhaseState, PARTICLE_DIM};
use crate::composition::{effective_parameters, satisfies_mass_scaling, ParticleSystem, SCALING_TOL};
use crate::error::{Error, Result};

/// Particles (or a composite body's center of mass) moving in one potential.
#[derive(Clone, Debug)]
pub(crate) struct Flow<'a> {
    pub(crate) specs: Vec<AlgebraSpec>,
    pub(crate) masses: Vec<f64>,
    pub(crate) potential: &'a Potential,
}

impl<'a> Flow<'a> {
    pub(crate) fn particles(system: &ParticleSystem, potential: &'a Potential) -> Self {
        Flow {
            specs: system.specs(),
            masses: system.masses(),
            potential,
        }
    }

    /// The center of mass of a body as one pseudo-particle of mass `M`.
    pub(crate) fn body(scenario: &'a GravityScenario) -> Result<Self> {
        let mode = scenario
            .body_mode
            .ok_or_else(|| crate::error::invalid("body_mode", "center-of-mass dynamics requested without body mode"))?;
        let system = &scenario.system;
        if !mode.neglect_relative_motion && !decouples_exactly(system)? {
            return Err(Error::ApproximationNotAcknowledged);
        }
        let effective = effective_parameters(system)?;
        Ok(Flow {
            specs: vec![effective.spec],
            masses: vec![system.total_mass()],
            potential: &scenario.potential,
        })
    }

    pub(crate) fn rhs(&self, state: &PhaseState) -> Result<DVector<f64>> {
        let mut out = DVector::zeros(state.dim());
        for (a, (spec, &m)) in self.specs.iter().zip(&self.masses).enumerate() {
            let v = particle_velocity(spec, m, self.potential, &state.x[a], &state.p[a], state.t)?;
            out.fixed_rows_mut::<6>(PARTICLE_DIM * a).copy_from(&v);
        }
        Ok(out)
    }

    pub(crate) fn energy(&self, state: &PhaseState) -> Result<f64> {
        let mut h = 0.0;
        for (a, &m) in self.masses.iter().enumerate() {
            h += state.p[a].norm_squared() / (2.0 * m) + m * self.potential.value(&state.x[a])?;
        }
        Ok(h)
    }
}

/// Center-of-mass motion is independent of the relative motion without
/// approximation: canonical particles or mass-scaled space-time algebras.
fn decouples_exactly(system: &ParticleSystem) -> Result<bool> {
    Ok(match system.kind() {
        AlgebraKind::Canonical => true,
        AlgebraKind::SpaceTime => satisfies_mass_scaling(system, SCALING_TOL)?.holds,
        _ => false,
    })
}

/// `J_a ∇_a H` for one particle.
fn particle_velocity(
    spec: &AlgebraSpec,
    mass: f64,
    potential: &Potential,
    x: &Vector3<f64>,
    p: &Vector3<f64>,
    t: f64,
) -> Result<Vector6<f64>> {
    let dv = potential.gradient(x)?;
    let mut grad = Vector6::zeros();
    grad.fixed_rows_mut::<3>(0).copy_from(&(dv * mass));
    grad.fixed_rows_mut::<3>(3).copy_from(&(p / mass));
    Ok(particle_brackets(spec, x, p, t).block() * grad)
}

/// Phase velocity `J(z, t)∇H(z)` of every particle in the scenario.
pub fn eom_rhs(scenario: &GravityScenario, state: &PhaseState) -> Result<DVector<f64>> {
    state.expect_len(scenario.system.len())?;
    Flow::particles(&scenario.system, &scenario.potential).rhs(state)
}

/// Phase velocity of a composite body's center of mass `(X̃, P̃)`, treated as a
/// particle of mass `M` in the effective algebra.
pub fn body_com_rhs(scenario: &GravityScenario, com_state: &PhaseState) -> Result<DVector<f64>> {
    com_state.expect_len(1)?;
    Flow::body(scenario)?.rhs(com_state)
}

/// `H = Σ Pa²/2ma + ma V(Xa)`
pub fn hamiltonian(system: &ParticleSystem, potential: &Potential, state: &PhaseState) -> Result<f64> {
    state.expect_len(system.len())?;
    Flow::particles(system, potential).energy(state)
}

/// Equations of motion written out per algebra family, evaluated without the
/// structure matrix. Space-time and space-space particles use their own
/// printed forms; all other variants use the tensor form.
pub fn closed_form_eom(system: &ParticleSystem, potential: &Potential, state: &PhaseState) -> Result<DVector<f64>> {
    state.expect_len(system.len())?;
    let mut out = DVector::zeros(state.dim());
    for (a, particle) in system.particles().iter().enumerate() {
        let (x, p, t, m) = (&state.x[a], &state.p[a], state.t, particle.mass);
        let dv = potential.gradient(x)?;
        let (xd, pd) = match &particle.spec {
            AlgebraSpec::SpaceTime { kappa, rho, tau } => {
                let (r, s) = (rho.index(), tau.index());
                let mut xd = p / m;
                xd[r] += t * m / kappa * dv[s];
                xd[s] -= t * m / kappa * dv[r];
                (xd, -dv * m)
            }
            AlgebraSpec::SpaceSpace {
                kappa_tilde,
                k,
                l,
                gamma,
            } => {
                let (k, l, g) = (k.index(), l.index(), gamma.index());
                let c = m / kappa_tilde;
                let mut xd = p / m;
                let mut pd = -dv * m;
                xd[k] += c * x[l] * dv[g];
                xd[l] -= c * x[k] * dv[g];
                xd[g] += -c * x[l] * dv[k] + c * x[k] * dv[l];
                pd[k] += c * p[l] * dv[g];
                pd[l] -= c * p[k] * dv[g];
                (xd, pd)
            }
            spec => tensor_eom(spec, m, x, p, t, &dv),
        };
        out.fixed_rows_mut::<3>(PARTICLE_DIM * a).copy_from(&xd);
        out.fixed_rows_mut::<3>(PARTICLE_DIM * a + 3).copy_from(&pd);
    }
    Ok(out)
}

/// `Ẋi = Pi/m + θ̄ᵏij Pj Xk/m + θ̃ᵏij Pj Pk/m + m(θ⁰ij t + θᵏij Xk) ∂jV`,
/// `Ṗi = −m ∂iV − m(θ̄ᵏji Xk + θ̃ᵏji Pk) ∂jV`.
fn tensor_eom(
    spec: &AlgebraSpec,
    m: f64,
    x: &Vector3<f64>,
    p: &Vector3<f64>,
    t: f64,
    dv: &Vector3<f64>,
) -> (Vector3<f64>, Vector3<f64>) {
    let g = generalized_params(spec);
    let mut xd = p / m;
    let mut pd = -dv * m;
    for i in 0..3 {
        for j in 0..3 {
            xd[i] += m * g.theta0[i][j] * t * dv[j];
            for k in 0..3 {
                xd[i] += g.theta_bar[k][i][j] * p[j] * x[k] / m
                    + g.theta_tilde[k][i][j] * p[j] * p[k] / m
                    + m * g.theta[k][i][j] * x[k] * dv[j];
                pd[i] -= m * (g.theta_bar[k][j][i] * x[k] + g.theta_tilde[k][j][i] * p[k]) * dv[j];
            }
        }
    }
    (xd, pd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Axis, GeneralizedParams};
    use crate::dynamics::{BodyMode, TimeGrid};

    fn single(spec: AlgebraSpec, mass: f64) -> ParticleSystem {
        ParticleSystem::identical(1, mass, spec).unwrap()
    }

    fn uniform(g: [f64; 3]) -> Potential {
        Potential::Uniform { g: Vector3::from(g) }
    }

    #[test]
    fn canonical_free_fall() {
        let sys = single(AlgebraSpec::Canonical, 1.0);
        let s = PhaseState::single(Vector3::zeros(), Vector3::new(1.0, 0.0, 0.0), 0.0);
        let v = Flow::particles(&sys, &uniform([0.0, -9.8, 0.0])).rhs(&s).unwrap();
        assert_eq!(v.as_slice(), &[1.0, 0.0, 0.0, 0.0, 9.8, 0.0]);
    }

    #[test]
    fn space_time_velocity_picks_up_mass() {
        let spec = AlgebraSpec::SpaceTime {
            kappa: 1.0,
            rho: Axis::X1,
            tau: Axis::X2,
        };
        let sys = single(spec, 2.0);
        let s = PhaseState::single(Vector3::zeros(), Vector3::zeros(), 1.0);
        let v = Flow::particles(&sys, &uniform([0.0, 1.0, 0.0])).rhs(&s).unwrap();
        assert_eq!(v[0], 2.0);
    }

    #[test]
    fn zero_tensors_reduce_to_canonical() {
        let pot = Potential::harmonic(1.3);
        let s = PhaseState::single(Vector3::new(0.2, -0.4, 1.0), Vector3::new(0.5, 0.1, -0.3), 2.0);
        let a = Flow::particles(
            &single(AlgebraSpec::Generalized(GeneralizedParams::default()), 1.7),
            &pot,
        )
        .rhs(&s)
        .unwrap();
        let b = Flow::particles(&single(AlgebraSpec::Canonical, 1.7), &pot)
            .rhs(&s)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn structure_matrix_agrees_with_written_equations() {
        let pot = Potential::Newtonian {
            source_strength: 2.0,
            center: Vector3::new(3.0, -1.0, 0.5),
        };
        let specs = [
            AlgebraSpec::SpaceTime {
                kappa: 1.5,
                rho: Axis::X3,
                tau: Axis::X1,
            },
            AlgebraSpec::SpaceSpace {
                kappa_tilde: 0.8,
                k: Axis::X2,
                l: Axis::X3,
                gamma: Axis::X1,
            },
            AlgebraSpec::MiaoTypeII {
                kappa: 1.1,
                kappa_tilde: 0.7,
                kappa_bar: 2.0,
                k: Axis::X1,
                l: Axis::X2,
                gamma: Axis::X3,
            },
        ];
        let s = PhaseState::single(Vector3::new(0.2, -0.4, 1.0), Vector3::new(0.5, 0.1, -0.3), 1.4);
        for spec in specs {
            let sys = single(spec, 1.9);
            let a = Flow::particles(&sys, &pot).rhs(&s).unwrap();
            let b = closed_form_eom(&sys, &pot, &s).unwrap();
            assert!((a - b).amax() < 1e-12);
        }
    }

    #[test]
    fn body_mode_gates_the_approximation() {
        let ss = |m: f64| AlgebraSpec::SpaceSpace {
            kappa_tilde: 2.0 * m,
            k: Axis::X1,
            l: Axis::X2,
            gamma: Axis::X3,
        };
        let sys = ParticleSystem::from_masses(&[1.0, 3.0], ss).unwrap();
        let state = PhaseState::new(vec![Vector3::zeros(); 2], vec![Vector3::zeros(); 2], 0.0).unwrap();
        let scenario = GravityScenario::new(
            sys,
            uniform([0.0, 0.0, 1.0]),
            state,
            TimeGrid::new(0.0, 1.0, 0.1).unwrap(),
        )
        .unwrap();
        let com = PhaseState::single(Vector3::new(1.0, 0.0, 0.0), Vector3::zeros(), 0.0);
        assert!(body_com_rhs(&scenario, &com).is_err());
        let strict = scenario.clone().with_body_mode(BodyMode::default()).unwrap();
        assert_eq!(body_com_rhs(&strict, &com), Err(Error::ApproximationNotAcknowledged));
        let loose = scenario
            .with_body_mode(BodyMode {
                neglect_relative_motion: true,
            })
            .unwrap();
        let v = body_com_rhs(&loose, &com).unwrap();
        // κ̃_eff = 2·4: Ẋl = −M X̃k/κ̃ ∂γV = −4/8.
        assert!((v[1] + 0.5).abs() < 1e-15);
    }
}
