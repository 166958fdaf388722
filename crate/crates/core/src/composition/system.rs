use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, AlgebraSpec, PhaseState};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Particle {
    pub mass: f64,
    pub spec: AlgebraSpec,
}

/// Particles sharing one algebra variant, each with its own mass and parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Particle>", into = "Vec<Particle>")]
pub struct ParticleSystem {
    particles: Vec<Particle>,
}

impl TryFrom<Vec<Particle>> for ParticleSystem {
    type Error = Error;

    fn try_from(particles: Vec<Particle>) -> Result<Self> {
        ParticleSystem::new(particles)
    }
}

impl From<ParticleSystem> for Vec<Particle> {
    fn from(system: ParticleSystem) -> Self {
        system.particles
    }
}

impl ParticleSystem {
    pub fn new(particles: Vec<Particle>) -> Result<Self> {
        let first = particles
            .first()
            .ok_or_else(|| invalid("particles", "a system needs at least one particle"))?;
        for (a, particle) in particles.iter().enumerate() {
            if !(particle.mass.is_finite() && particle.mass > 0.0) {
                return Err(invalid(
                    format!("particles[{}].mass", a + 1),
                    format!("must be finite and positive, got {}", particle.mass),
                ));
            }
            particle.spec.validate().map_err(|e| match e {
                Error::InvalidParameter { field, reason } => invalid(format!("particles[{}].{field}", a + 1), reason),
                other => other,
            })?;
            if !particle.spec.same_shape(&first.spec) {
                return Err(Error::MixedAlgebras {
                    first: describe(&first.spec),
                    other: describe(&particle.spec),
                });
            }
        }
        Ok(ParticleSystem { particles })
    }

    /// `n` copies of one particle.
    pub fn identical(n: usize, mass: f64, spec: AlgebraSpec) -> Result<Self> {
        Self::new(vec![Particle { mass, spec }; n])
    }

    /// Particles of the given masses with parameters produced per mass.
    pub fn from_masses(masses: &[f64], spec_for: impl Fn(f64) -> AlgebraSpec) -> Result<Self> {
        Self::new(
            masses
                .iter()
                .map(|&mass| Particle {
                    mass,
                    spec: spec_for(mass),
                })
                .collect(),
        )
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    pub fn kind(&self) -> AlgebraKind {
        self.particles[0].spec.kind()
    }

    pub fn specs(&self) -> Vec<AlgebraSpec> {
        self.particles.iter().map(|p| p.spec.clone()).collect()
    }

    pub fn masses(&self) -> Vec<f64> {
        self.particles.iter().map(|p| p.mass).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.particles.iter().map(|p| p.mass).sum()
    }

    /// Mass fractions `μa = ma / M`.
    pub fn mass_fractions(&self) -> Vec<f64> {
        let total = self.total_mass();
        self.particles.iter().map(|p| p.mass / total).collect()
    }
}

fn describe(spec: &AlgebraSpec) -> String {
    match spec {
        AlgebraSpec::SpaceTime { rho, tau, .. } => format!("{} (rho={rho}, tau={tau})", spec.kind()),
        AlgebraSpec::SpaceSpace { k, l, gamma, .. }
        | AlgebraSpec::MiaoTypeI { k, l, gamma, .. }
        | AlgebraSpec::MiaoTypeII { k, l, gamma, .. } => {
            format!("{} (k={k}, l={l}, gamma={gamma})", spec.kind())
        }
        _ => spec.kind().to_string(),
    }
}

/// Center-of-mass and relative variables of a state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComCoordinates {
    pub x_com: Vector3<f64>,
    pub p_com: Vector3<f64>,
    pub dx: Vec<Vector3<f64>>,
    pub dp: Vec<Vector3<f64>>,
}

impl ComCoordinates {
    /// The center of mass as a one-particle state at the same time.
    pub fn com_state(&self, t: f64) -> PhaseState {
        PhaseState::single(self.x_com, self.p_com, t)
    }
}

/// `P̃ = Σ P⁽ᵃ⁾`, `X̃ = Σ μa X⁽ᵃ⁾`, `ΔP⁽ᵃ⁾ = P⁽ᵃ⁾ − μa P̃`, `ΔX⁽ᵃ⁾ = X⁽ᵃ⁾ − X̃`.
pub fn com_transform(system: &ParticleSystem, state: &PhaseState) -> Result<ComCoordinates> {
    state.expect_len(system.len())?;
    let mu = system.mass_fractions();
    let x_com = state
        .x
        .iter()
        .zip(&mu)
        .fold(Vector3::zeros(), |acc, (x, m)| acc + x * *m);
    let p_com = state.p.iter().fold(Vector3::zeros(), |acc, p| acc + p);
    let dx = state.x.iter().map(|x| x - x_com).collect();
    let dp = state.p.iter().zip(&mu).map(|(p, m)| p - p_com * *m).collect();
    Ok(ComCoordinates { x_com, p_com, dx, dp })
}
