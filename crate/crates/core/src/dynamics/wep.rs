use std::thread;

use serde::{Deserialize, Serialize};

use super::integrate::{integrate, Trajectory};
use super::scenario::GravityScenario;
use crate::algebra::PhaseState;
use crate::composition::{MassScalingRule, Particle, ParticleSystem};
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMode {
    /// Every mass uses the template's parameters unchanged.
    Fixed,
    /// Parameters follow the template's mass-scaling rule.
    MassScaled,
}

impl ScalingMode {
    pub const ALL: [ScalingMode; 2] = [ScalingMode::Fixed, ScalingMode::MassScaled];

    pub fn name(self) -> &'static str {
        match self {
            ScalingMode::Fixed => "fixed",
            ScalingMode::MassScaled => "mass_scaled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WepPair {
    pub masses: [f64; 2],
    /// `max_t ‖X⁽ᵐ⁾(t) − X⁽ᵐ′⁾(t)‖`
    pub position: f64,
    /// `max_t ‖P′⁽ᵐ⁾(t) − P′⁽ᵐ′⁾(t)‖`
    pub reduced_momentum: f64,
    /// `‖X⁽ᵐ⁾ − X⁽ᵐ′⁾‖` at the last grid point.
    pub final_position: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WepDeviation {
    pub mode: ScalingMode,
    pub pairs: Vec<WepPair>,
    pub max_position: f64,
    pub max_reduced_momentum: f64,
}

/// The template run re-done for a point particle of `mass`, starting from the
/// template's position and reduced momentum `P′ = P/m`.
pub fn scenario_for_mass(template: &GravityScenario, mass: f64, mode: ScalingMode) -> Result<GravityScenario> {
    let particle = single_particle(template)?;
    let spec = match mode {
        ScalingMode::Fixed => particle.spec.clone(),
        ScalingMode::MassScaled => {
            MassScalingRule::from_particle(&particle.spec, particle.mass).spec_for_mass(&particle.spec, mass)?
        }
    };
    let init = &template.initial;
    let reduced = init.p[0] / particle.mass;
    let mut scenario = template.clone();
    scenario.system = ParticleSystem::new(vec![Particle { mass, spec }])?;
    scenario.initial = PhaseState::single(init.x[0], reduced * mass, init.t);
    scenario.validate()?;
    Ok(scenario)
}

fn single_particle(template: &GravityScenario) -> Result<&Particle> {
    if template.system.len() != 1 || template.body_mode.is_some() {
        return Err(invalid(
            "system",
            "equivalence-principle runs take a single point particle as template",
        ));
    }
    Ok(&template.system.particles()[0])
}

/// Integrates the template once per mass (concurrently) and compares every pair.
pub fn wep_deviation(template: &GravityScenario, masses: &[f64], mode: ScalingMode) -> Result<WepDeviation> {
    single_particle(template)?;
    if masses.is_empty() {
        return Err(invalid("masses", "at least one mass is required"));
    }
    let scenarios = masses
        .iter()
        .map(|&m| scenario_for_mass(template, m, mode))
        .collect::<Result<Vec<_>>>()?;
    let trajectories: Vec<Trajectory> = thread::scope(|scope| {
        let handles: Vec<_> = scenarios.iter().map(|s| scope.spawn(move || integrate(s))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("integration thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut pairs = Vec::new();
    for a in 0..masses.len() {
        for b in a + 1..masses.len() {
            let (ta, tb) = (&trajectories[a], &trajectories[b]);
            pairs.push(WepPair {
                masses: [masses[a], masses[b]],
                position: ta.max_position_deviation(tb)?,
                reduced_momentum: ta.max_reduced_momentum_deviation(tb)?,
                final_position: (ta.final_state().x[0] - tb.final_state().x[0]).norm(),
            });
        }
    }
    Ok(WepDeviation {
        mode,
        max_position: pairs.iter().map(|p| p.position).fold(0.0, f64::max),
        max_reduced_momentum: pairs.iter().map(|p| p.reduced_momentum).fold(0.0, f64::max),
        pairs,
    })
}
