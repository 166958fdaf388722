//! Scenario file schema (TOML).

use nalgebra::Vector3;
use ncphase_core::algebra::{AlgebraSpec, PhaseState};
use ncphase_core::composition::{MassScalingRule, Particle, ParticleSystem};
use ncphase_core::dynamics::{BodyMode, GravityScenario, Potential, ScalingMode, TimeGrid};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    CheckAlgebra,
    ComBrackets,
    Simulate,
    WepTest,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::CheckAlgebra => "check-algebra",
            Task::ComBrackets => "com-brackets",
            Task::Simulate => "simulate",
            Task::WepTest => "wep-test",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleEntry {
    pub mass: f64,
    /// Algebra parameters that differ from the shared `[algebra]` table.
    #[serde(default, skip_serializing_if = "toml::Table::is_empty")]
    pub overrides: toml::Table,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentumUnits {
    /// `p` holds momenta `P`.
    #[default]
    Absolute,
    /// `p` holds reduced momenta `P′ = P/m`.
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialEntry {
    pub x: Vec<[f64; 3]>,
    pub p: Vec<[f64; 3]>,
    #[serde(default)]
    pub momentum: MomentumUnits,
    /// Defaults to `grid.t0`, or 0 without a grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSelection {
    Fixed,
    MassScaled,
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> Vec<ScalingMode> {
        match self {
            ModeSelection::Fixed => vec![ScalingMode::Fixed],
            ModeSelection::MassScaled => vec![ScalingMode::MassScaled],
            ModeSelection::Both => ScalingMode::ALL.to_vec(),
        }
    }
}

/// Task options. Each task reads the subset it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Tolerance of the task's primary check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// check-algebra: random states drawn in addition to `initial`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// com-brackets: expected closure verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_closure: Option<bool>,
    /// com-brackets: expected effective κ of a space-time system.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_kappa_eff: Option<f64>,
    /// com-brackets: evaluate the center-of-mass/relative Hamiltonian bracket.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub decoupling: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_decoupled: Option<bool>,
    /// simulate: append `P/m` columns to the CSV.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reduced_momentum_columns: bool,
    /// simulate: step-halving order check.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub convergence: bool,
    /// simulate or wep-test with bodies: integrate centers of mass only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body_mode: Option<BodyMode>,
    /// wep-test: point-particle masses.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub masses: Vec<f64>,
    /// wep-test: composite bodies, each a list of particle masses.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bodies: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling_mode: Option<ModeSelection>,
    /// wep-test: expected final position deviation of the first pair in fixed mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_fixed_deviation: Option<f64>,
    /// wep-test: fixed mode must deviate by more than this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_fixed_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub task: Task,
    pub algebra: AlgebraSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub particles: Vec<ParticleEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<Potential>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<TimeGrid>,
    #[serde(default)]
    pub options: Options,
}

fn core(e: ncphase_core::Error) -> CliError {
    CliError::from(e)
}

fn field(path: &str, msg: impl Into<String>) -> CliError {
    CliError::Validation(format!("{path}: {}", msg.into()))
}

impl ScenarioFile {
    /// Parses and validates a scenario.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = toml::Deserializer::parse(text).map_err(|e| CliError::Validation(e.to_string()))?;
        let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = render_path(e.path());
            CliError::Validation(format!("{path}: {}", e.into_inner().message().trim()))
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(field(
                "schema_version",
                format!(
                    "unsupported version {} (expected {SCHEMA_VERSION})",
                    self.schema_version
                ),
            ));
        }
        self.algebra.validate().map_err(|e| prefix("algebra", e))?;
        self.system()?;
        if let Some(p) = &self.potential {
            p.validate().map_err(core)?;
        }
        if let Some(g) = &self.grid {
            g.validate().map_err(core)?;
        }
        if let Some(init) = &self.initial {
            if init.x.len() != init.p.len() {
                return Err(field(
                    "initial.p",
                    format!("{} momenta for {} positions", init.p.len(), init.x.len()),
                ));
            }
            if init.x.is_empty() {
                return Err(field("initial.x", "at least one position is required"));
            }
        }
        if let Some(tol) = self.options.tol {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(field(
                    "options.tol",
                    format!("must be finite and non-negative, got {tol}"),
                ));
            }
        }
        for (n, m) in self.options.masses.iter().enumerate() {
            if !(m.is_finite() && *m > 0.0) {
                return Err(field(
                    &format!("options.masses[{}]", n + 1),
                    format!("must be positive, got {m}"),
                ));
            }
        }
        for (b, body) in self.options.bodies.iter().enumerate() {
            if body.is_empty() {
                return Err(field(
                    &format!("options.bodies[{}]", b + 1),
                    "a body needs at least one particle",
                ));
            }
            for (n, m) in body.iter().enumerate() {
                if !(m.is_finite() && *m > 0.0) {
                    return Err(field(
                        &format!("options.bodies[{}][{}]", b + 1, n + 1),
                        format!("must be positive, got {m}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn require_potential(&self) -> Result<&Potential, CliError> {
        self.potential
            .as_ref()
            .ok_or_else(|| field("potential", format!("required by task {}", self.task.name())))
    }

    pub fn require_grid(&self) -> Result<TimeGrid, CliError> {
        self.grid
            .ok_or_else(|| field("grid", format!("required by task {}", self.task.name())))
    }

    /// Particle `n`'s parameters: the shared table with its overrides applied.
    fn particle_spec(&self, n: usize, entry: &ParticleEntry) -> Result<AlgebraSpec, CliError> {
        if entry.overrides.is_empty() {
            return Ok(self.algebra.clone());
        }
        let path = format!("particles[{}].overrides", n + 1);
        if entry.overrides.contains_key("kind") {
            return Err(field(
                &format!("{path}.kind"),
                "the algebra variant is shared by all particles",
            ));
        }
        let mut table = toml::Table::try_from(&self.algebra).expect("algebra serializes");
        for (k, v) in &entry.overrides {
            if !table.contains_key(k) {
                return Err(field(&format!("{path}.{k}"), "not a parameter of this algebra"));
            }
            table.insert(k.clone(), v.clone());
        }
        let spec: AlgebraSpec = serde_path_to_error::deserialize(toml::Value::Table(table))
            .map_err(|e| field(&format!("{path}.{}", render_path(e.path())), e.into_inner().to_string()))?;
        Ok(spec)
    }

    /// The particle system; a single unit-mass particle when `particles` is empty.
    pub fn system(&self) -> Result<ParticleSystem, CliError> {
        if self.particles.is_empty() {
            return ParticleSystem::identical(1, 1.0, self.algebra.clone()).map_err(core);
        }
        let particles = self
            .particles
            .iter()
            .enumerate()
            .map(|(n, entry)| {
                Ok(Particle {
                    mass: entry.mass,
                    spec: self.particle_spec(n, entry)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        ParticleSystem::new(particles).map_err(core)
    }

    fn initial_time(&self) -> f64 {
        self.initial
            .as_ref()
            .and_then(|i| i.t)
            .or(self.grid.map(|g| g.t0))
            .unwrap_or(0.0)
    }

    /// The initial state with momenta in absolute units, given one mass per entry.
    pub fn initial_state(&self, masses: &[f64]) -> Result<PhaseState, CliError> {
        let init = self
            .initial
            .as_ref()
            .ok_or_else(|| field("initial", format!("required by task {}", self.task.name())))?;
        if init.x.len() != masses.len() {
            return Err(field(
                "initial.x",
                format!("{} states given, {} expected", init.x.len(), masses.len()),
            ));
        }
        let scale = |a: usize| match init.momentum {
            MomentumUnits::Absolute => 1.0,
            MomentumUnits::Reduced => masses[a],
        };
        PhaseState::new(
            init.x.iter().map(|v| Vector3::from(*v)).collect(),
            init.p
                .iter()
                .enumerate()
                .map(|(a, v)| Vector3::from(*v) * scale(a))
                .collect(),
            self.initial_time(),
        )
        .map_err(|e| prefix("initial", e))
    }

    /// Particle or body scenario for `simulate`.
    pub fn gravity_scenario(&self) -> Result<GravityScenario, CliError> {
        let system = self.system()?;
        let potential = self.require_potential()?.clone();
        let grid = self.require_grid()?;
        let n_states = self.initial.as_ref().map_or(0, |i| i.x.len());
        let scenario = match self.options.body_mode {
            Some(mode) if n_states == 1 && system.len() > 1 => {
                let init = self.initial_state(&[system.total_mass()])?;
                GravityScenario::body(system, potential, init, grid, mode)
            }
            Some(mode) => {
                let init = self.initial_state(&system.masses())?;
                GravityScenario::body(system, potential, init, grid, mode)
            }
            None => {
                let init = self.initial_state(&system.masses())?;
                GravityScenario::new(system, potential, init, grid)
            }
        };
        scenario.map_err(core)
    }

    /// Single-particle template for `wep-test`: the first particle (or unit mass)
    /// with the first initial state.
    pub fn wep_template(&self) -> Result<GravityScenario, CliError> {
        let system = self.system()?;
        let particle = system.particles()[0].clone();
        let one = ParticleSystem::new(vec![particle.clone()]).map_err(core)?;
        let state = self.initial_state(&vec![particle.mass; self.initial.as_ref().map_or(1, |i| i.x.len())])?;
        if state.len() != 1 {
            return Err(field("initial.x", "wep-test takes one initial state"));
        }
        GravityScenario::new(one, self.require_potential()?.clone(), state, self.require_grid()?).map_err(core)
    }

    /// A composite body of the given particle masses for `wep-test`. Parameters
    /// follow the first particle's mass-scaling rule, or are copied unchanged in
    /// fixed mode. The initial state is the center of mass with `P̃ = M P̃′`.
    pub fn body_scenario(&self, masses: &[f64], mode: ScalingMode) -> Result<GravityScenario, CliError> {
        let template = self.wep_template()?;
        let particle = &template.system.particles()[0];
        let rule = MassScalingRule::from_particle(&particle.spec, particle.mass);
        let system = ParticleSystem::new(
            masses
                .iter()
                .map(|&mass| {
                    let spec = match mode {
                        ScalingMode::Fixed => Ok(particle.spec.clone()),
                        ScalingMode::MassScaled => rule.spec_for_mass(&particle.spec, mass),
                    };
                    spec.map(|spec| Particle { mass, spec })
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(core)?,
        )
        .map_err(core)?;
        let total = system.total_mass();
        let init = &template.initial;
        let com = PhaseState::single(init.x[0], init.p[0] / particle.mass * total, init.t);
        GravityScenario::body(
            system,
            template.potential.clone(),
            com,
            template.grid,
            self.options.body_mode.unwrap_or_default(),
        )
        .map_err(core)
    }
}

/// Dotted field path with 1-based list indices, matching the validation messages.
fn render_path(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("[{}]", index + 1)),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                if !out.is_empty() {
                    out.push('.');
                }
                out.push_str(key);
            }
            Segment::Unknown => {
                if !out.is_empty() {
                    out.push('.');
                }
                out.push('?');
            }
        }
    }
    out
}

fn prefix(path: &str, e: ncphase_core::Error) -> CliError {
    match e {
        ncphase_core::Error::InvalidParameter { field: f, reason } => field(&format!("{path}.{f}"), reason),
        other => core(other),
    }
}
