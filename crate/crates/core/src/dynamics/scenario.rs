use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::potential::Potential;
use crate::algebra::PhaseState;
use crate::composition::{com_transform, ParticleSystem};
use crate::error::{invalid, Result};

/// Fixed-step time grid `t0, t0 + dt, …` up to `t_end`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t0: f64,
    pub t_end: f64,
    pub dt: f64,
}

impl TimeGrid {
    pub fn new(t0: f64, t_end: f64, dt: f64) -> Result<Self> {
        let grid = TimeGrid { t0, t_end, dt };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t0.is_finite() {
            return Err(invalid("grid.t0", "must be finite"));
        }
        if !(self.t_end.is_finite() && self.t_end > self.t0) {
            return Err(invalid(
                "grid.t_end",
                format!("must be finite and greater than t0 = {}, got {}", self.t0, self.t_end),
            ));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(invalid(
                "grid.dt",
                format!("must be finite and positive, got {}", self.dt),
            ));
        }
        Ok(())
    }

    /// Number of steps, `floor((t_end − t0)/dt)`. A ratio within 1e−9 of an
    /// integer counts as that integer so that e.g. `1/1e−3` gives 1000 steps.
    pub fn steps(&self) -> usize {
        let ratio = (self.t_end - self.t0) / self.dt;
        (ratio + 1e-9 * ratio.max(1.0)).floor() as usize
    }

    pub fn samples(&self) -> usize {
        self.steps() + 1
    }

    pub fn time(&self, step: usize) -> f64 {
        self.t0 + step as f64 * self.dt
    }

    pub fn with_dt(&self, dt: f64) -> Self {
        TimeGrid { dt, ..*self }
    }
}

/// Composite-body integration of the center of mass alone.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyMode {
    /// Accept dropping the relative motion where it does not decouple exactly.
    #[serde(default)]
    pub neglect_relative_motion: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GravityScenario {
    pub system: ParticleSystem,
    pub potential: Potential,
    /// One state per particle. In body mode a single state is read as the
    /// center-of-mass state directly.
    pub initial: PhaseState,
    pub grid: TimeGrid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body_mode: Option<BodyMode>,
}

impl GravityScenario {
    pub fn new(system: ParticleSystem, potential: Potential, initial: PhaseState, grid: TimeGrid) -> Result<Self> {
        let scenario = GravityScenario {
            system,
            potential,
            initial,
            grid,
            body_mode: None,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// A composite body whose center of mass is integrated alone. `initial`
    /// holds either every particle's state or the center-of-mass state.
    pub fn body(
        system: ParticleSystem,
        potential: Potential,
        initial: PhaseState,
        grid: TimeGrid,
        mode: BodyMode,
    ) -> Result<Self> {
        let scenario = GravityScenario {
            system,
            potential,
            initial,
            grid,
            body_mode: Some(mode),
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn with_body_mode(mut self, mode: BodyMode) -> Result<Self> {
        self.body_mode = Some(mode);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.potential.validate()?;
        self.initial.validate()?;
        if self.initial.t != self.grid.t0 {
            return Err(invalid(
                "initial.t",
                format!("initial time {} differs from t0 = {}", self.initial.t, self.grid.t0),
            ));
        }
        let n = self.system.len();
        let ok = self.initial.len() == n || (self.body_mode.is_some() && self.initial.len() == 1);
        if !ok {
            return Err(invalid(
                "initial",
                format!("{} particle states for a system of {n}", self.initial.len()),
            ));
        }
        Ok(())
    }

    /// Initial center-of-mass state for body mode.
    pub fn body_initial(&self) -> Result<PhaseState> {
        if self.initial.len() == self.system.len() {
            Ok(com_transform(&self.system, &self.initial)?.com_state(self.initial.t))
        } else {
            Ok(self.initial.clone())
        }
    }

    /// SHA-256 of the scenario's canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("scenario serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}
