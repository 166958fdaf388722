use std::io::{self, Write};

use nalgebra::DVector;
use serde::Serialize;

use super::rhs::Flow;
use super::scenario::GravityScenario;
use crate::algebra::PhaseState;
use crate::error::{Error, Result};

pub const INTEGRATOR: &str = "rk4";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryMeta {
    pub scenario_hash: String,
    pub integrator: &'static str,
    pub dt: f64,
    /// Mass of every integrated particle; a single total mass in body mode.
    pub masses: Vec<f64>,
    pub body_mode: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<PhaseState>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn final_state(&self) -> &PhaseState {
        self.samples.last().expect("trajectories hold the initial sample")
    }

    /// `max_t max_a ‖Xa(t) − X′a(t)‖` over a common grid.
    pub fn max_position_deviation(&self, other: &Trajectory) -> Result<f64> {
        self.max_deviation(other, |s, a| s.x[a])
    }

    /// `max_t max_a ‖Pa/ma − P′a/m′a‖` over a common grid.
    pub fn max_reduced_momentum_deviation(&self, other: &Trajectory) -> Result<f64> {
        let (m, n) = (&self.meta.masses, &other.meta.masses);
        let mut worst = 0.0f64;
        self.check_compatible(other)?;
        for (s, o) in self.samples.iter().zip(&other.samples) {
            for a in 0..s.len() {
                worst = worst.max((s.p[a] / m[a] - o.p[a] / n[a]).norm());
            }
        }
        Ok(worst)
    }

    fn check_compatible(&self, other: &Trajectory) -> Result<()> {
        if self.samples.len() != other.samples.len() {
            return Err(crate::error::invalid(
                "trajectory",
                format!("{} samples compared with {}", self.samples.len(), other.samples.len()),
            ));
        }
        if let (Some(a), Some(b)) = (self.samples.first(), other.samples.first()) {
            a.expect_len(b.len())?;
        }
        Ok(())
    }

    fn max_deviation(
        &self,
        other: &Trajectory,
        pick: impl Fn(&PhaseState, usize) -> nalgebra::Vector3<f64>,
    ) -> Result<f64> {
        self.check_compatible(other)?;
        let mut worst = 0.0f64;
        for (s, o) in self.samples.iter().zip(&other.samples) {
            for a in 0..s.len() {
                worst = worst.max((pick(s, a) - pick(o, a)).norm());
            }
        }
        Ok(worst)
    }

    /// CSV with columns `t, X1_1, X2_1, X3_1, P1_1, P2_1, P3_1, …` per particle
    /// and, when `reduced` is set, `Pr1_a, Pr2_a, Pr3_a` (`P/m`) appended.
    pub fn write_csv<W: Write>(&self, mut w: W, reduced: bool) -> io::Result<()> {
        let n = self.meta.masses.len();
        let mut header = vec!["t".to_string()];
        for a in 1..=n {
            header.extend((1..=3).map(|i| format!("X{i}_{a}")));
            header.extend((1..=3).map(|i| format!("P{i}_{a}")));
        }
        if reduced {
            for a in 1..=n {
                header.extend((1..=3).map(|i| format!("Pr{i}_{a}")));
            }
        }
        writeln!(w, "{}", header.join(","))?;
        for s in &self.samples {
            let mut row = vec![fmt(s.t)];
            for a in 0..n {
                row.extend(s.x[a].iter().map(|v| fmt(*v)));
                row.extend(s.p[a].iter().map(|v| fmt(*v)));
            }
            if reduced {
                for a in 0..n {
                    row.extend(s.p[a].iter().map(|v| fmt(v / self.meta.masses[a])));
                }
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// 17 significant digits.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn rk4_step<F>(f: &F, z: &DVector<f64>, t: f64, dt: f64) -> Result<DVector<f64>>
where
    F: Fn(&DVector<f64>, f64) -> Result<DVector<f64>>,
{
    let k1 = f(z, t)?;
    let k2 = f(&(z + &k1 * (dt / 2.0)), t + dt / 2.0)?;
    let k3 = f(&(z + &k2 * (dt / 2.0)), t + dt / 2.0)?;
    let k4 = f(&(z + &k3 * dt), t + dt)?;
    Ok(z + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0))
}

/// Fixed-step classical Runge–Kutta. In body mode only the center of mass of
/// the system is integrated.
pub fn integrate(scenario: &GravityScenario) -> Result<Trajectory> {
    scenario.validate()?;
    let (flow, initial) = match scenario.body_mode {
        Some(_) => (Flow::body(scenario)?, scenario.body_initial()?),
        None => (
            Flow::particles(&scenario.system, &scenario.potential),
            scenario.initial.clone(),
        ),
    };
    let grid = scenario.grid;
    let f = |z: &DVector<f64>, t: f64| flow.rhs(&PhaseState::from_vector(z, t));
    let mut samples = Vec::with_capacity(grid.samples());
    let mut z = initial.to_vector();
    samples.push(initial);
    for step in 1..=grid.steps() {
        let t = grid.time(step - 1);
        z = rk4_step(&f, &z, t, grid.dt).map_err(|source| Error::Integration {
            step,
            t,
            source: Box::new(source),
        })?;
        let t_next = grid.time(step);
        if !z.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite { step, t: t_next });
        }
        samples.push(PhaseState::from_vector(&z, t_next));
    }
    Ok(Trajectory {
        samples,
        meta: TrajectoryMeta {
            scenario_hash: scenario.hash(),
            integrator: INTEGRATOR,
            dt: grid.dt,
            masses: flow.masses.clone(),
            body_mode: scenario.body_mode.is_some(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergySummary {
    pub initial: f64,
    pub final_value: f64,
    /// `max_t |H(t) − H(t0)|`
    pub max_drift: f64,
}

/// Energy along a trajectory of `scenario` (the center-of-mass energy `P̃²/2M + MV(X̃)` in body mode).
pub fn energy_summary(scenario: &GravityScenario, trajectory: &Trajectory) -> Result<EnergySummary> {
    let flow = match scenario.body_mode {
        Some(_) => Flow::body(scenario)?,
        None => Flow::particles(&scenario.system, &scenario.potential),
    };
    let h0 = flow.energy(&trajectory.samples[0])?;
    let mut max_drift = 0.0f64;
    let mut last = h0;
    for s in &trajectory.samples {
        last = flow.energy(s)?;
        max_drift = max_drift.max((last - h0).abs());
    }
    Ok(EnergySummary {
        initial: h0,
        final_value: last,
        max_drift,
    })
}

/// Step-halving self-convergence of the end state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub dts: [f64; 3],
    /// `‖z(dt) − z(dt/2)‖∞` and `‖z(dt/2) − z(dt/4)‖∞`
    pub differences: [f64; 2],
    /// Ratio of the two differences; ≈ 16 for a fourth-order method.
    pub ratio: f64,
}

pub fn convergence_ratio(scenario: &GravityScenario) -> Result<ConvergenceReport> {
    let dt = scenario.grid.dt;
    let dts = [dt, dt / 2.0, dt / 4.0];
    let mut ends = Vec::with_capacity(3);
    for h in dts {
        let mut s = scenario.clone();
        s.grid = s.grid.with_dt(h);
        let traj = integrate(&s)?;
        ends.push(traj.final_state().to_vector());
    }
    let differences = [(&ends[0] - &ends[1]).amax(), (&ends[1] - &ends[2]).amax()];
    Ok(ConvergenceReport {
        dts,
        differences,
        ratio: differences[0] / differences[1],
    })
}
