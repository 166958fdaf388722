use std::path::Path;

use nalgebra::Vector3;
use ncphase_core::algebra::{jacobi_residual, structure_matrix, PhaseState, DEFAULT_FD_STEP};
use ncphase_core::composition::{
    com_bracket_report, com_relative_coupling, effective_parameters, reproduction_check, satisfies_mass_scaling,
    SCALING_TOL,
};
use ncphase_core::dynamics::{
    closed_form_eom, convergence_ratio, decoupling_check, energy_summary, eom_rhs, integrate, wep_deviation,
    ScalingMode, Trajectory,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::Check;
use crate::scenario::{ModeSelection, ScenarioFile};

/// Checks and task-specific details of one run.
pub struct Outcome {
    pub checks: Vec<Check>,
    pub details: Value,
}

pub const JACOBI_TOL: f64 = 1e-10;
pub const CLOSED_FORM_TOL: f64 = 1e-12;
pub const TRAJECTORY_TOL: f64 = 1e-8;
/// Smallest decoupling bracket counted as a genuine coupling.
pub const COUPLING_FLOOR: f64 = 1e-6;
pub const ORDER_RANGE: (f64, f64) = (12.0, 20.0);

fn random_state(rng: &mut impl Rng, n: usize) -> PhaseState {
    let mut v = || Vector3::from_fn(|_, _| rng.random_range(-2.0..2.0));
    let x = (0..n).map(|_| v()).collect();
    let p = (0..n).map(|_| v()).collect();
    PhaseState {
        x,
        p,
        t: rng.random_range(0.0..3.0),
    }
}

pub fn check_algebra(file: &ScenarioFile) -> Result<Outcome, CliError> {
    let system = file.system()?;
    let specs = system.specs();
    let mut states = Vec::new();
    if file.initial.is_some() {
        states.push(file.initial_state(&system.masses())?);
    }
    let extra = file.options.states.unwrap_or(if states.is_empty() { 100 } else { 0 });
    let mut rng = ChaCha8Rng::seed_from_u64(file.options.seed.unwrap_or(0));
    states.extend((0..extra).map(|_| random_state(&mut rng, system.len())));
    if states.is_empty() {
        return Err(CliError::Validation("options.states: no states to evaluate".into()));
    }
    let (mut antisym, mut cross, mut jacobi) = (0.0f64, 0.0f64, 0.0f64);
    for s in &states {
        let j = structure_matrix(&specs, s)?;
        antisym = antisym.max(j.antisymmetry_defect());
        cross = cross.max(j.cross_particle_max());
        jacobi = jacobi.max(jacobi_residual(&specs, s, DEFAULT_FD_STEP)?);
    }
    let tol = file.options.tol.unwrap_or(JACOBI_TOL);
    Ok(Outcome {
        checks: vec![
            Check::at_most("antisymmetry", antisym, CLOSED_FORM_TOL),
            Check::at_most("cross_particle_brackets", cross, 0.0),
            Check::at_most("jacobi_residual", jacobi, tol),
        ],
        details: json!({
            "algebra": system.kind().name(),
            "particles": system.len(),
            "states": states.len(),
            "max_antisymmetry_defect": antisym,
            "max_cross_particle_bracket": cross,
            "max_jacobi_residual": jacobi,
        }),
    })
}

pub fn com_brackets(file: &ScenarioFile) -> Result<Outcome, CliError> {
    let system = file.system()?;
    let state = file.initial_state(&system.masses())?;
    let report = com_bracket_report(&system, &state)?;
    let scaling = satisfies_mass_scaling(&system, SCALING_TOL)?;
    let effective = effective_parameters(&system);
    let closure = reproduction_check(&system, &state)?;
    let coupling = com_relative_coupling(&system, &state)?;
    let tol = file.options.tol.unwrap_or(CLOSED_FORM_TOL);
    let mut checks = vec![Check::at_most("closed_form_oracle", report.max_abs_diff, tol)];
    if let Some(expected) = file.options.expect_closure {
        checks.push(Check::equals("closure", closure.closes, expected));
    }
    if let Some(expected) = file.options.expect_kappa_eff {
        let kappa = match &effective {
            Ok(e) => match e.spec {
                ncphase_core::algebra::AlgebraSpec::SpaceTime { kappa, .. } => kappa,
                _ => f64::NAN,
            },
            Err(_) => f64::NAN,
        };
        checks.push(Check::close_to("inverse_kappa_eff", 1.0 / kappa, 1.0 / expected, 1e-14));
    }
    let mut decoupling = Value::Null;
    if file.options.decoupling {
        let value = decoupling_check(&system, file.require_potential()?, &state)?;
        decoupling = json!(value);
        match file.options.expect_decoupled {
            Some(true) => checks.push(Check::at_most("decoupling", value, CLOSED_FORM_TOL)),
            Some(false) => checks.push(Check::above("coupling", value, COUPLING_FLOOR)),
            None => {}
        }
    }
    Ok(Outcome {
        checks,
        details: json!({
            "algebra": system.kind().name(),
            "particles": system.len(),
            "mass_fractions": system.mass_fractions(),
            "scaling": scaling,
            "effective": match effective {
                Ok(e) => json!(e),
                Err(e) => json!({ "error": e.to_string() }),
            },
            "closure": closure,
            "coupling": coupling,
            "decoupling": decoupling,
            "brackets": report,
        }),
    })
}

pub fn simulate(file: &ScenarioFile, out: Option<(&Path, &str)>) -> Result<Outcome, CliError> {
    let scenario = file.gravity_scenario()?;
    let trajectory = integrate(&scenario)?;
    let energy = energy_summary(&scenario, &trajectory)?;
    let mut checks = Vec::new();
    let mut oracle = Value::Null;
    if scenario.body_mode.is_none() {
        let mut worst = 0.0f64;
        for s in &trajectory.samples {
            let a = eom_rhs(&scenario, s)?;
            let b = closed_form_eom(&scenario.system, &scenario.potential, s)?;
            worst = worst.max((a - b).amax());
        }
        oracle = json!(worst);
        checks.push(Check::at_most(
            "eom_oracle",
            worst,
            file.options.tol.unwrap_or(CLOSED_FORM_TOL),
        ));
    }
    checks.push(Check::equals("energy_finite", energy.max_drift.is_finite(), true));
    let mut convergence = Value::Null;
    if file.options.convergence {
        let c = convergence_ratio(&scenario)?;
        checks.push(Check::within(
            "convergence_ratio",
            c.ratio,
            ORDER_RANGE.0,
            ORDER_RANGE.1,
        ));
        convergence = json!(c);
    }
    let mut csv = Value::Null;
    if let Some((dir, name)) = out {
        let file_name = format!("{name}.csv");
        write_csv(
            &dir.join(&file_name),
            &trajectory,
            file.options.reduced_momentum_columns,
        )?;
        csv = json!(file_name);
    }
    let last = trajectory.final_state();
    Ok(Outcome {
        checks,
        details: json!({
            "algebra": scenario.system.kind().name(),
            "samples": trajectory.samples.len(),
            "trajectory": trajectory.meta,
            "final_state": last,
            "energy": energy,
            "eom_oracle_max_diff": oracle,
            "convergence": convergence,
            "csv": csv,
        }),
    })
}

fn write_csv(path: &Path, trajectory: &Trajectory, reduced: bool) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let file = std::fs::File::create(path).map_err(io)?;
    let mut w = std::io::BufWriter::new(file);
    trajectory.write_csv(&mut w, reduced).map_err(io)?;
    std::io::Write::flush(&mut w).map_err(io)
}

pub fn wep_test(file: &ScenarioFile) -> Result<Outcome, CliError> {
    if !file.options.bodies.is_empty() {
        return body_composition(file);
    }
    if file.options.masses.is_empty() {
        return Err(CliError::Validation("options.masses: required by task wep-test".into()));
    }
    let template = file.wep_template()?;
    let tol = file.options.tol.unwrap_or(TRAJECTORY_TOL);
    let mut checks = Vec::new();
    let mut runs = serde_json::Map::new();
    for mode in file.options.scaling_mode.unwrap_or(ModeSelection::Both).modes() {
        let d = wep_deviation(&template, &file.options.masses, mode)?;
        match mode {
            ScalingMode::MassScaled => {
                checks.push(Check::at_most("mass_scaled_position_deviation", d.max_position, tol));
                checks.push(Check::at_most(
                    "mass_scaled_reduced_momentum_deviation",
                    d.max_reduced_momentum,
                    tol,
                ));
            }
            ScalingMode::Fixed => {
                if let Some(expected) = file.options.expect_fixed_deviation {
                    let first = d.pairs.first().map_or(f64::NAN, |p| p.final_position);
                    checks.push(Check::close_to("fixed_final_deviation", first, expected, tol));
                }
                if let Some(floor) = file.options.min_fixed_deviation {
                    checks.push(Check::above("fixed_position_deviation", d.max_position, floor));
                }
            }
        }
        runs.insert(mode.name().into(), json!(d));
    }
    Ok(Outcome {
        checks,
        details: json!({
            "algebra": template.system.kind().name(),
            "masses": file.options.masses,
            "modes": runs,
        }),
    })
}

/// Center-of-mass trajectories of bodies with different partitions of their mass.
fn body_composition(file: &ScenarioFile) -> Result<Outcome, CliError> {
    let tol = file.options.tol.unwrap_or(TRAJECTORY_TOL);
    let bodies = &file.options.bodies;
    let mut checks = Vec::new();
    let mut runs = serde_json::Map::new();
    for mode in file.options.scaling_mode.unwrap_or(ModeSelection::Both).modes() {
        let scenarios = bodies
            .iter()
            .map(|masses| file.body_scenario(masses, mode))
            .collect::<Result<Vec<_>, CliError>>()?;
        let trajectories = std::thread::scope(|scope| {
            let handles: Vec<_> = scenarios.iter().map(|s| scope.spawn(move || integrate(s))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("integration thread panicked"))
                .collect::<Result<Vec<_>, _>>()
        })?;
        let mut pairs = Vec::new();
        let mut worst = 0.0f64;
        for a in 0..bodies.len() {
            for b in a + 1..bodies.len() {
                let d = trajectories[a].max_position_deviation(&trajectories[b])?;
                worst = worst.max(d);
                pairs.push(json!({ "bodies": [bodies[a], bodies[b]], "com_position": d }));
            }
        }
        match mode {
            ScalingMode::MassScaled => checks.push(Check::at_most("mass_scaled_com_deviation", worst, tol)),
            ScalingMode::Fixed => {
                if let Some(floor) = file.options.min_fixed_deviation {
                    checks.push(Check::above("fixed_com_deviation", worst, floor));
                }
            }
        }
        runs.insert(mode.name().into(), json!({ "pairs": pairs, "max_com_position": worst }));
    }
    Ok(Outcome {
        checks,
        details: json!({
            "algebra": file.algebra.kind().name(),
            "bodies": bodies,
            "modes": runs,
        }),
    })
}
