//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::Vector3;
use ncphase_core::algebra::{jacobi_residual, AlgebraKind, AlgebraSpec, Axis, GeneralizedParams, PhaseState};
use ncphase_core::composition::{
    com_bracket_report, effective_parameters, reproduction_check, MassScalingRule, ParticleSystem,
};
use ncphase_core::dynamics::{
    closed_form_eom, decoupling_check, eom_rhs, integrate, wep_deviation, BodyMode, GravityScenario, Potential,
    ScalingMode, TimeGrid,
};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn st(kappa: f64) -> AlgebraSpec {
    AlgebraSpec::SpaceTime {
        kappa,
        rho: Axis::X1,
        tau: Axis::X2,
    }
}

fn uniform(g: [f64; 3]) -> Potential {
    Potential::Uniform { g: Vector3::from(g) }
}

fn jacobi_suite() -> Outcome {
    let mut rng = common::rng(1);
    let mut worst = 0.0f64;
    for kind in common::NAMED {
        for _ in 0..100 {
            let spec = common::spec(&mut rng, kind);
            let s = common::state(&mut rng, 1);
            worst = worst.max(jacobi_residual(&[spec], &s, 1e-5).map_err(|e| e.to_string())?);
        }
    }
    let mut g = GeneralizedParams::default();
    g.theta[0][1][2] = 1.0;
    g.theta[0][2][1] = -1.0;
    g.theta_bar[1][0][2] = 1.0;
    g.theta_bar[1][2][0] = -1.0;
    let s = PhaseState::single(Vector3::new(1.0, 1.0, 1.0), Vector3::new(1.0, 1.0, 1.0), 0.0);
    let bad = jacobi_residual(&[AlgebraSpec::Generalized(g)], &s, 1e-5).map_err(|e| e.to_string())?;
    check(
        worst <= 1e-10 && bad > 1e-2,
        format!("max residual over 500 states {worst:.3e}; unconstrained tensors {bad:.3e}"),
    )
}

fn com_oracle() -> Outcome {
    let mut rng = common::rng(2);
    let mut worst = 0.0f64;
    let mut count = 0;
    for kind in AlgebraKind::ALL {
        for _ in 0..200 {
            let n = rng.random_range(1..=5);
            let sys = if rng.random_bool(0.5) {
                common::scaled_system(&mut rng, kind, n)
            } else {
                common::unscaled_system(&mut rng, kind, n)
            };
            let s = common::state(&mut rng, n);
            let r = com_bracket_report(&sys, &s).map_err(|e| e.to_string())?;
            worst = worst.max(r.max_abs_diff);
            count += r.entries.len();
        }
    }
    check(
        worst <= 1e-12,
        format!("{count} brackets over 1200 systems, max |chain rule − closed form| {worst:.3e}"),
    )
}

fn effective_laws() -> Outcome {
    let mut rng = common::rng(3);
    let mut worst_inv = 0.0f64;
    for _ in 0..200 {
        let n = rng.random_range(1..=5);
        let sys = common::unscaled_system(&mut rng, AlgebraKind::SpaceTime, n);
        let mu = sys.mass_fractions();
        let expected: f64 = sys
            .particles()
            .iter()
            .zip(&mu)
            .map(|(p, m)| match p.spec {
                AlgebraSpec::SpaceTime { kappa, .. } => m * m / kappa,
                _ => unreachable!(),
            })
            .sum();
        let eff = effective_parameters(&sys).map_err(|e| e.to_string())?;
        let AlgebraSpec::SpaceTime { kappa, .. } = eff.spec else {
            return Err("space-time system lost its variant".into());
        };
        worst_inv = worst_inv.max((1.0 / kappa - expected).abs());
    }
    let mut worst_n = 0.0f64;
    for n in 1..=8 {
        let sys = ParticleSystem::identical(n, 1.3, st(0.7)).map_err(|e| e.to_string())?;
        let AlgebraSpec::SpaceTime { kappa, .. } = effective_parameters(&sys).map_err(|e| e.to_string())?.spec else {
            unreachable!()
        };
        worst_n = worst_n.max((kappa - n as f64 * 0.7).abs() / (n as f64 * 0.7));
    }
    let gamma = 1.7;
    let ms = [1.0, 2.5, 4.0];
    let sys = ParticleSystem::from_masses(&ms, |m| st(gamma * m)).map_err(|e| e.to_string())?;
    let AlgebraSpec::SpaceTime { kappa, .. } = effective_parameters(&sys).map_err(|e| e.to_string())?.spec else {
        unreachable!()
    };
    let scaled_err = (kappa - gamma * 7.5).abs() / (gamma * 7.5);
    let template = AlgebraSpec::Generalized(common::generalized(&mut rng, 0.8));
    let rule = MassScalingRule::from_particle(&template, 1.0);
    let sys =
        ParticleSystem::from_masses(&ms, |m| rule.spec_for_mass(&template, m).unwrap()).map_err(|e| e.to_string())?;
    let eff = effective_parameters(&sys).map_err(|e| e.to_string())?.spec;
    let (AlgebraSpec::Generalized(e), AlgebraSpec::Generalized(t)) = (&eff, &template) else {
        unreachable!()
    };
    let mut tensor_err = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            tensor_err = tensor_err.max((e.theta0[i][j] - t.theta0[i][j] / 7.5).abs());
            for k in 0..3 {
                tensor_err = tensor_err
                    .max((e.theta[k][i][j] - t.theta[k][i][j] / 7.5).abs())
                    .max((e.theta_tilde[k][i][j] - t.theta_tilde[k][i][j] / 7.5).abs())
                    .max((e.theta_bar[k][i][j] - t.theta_bar[k][i][j]).abs());
            }
        }
    }
    check(
        worst_inv <= 1e-14 && worst_n <= 1e-14 && scaled_err <= 1e-14 && tensor_err <= 1e-14,
        format!(
            "|1/κ_eff − Σμ²/κ| {worst_inv:.3e}; N identical rel err {worst_n:.3e}; γM rel err {scaled_err:.3e}; γ/M tensors {tensor_err:.3e}"
        ),
    )
}

fn closure_under_scaling() -> Outcome {
    let mut rng = common::rng(4);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for kind in AlgebraKind::ALL {
        for _ in 0..100 {
            let n = rng.random_range(1..=5);
            let sys = common::scaled_system(&mut rng, kind, n);
            let r = reproduction_check(&sys, &common::state(&mut rng, n)).map_err(|e| e.to_string())?;
            worst = worst.max(r.max_abs_diff);
            failures += usize::from(!r.closes);
        }
    }
    let mut unscaled_closed = 0;
    for _ in 0..100 {
        let n = rng.random_range(2..=5);
        let sys = common::unscaled_system(&mut rng, AlgebraKind::SpaceSpace, n);
        let r = reproduction_check(&sys, &common::state(&mut rng, n)).map_err(|e| e.to_string())?;
        unscaled_closed += usize::from(r.closes);
    }
    check(
        failures == 0 && worst <= 1e-12 && unscaled_closed == 0,
        format!(
            "scaled: {failures} of 600 open, max diff {worst:.3e}; unscaled space-space: {unscaled_closed} of 100 closed"
        ),
    )
}

fn decoupling() -> Outcome {
    let mut rng = common::rng(5);
    let field = uniform([0.0, 1.0, 0.0]);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=5);
        let sys = common::scaled_system(&mut rng, AlgebraKind::SpaceTime, n);
        let pot = uniform(common::vec3(&mut rng, 2.0).into());
        worst = worst.max(decoupling_check(&sys, &pot, &common::state(&mut rng, n)).map_err(|e| e.to_string())?);
    }
    let sys = ParticleSystem::from_masses(&[1.0, 2.0], |_| st(1.0)).map_err(|e| e.to_string())?;
    let s = PhaseState::new(
        vec![Vector3::new(0.5, -0.3, 0.2), Vector3::new(-1.0, 0.8, 0.4)],
        vec![Vector3::new(0.2, 0.1, 0.0), Vector3::new(-0.4, 0.3, 0.6)],
        1.0,
    )
    .map_err(|e| e.to_string())?;
    let coupled = decoupling_check(&sys, &field, &s).map_err(|e| e.to_string())?;
    check(
        worst <= 1e-12 && coupled > 1e-6,
        format!("scaled max {worst:.3e}; unscaled κ=(1,1), m=(1,2): {coupled:.3e}"),
    )
}

fn eom_oracle() -> Outcome {
    let mut rng = common::rng(6);
    let mut worst = 0.0f64;
    for kind in AlgebraKind::ALL {
        for step in 0..500 {
            let sys = ParticleSystem::identical(1, rng.random_range(0.2..5.0), common::spec(&mut rng, kind))
                .map_err(|e| e.to_string())?;
            let pot = match step % 3 {
                0 => uniform(common::vec3(&mut rng, 2.0).into()),
                1 => Potential::Newtonian {
                    source_strength: rng.random_range(0.5..3.0),
                    center: Vector3::new(0.0, -6.0, 0.0),
                },
                _ => Potential::harmonic(rng.random_range(0.5..2.0)),
            };
            let s = common::state(&mut rng, 1);
            let scenario = GravityScenario::new(
                sys.clone(),
                pot.clone(),
                s.clone(),
                TimeGrid::new(s.t, s.t + 1.0, 0.1).unwrap(),
            )
            .map_err(|e| e.to_string())?;
            let a = eom_rhs(&scenario, &s).map_err(|e| e.to_string())?;
            let b = closed_form_eom(&sys, &pot, &s).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).amax());
        }
    }
    check(
        worst <= 1e-12,
        format!("3000 states over six variants, max |J∇H − closed form| {worst:.3e}"),
    )
}

fn wep_template(spec: AlgebraSpec, pot: Potential) -> GravityScenario {
    GravityScenario::new(
        ParticleSystem::identical(1, 1.0, spec).unwrap(),
        pot,
        PhaseState::single(Vector3::new(0.3, 0.5, -0.2), Vector3::new(0.4, -0.1, 0.2), 0.0),
        TimeGrid::new(0.0, 1.0, 1e-3).unwrap(),
    )
    .unwrap()
}

fn wep_recovery() -> Outcome {
    let mut rng = common::rng(7);
    let potentials = [
        uniform([0.0, 1.0, 0.0]),
        Potential::Newtonian {
            source_strength: 2.0,
            center: Vector3::new(0.0, -5.0, 0.0),
        },
    ];
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for kind in AlgebraKind::ALL {
        let spec = match kind {
            AlgebraKind::Generalized => AlgebraSpec::Generalized(common::generalized(&mut rng, 0.2)),
            _ => common::spec(&mut rng, kind),
        };
        for pot in &potentials {
            let d = wep_deviation(
                &wep_template(spec.clone(), pot.clone()),
                &[1.0, 2.0, 5.0, 10.0],
                ScalingMode::MassScaled,
            )
            .map_err(|e| e.to_string())?;
            worst = worst.max(d.max_position);
        }
        lines.push(kind.name());
    }
    check(
        worst <= 1e-8,
        format!(
            "{} × uniform/newtonian, masses (1,2,5,10): max position deviation {worst:.3e}",
            lines.join("/")
        ),
    )
}

fn wep_violation() -> Outcome {
    let d = wep_deviation(&wep_template_rest(), &[1.0, 2.0], ScalingMode::Fixed).map_err(|e| e.to_string())?;
    let dev = d.pairs[0].final_position;
    check(
        (dev - 0.5).abs() <= 1e-8,
        format!("X1 deviation at t = 1: {dev:.12} (expected 0.5)"),
    )
}

fn wep_template_rest() -> GravityScenario {
    GravityScenario::new(
        ParticleSystem::identical(1, 1.0, st(1.0)).unwrap(),
        uniform([0.0, 1.0, 0.0]),
        PhaseState::single(Vector3::zeros(), Vector3::zeros(), 0.0),
        TimeGrid::new(0.0, 1.0, 1e-3).unwrap(),
    )
    .unwrap()
}

fn body(masses: &[f64], spec_for: impl Fn(f64) -> AlgebraSpec) -> GravityScenario {
    let sys = ParticleSystem::from_masses(masses, spec_for).unwrap();
    let n = masses.len();
    // Same center of mass (0.2, 0.1, 0) and total momentum for every partition.
    let total: f64 = masses.iter().sum();
    let x: Vec<Vector3<f64>> = (0..n)
        .map(|a| Vector3::new(0.2, 0.1, 0.0) + Vector3::new(1.0, -1.0, 0.5) * (a as f64 - (n as f64 - 1.0) / 2.0))
        .collect();
    let x_com: Vector3<f64> = x.iter().zip(masses).map(|(x, m)| x * (m / total)).sum();
    let x: Vec<Vector3<f64>> = x.iter().map(|v| v - x_com + Vector3::new(0.2, 0.1, 0.0)).collect();
    let p: Vec<Vector3<f64>> = masses.iter().map(|m| Vector3::new(0.3, 0.2, -0.1) * *m).collect();
    GravityScenario::new(
        sys,
        uniform([0.0, 1.0, 0.0]),
        PhaseState::new(x, p, 0.0).unwrap(),
        TimeGrid::new(0.0, 1.0, 1e-3).unwrap(),
    )
    .unwrap()
}

fn composition() -> Outcome {
    let gamma = 0.8;
    let exact = BodyMode::default();
    let a = body(&[1.0, 3.0], |m| st(gamma * m))
        .with_body_mode(exact)
        .map_err(|e| e.to_string())?;
    let b = body(&[2.0, 2.0], |m| st(gamma * m))
        .with_body_mode(exact)
        .map_err(|e| e.to_string())?;
    let scaled = integrate(&a)
        .and_then(|ta| ta.max_position_deviation(&integrate(&b)?))
        .map_err(|e| e.to_string())?;
    let approx = BodyMode {
        neglect_relative_motion: true,
    };
    let a = body(&[1.0, 3.0], |_| st(1.0))
        .with_body_mode(approx)
        .map_err(|e| e.to_string())?;
    let b = body(&[2.0, 2.0], |_| st(1.0))
        .with_body_mode(approx)
        .map_err(|e| e.to_string())?;
    let unscaled = integrate(&a)
        .and_then(|ta| ta.max_position_deviation(&integrate(&b)?))
        .map_err(|e| e.to_string())?;
    check(
        scaled <= 1e-10 && unscaled > 1e-3,
        format!("partitions (1,3) vs (2,2): scaled {scaled:.3e}; unscaled κ=(1,1) {unscaled:.3e}"),
    )
}

/// End-state error of the canonical unit oscillator against its exact solution.
fn oscillator_error(dt: f64) -> Result<f64, String> {
    let (x0, p0) = (Vector3::new(1.0, 0.0, 0.5), Vector3::new(0.0, 1.0, -0.3));
    let s = GravityScenario::new(
        ParticleSystem::identical(1, 1.0, AlgebraSpec::Canonical).unwrap(),
        Potential::harmonic(1.0),
        PhaseState::single(x0, p0, 0.0),
        TimeGrid::new(0.0, 1.0, dt).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let end = integrate(&s).map_err(|e| e.to_string())?;
    let end = end.final_state();
    let t = end.t;
    let x = x0 * t.cos() + p0 * t.sin();
    let p = p0 * t.cos() - x0 * t.sin();
    Ok((end.x[0] - x).norm().max((end.p[0] - p).norm()))
}

fn integrator_order() -> Outcome {
    let coarse = oscillator_error(0.1)?;
    let fine = oscillator_error(0.05)?;
    let ratio = coarse / fine;
    check(
        (12.0..=20.0).contains(&ratio),
        format!("harmonic benchmark errors {coarse:.3e} (dt 0.1), {fine:.3e} (dt 0.05), ratio {ratio:.2}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("jacobi suite", jacobi_suite),
        ("center-of-mass bracket oracle", com_oracle),
        ("effective-parameter laws", effective_laws),
        ("closure under scaling", closure_under_scaling),
        ("decoupling", decoupling),
        ("equation-of-motion oracle", eom_oracle),
        ("equivalence principle recovery", wep_recovery),
        ("equivalence principle violation", wep_violation),
        ("composition independence", composition),
        ("integrator order", integrator_order),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
