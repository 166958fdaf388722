mod common;

use nalgebra::Vector3;
use ncphase_core::algebra::{AlgebraSpec, Axis, PhaseState};
use ncphase_core::composition::{com_transform, ParticleSystem};
use ncphase_core::dynamics::{
    body_com_rhs, energy_summary, eom_rhs, integrate, BodyMode, GravityScenario, Potential, TimeGrid,
};

fn st(kappa: f64) -> AlgebraSpec {
    AlgebraSpec::SpaceTime {
        kappa,
        rho: Axis::X1,
        tau: Axis::X2,
    }
}

fn field() -> Potential {
    Potential::Uniform {
        g: Vector3::new(0.2, 1.0, -0.5),
    }
}

#[test]
fn body_rhs_equals_single_particle_of_total_mass() {
    let gamma = 1.3;
    let sys = ParticleSystem::from_masses(&[1.0, 2.0], |m| st(gamma * m)).unwrap();
    let init = PhaseState::new(
        vec![Vector3::new(0.1, 0.2, 0.3), Vector3::new(-0.4, 0.5, 0.0)],
        vec![Vector3::new(0.3, 0.0, 0.1), Vector3::new(0.6, -0.2, 0.4)],
        0.7,
    )
    .unwrap();
    let body = GravityScenario::new(
        sys.clone(),
        field(),
        init.clone(),
        TimeGrid::new(0.7, 1.7, 0.1).unwrap(),
    )
    .unwrap()
    .with_body_mode(BodyMode::default())
    .unwrap();
    let com = com_transform(&sys, &init).unwrap().com_state(init.t);
    let point = GravityScenario::new(
        ParticleSystem::identical(1, 3.0, st(gamma * 3.0)).unwrap(),
        field(),
        com.clone(),
        TimeGrid::new(0.7, 1.7, 0.1).unwrap(),
    )
    .unwrap();
    let a = body_com_rhs(&body, &com).unwrap();
    let b = eom_rhs(&point, &com).unwrap();
    assert!((a - b).amax() <= 1e-13);
}

#[test]
fn unscaled_body_velocity_depends_on_partition() {
    // Masses (1,3) give M Σ μ²/κ = 4·10/16 and (2,2) give 4·8/16.
    let com = PhaseState::single(Vector3::zeros(), Vector3::zeros(), 1.0);
    let mode = BodyMode {
        neglect_relative_motion: true,
    };
    let rhs = |masses: &[f64]| {
        let sys = ParticleSystem::from_masses(masses, |_| st(1.0)).unwrap();
        let s = GravityScenario::body(
            sys,
            Potential::Uniform {
                g: Vector3::new(0.0, 1.0, 0.0),
            },
            com.clone(),
            TimeGrid::new(1.0, 2.0, 0.1).unwrap(),
            mode,
        )
        .unwrap();
        body_com_rhs(&s, &com).unwrap()[0]
    };
    assert!((rhs(&[1.0, 3.0]) - 2.5).abs() < 1e-14);
    assert!((rhs(&[2.0, 2.0]) - 2.0).abs() < 1e-14);
}

#[test]
fn energy_is_conserved_without_explicit_time() {
    let pot = Potential::harmonic(1.0);
    for spec in [
        AlgebraSpec::Canonical,
        AlgebraSpec::SpaceSpace {
            kappa_tilde: 1.5,
            k: Axis::X1,
            l: Axis::X2,
            gamma: Axis::X3,
        },
    ] {
        let s = GravityScenario::new(
            ParticleSystem::identical(1, 2.0, spec).unwrap(),
            pot.clone(),
            PhaseState::single(Vector3::new(1.0, 0.5, -0.3), Vector3::new(0.2, 0.4, 0.1), 0.0),
            TimeGrid::new(0.0, 1.0, 1e-2).unwrap(),
        )
        .unwrap();
        let tr = integrate(&s).unwrap();
        let e = energy_summary(&s, &tr).unwrap();
        assert!(e.max_drift < 1e-8, "{e:?}");
    }
}

#[test]
fn space_time_energy_stays_finite() {
    let s = GravityScenario::new(
        ParticleSystem::identical(1, 1.0, st(0.5)).unwrap(),
        field(),
        PhaseState::single(Vector3::zeros(), Vector3::new(0.1, 0.0, 0.0), 0.0),
        TimeGrid::new(0.0, 1.0, 1e-2).unwrap(),
    )
    .unwrap();
    let tr = integrate(&s).unwrap();
    assert!(energy_summary(&s, &tr).unwrap().max_drift.is_finite());
}

#[test]
fn integration_is_deterministic() {
    let mut rng = common::rng(9);
    let mut init = common::state(&mut rng, 3);
    init.t = 0.0;
    let s = GravityScenario::new(
        common::unscaled_system(&mut rng, ncphase_core::algebra::AlgebraKind::MiaoTypeII, 3),
        Potential::harmonic(0.8),
        init,
        TimeGrid::new(0.0, 0.5, 1e-2).unwrap(),
    )
    .unwrap();
    let a = integrate(&s).unwrap();
    let b = integrate(&s).unwrap();
    assert_eq!(a, b);
    let (mut ca, mut cb) = (Vec::new(), Vec::new());
    a.write_csv(&mut ca, true).unwrap();
    b.write_csv(&mut cb, true).unwrap();
    assert_eq!(ca, cb);
}
