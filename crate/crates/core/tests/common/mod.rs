//! Random systems and states shared by the integration tests.
#![allow(dead_code)]

use nalgebra::Vector3;
use ncphase_core::algebra::{AlgebraKind, AlgebraSpec, Axis, GeneralizedParams, PhaseState};
use ncphase_core::composition::{MassScalingRule, ParticleSystem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn axes3(rng: &mut impl Rng) -> [Axis; 3] {
    let mut a = Axis::ALL;
    a.shuffle(rng);
    a
}

fn param(rng: &mut impl Rng) -> f64 {
    rng.random_range(0.5..3.0)
}

fn small(rng: &mut impl Rng, scale: f64) -> f64 {
    rng.random_range(-scale..scale)
}

/// Antisymmetric `θ⁰`, `θ` and unconstrained `θ̄`, `θ̃` with entries below `scale`.
pub fn generalized(rng: &mut impl Rng, scale: f64) -> GeneralizedParams {
    let mut g = GeneralizedParams::default();
    for i in 0..3 {
        for j in 0..3 {
            if i < j {
                let v = small(rng, scale);
                g.theta0[i][j] = v;
                g.theta0[j][i] = -v;
                for k in 0..3 {
                    let v = small(rng, scale);
                    g.theta[k][i][j] = v;
                    g.theta[k][j][i] = -v;
                }
            }
            for k in 0..3 {
                g.theta_bar[k][i][j] = small(rng, scale);
                g.theta_tilde[k][i][j] = small(rng, scale);
            }
        }
    }
    g
}

/// One random parameter set of the given variant.
pub fn spec(rng: &mut impl Rng, kind: AlgebraKind) -> AlgebraSpec {
    let [k, l, gamma] = axes3(rng);
    match kind {
        AlgebraKind::Canonical => AlgebraSpec::Canonical,
        AlgebraKind::SpaceTime => AlgebraSpec::SpaceTime {
            kappa: param(rng),
            rho: k,
            tau: l,
        },
        AlgebraKind::SpaceSpace => AlgebraSpec::SpaceSpace {
            kappa_tilde: param(rng),
            k,
            l,
            gamma,
        },
        AlgebraKind::MiaoTypeI => AlgebraSpec::MiaoTypeI {
            kappa: param(rng),
            kappa_tilde: param(rng),
            k,
            l,
            gamma,
        },
        AlgebraKind::MiaoTypeII => AlgebraSpec::MiaoTypeII {
            kappa: param(rng),
            kappa_tilde: param(rng),
            kappa_bar: param(rng),
            k,
            l,
            gamma,
        },
        AlgebraKind::Generalized => AlgebraSpec::Generalized(generalized(rng, 0.5)),
    }
}

/// Same variant and axes as `template`, fresh parameters.
pub fn respec(rng: &mut impl Rng, template: &AlgebraSpec) -> AlgebraSpec {
    let mut s = spec(rng, template.kind());
    match (&mut s, template) {
        (AlgebraSpec::SpaceTime { rho, tau, .. }, AlgebraSpec::SpaceTime { rho: r, tau: t, .. }) => {
            *rho = *r;
            *tau = *t;
        }
        (
            AlgebraSpec::SpaceSpace { k, l, gamma, .. },
            AlgebraSpec::SpaceSpace {
                k: a, l: b, gamma: c, ..
            },
        )
        | (
            AlgebraSpec::MiaoTypeI { k, l, gamma, .. },
            AlgebraSpec::MiaoTypeI {
                k: a, l: b, gamma: c, ..
            },
        )
        | (
            AlgebraSpec::MiaoTypeII { k, l, gamma, .. },
            AlgebraSpec::MiaoTypeII {
                k: a, l: b, gamma: c, ..
            },
        ) => {
            *k = *a;
            *l = *b;
            *gamma = *c;
        }
        _ => {}
    }
    s
}

pub fn masses(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.2..5.0)).collect()
}

/// Independent parameters per particle (no mass scaling).
pub fn unscaled_system(rng: &mut impl Rng, kind: AlgebraKind, n: usize) -> ParticleSystem {
    let first = spec(rng, kind);
    let ms = masses(rng, n);
    let specs: Vec<AlgebraSpec> = (0..n)
        .map(|a| if a == 0 { first.clone() } else { respec(rng, &first) })
        .collect();
    ParticleSystem::new(
        ms.into_iter()
            .zip(specs)
            .map(|(mass, spec)| ncphase_core::composition::Particle { mass, spec })
            .collect(),
    )
    .unwrap()
}

/// Parameters following one random mass-scaling rule.
pub fn scaled_system(rng: &mut impl Rng, kind: AlgebraKind, n: usize) -> ParticleSystem {
    let template = spec(rng, kind);
    let rule = MassScalingRule::from_particle(&template, 1.0);
    let ms = masses(rng, n);
    ParticleSystem::from_masses(&ms, |m| rule.spec_for_mass(&template, m).unwrap()).unwrap()
}

pub fn vec3(rng: &mut impl Rng, scale: f64) -> Vector3<f64> {
    Vector3::from_fn(|_, _| small(rng, scale))
}

pub fn state(rng: &mut impl Rng, n: usize) -> PhaseState {
    PhaseState::new(
        (0..n).map(|_| vec3(rng, 2.0)).collect(),
        (0..n).map(|_| vec3(rng, 2.0)).collect(),
        rng.random_range(0.0..3.0),
    )
    .unwrap()
}

/// The five named variants with printed bracket tables.
pub const NAMED: [AlgebraKind; 5] = [
    AlgebraKind::Canonical,
    AlgebraKind::SpaceTime,
    AlgebraKind::SpaceSpace,
    AlgebraKind::MiaoTypeI,
    AlgebraKind::MiaoTypeII,
];
