//! Mass scaling of deformation parameters and the effective center-of-mass algebra.

use serde::{Deserialize, Serialize};

use super::system::ParticleSystem;
use crate::algebra::{generalized_params, AlgebraKind, AlgebraSpec, GeneralizedParams, Tensor2, Tensor3};
use crate::error::{invalid, Error, Result};

/// Relative tolerance used when a scaling verdict gates an operation.
pub const SCALING_TOL: f64 = 1e-12;

/// Mass-independent constants from which every particle's parameters follow:
/// `κa = γκ·ma` for the κ-type parameters, `θa = γ/ma` for the tensors, and
/// shared values for `κ̄` and `θ̄`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum MassScalingRule {
    Canonical,
    SpaceTime {
        gamma_kappa: f64,
    },
    SpaceSpace {
        gamma_kappa_tilde: f64,
    },
    Generalized {
        gamma0: Tensor2,
        gamma: Tensor3,
        gamma_tilde: Tensor3,
        theta_bar: Tensor3,
    },
    MiaoTypeI {
        gamma_kappa: f64,
        gamma_kappa_tilde: f64,
    },
    #[serde(rename = "miao-type-ii")]
    MiaoTypeII {
        gamma_kappa: f64,
        gamma_kappa_tilde: f64,
        kappa_bar: f64,
    },
}

impl MassScalingRule {
    /// The rule a single particle defines by itself.
    pub fn from_particle(spec: &AlgebraSpec, mass: f64) -> Self {
        let scaled = scaled_values(spec, mass);
        rule_from(spec, &scaled)
    }

    /// Parameters of a particle of `mass` under this rule. Axes are taken
    /// from `template`, which must be of the matching variant.
    pub fn spec_for_mass(&self, template: &AlgebraSpec, mass: f64) -> Result<AlgebraSpec> {
        let spec = match (self, template) {
            (MassScalingRule::Canonical, AlgebraSpec::Canonical) => AlgebraSpec::Canonical,
            (MassScalingRule::SpaceTime { gamma_kappa }, AlgebraSpec::SpaceTime { rho, tau, .. }) => {
                AlgebraSpec::SpaceTime {
                    kappa: gamma_kappa * mass,
                    rho: *rho,
                    tau: *tau,
                }
            }
            (MassScalingRule::SpaceSpace { gamma_kappa_tilde }, AlgebraSpec::SpaceSpace { k, l, gamma, .. }) => {
                AlgebraSpec::SpaceSpace {
                    kappa_tilde: gamma_kappa_tilde * mass,
                    k: *k,
                    l: *l,
                    gamma: *gamma,
                }
            }
            (
                MassScalingRule::MiaoTypeI {
                    gamma_kappa,
                    gamma_kappa_tilde,
                },
                AlgebraSpec::MiaoTypeI { k, l, gamma, .. },
            ) => AlgebraSpec::MiaoTypeI {
                kappa: gamma_kappa * mass,
                kappa_tilde: gamma_kappa_tilde * mass,
                k: *k,
                l: *l,
                gamma: *gamma,
            },
            (
                MassScalingRule::MiaoTypeII {
                    gamma_kappa,
                    gamma_kappa_tilde,
                    kappa_bar,
                },
                AlgebraSpec::MiaoTypeII { k, l, gamma, .. },
            ) => AlgebraSpec::MiaoTypeII {
                kappa: gamma_kappa * mass,
                kappa_tilde: gamma_kappa_tilde * mass,
                kappa_bar: *kappa_bar,
                k: *k,
                l: *l,
                gamma: *gamma,
            },
            (
                MassScalingRule::Generalized {
                    gamma0,
                    gamma,
                    gamma_tilde,
                    theta_bar,
                },
                AlgebraSpec::Generalized(_),
            ) => AlgebraSpec::Generalized(GeneralizedParams {
                theta0: map2(gamma0, |v| v / mass),
                theta: map3(gamma, |v| v / mass),
                theta_bar: *theta_bar,
                theta_tilde: map3(gamma_tilde, |v| v / mass),
            }),
            _ => {
                return Err(Error::UnsupportedAlgebra {
                    expected: self.kind().to_string(),
                    found: template.kind().to_string(),
                })
            }
        };
        Ok(spec)
    }

    pub fn kind(&self) -> AlgebraKind {
        match self {
            MassScalingRule::Canonical => AlgebraKind::Canonical,
            MassScalingRule::SpaceTime { .. } => AlgebraKind::SpaceTime,
            MassScalingRule::SpaceSpace { .. } => AlgebraKind::SpaceSpace,
            MassScalingRule::Generalized { .. } => AlgebraKind::Generalized,
            MassScalingRule::MiaoTypeI { .. } => AlgebraKind::MiaoTypeI,
            MassScalingRule::MiaoTypeII { .. } => AlgebraKind::MiaoTypeII,
        }
    }
}

fn map2(t: &Tensor2, f: impl Fn(f64) -> f64) -> Tensor2 {
    t.map(|row| row.map(&f))
}

fn map3(t: &Tensor3, f: impl Fn(f64) -> f64) -> Tensor3 {
    t.map(|slice| slice.map(|row| row.map(&f)))
}

/// One particle's parameters in mass-independent form. `scaled` entries must
/// agree across particles up to the tolerance; so must `shared` entries,
/// which are not divided by mass.
struct ScaledValues {
    scaled: Vec<f64>,
    shared: Vec<f64>,
}

fn flatten3(t: &Tensor3) -> impl Iterator<Item = f64> + '_ {
    t.iter().flatten().flatten().copied()
}

fn scaled_values(spec: &AlgebraSpec, mass: f64) -> ScaledValues {
    let (scaled, shared) = match spec {
        AlgebraSpec::Canonical => (vec![], vec![]),
        AlgebraSpec::SpaceTime { kappa, .. } => (vec![kappa / mass], vec![]),
        AlgebraSpec::SpaceSpace { kappa_tilde, .. } => (vec![kappa_tilde / mass], vec![]),
        AlgebraSpec::MiaoTypeI { kappa, kappa_tilde, .. } => (vec![kappa / mass, kappa_tilde / mass], vec![]),
        AlgebraSpec::MiaoTypeII {
            kappa,
            kappa_tilde,
            kappa_bar,
            ..
        } => (vec![kappa / mass, kappa_tilde / mass], vec![*kappa_bar]),
        AlgebraSpec::Generalized(g) => {
            let scaled = g
                .theta0
                .iter()
                .flatten()
                .copied()
                .chain(flatten3(&g.theta))
                .chain(flatten3(&g.theta_tilde))
                .map(|v| v * mass)
                .collect();
            (scaled, flatten3(&g.theta_bar).collect())
        }
    };
    ScaledValues { scaled, shared }
}

fn rule_from(spec: &AlgebraSpec, v: &ScaledValues) -> MassScalingRule {
    match spec {
        AlgebraSpec::Canonical => MassScalingRule::Canonical,
        AlgebraSpec::SpaceTime { .. } => MassScalingRule::SpaceTime {
            gamma_kappa: v.scaled[0],
        },
        AlgebraSpec::SpaceSpace { .. } => MassScalingRule::SpaceSpace {
            gamma_kappa_tilde: v.scaled[0],
        },
        AlgebraSpec::MiaoTypeI { .. } => MassScalingRule::MiaoTypeI {
            gamma_kappa: v.scaled[0],
            gamma_kappa_tilde: v.scaled[1],
        },
        AlgebraSpec::MiaoTypeII { .. } => MassScalingRule::MiaoTypeII {
            gamma_kappa: v.scaled[0],
            gamma_kappa_tilde: v.scaled[1],
            kappa_bar: v.shared[0],
        },
        AlgebraSpec::Generalized(_) => {
            let s = &v.scaled;
            let mut gamma0 = [[0.0; 3]; 3];
            let mut gamma = [[[0.0; 3]; 3]; 3];
            let mut gamma_tilde = [[[0.0; 3]; 3]; 3];
            let mut theta_bar = [[[0.0; 3]; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    gamma0[i][j] = s[3 * i + j];
                    for k in 0..3 {
                        gamma[k][i][j] = s[9 + 9 * k + 3 * i + j];
                        gamma_tilde[k][i][j] = s[36 + 9 * k + 3 * i + j];
                        theta_bar[k][i][j] = v.shared[9 * k + 3 * i + j];
                    }
                }
            }
            MassScalingRule::Generalized {
                gamma0,
                gamma,
                gamma_tilde,
                theta_bar,
            }
        }
    }
}

/// Outcome of [`satisfies_mass_scaling`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingCheck {
    pub holds: bool,
    /// Consensus constants (mass-weighted means); present when `holds`.
    pub rule: Option<MassScalingRule>,
    /// Largest pairwise disagreement between particles: relative
    /// `|sa − sb| / |sb|` for nonzero values, absolute otherwise.
    pub worst_relative_deviation: f64,
}

fn spread(values: &[f64]) -> f64 {
    let any_zero = values.contains(&0.0);
    let mut worst = 0.0f64;
    for a in values {
        for b in values {
            let d = (a - b).abs();
            worst = worst.max(if any_zero { d } else { d / b.abs() });
        }
    }
    worst
}

/// Tests whether every particle's parameters follow one mass-scaling rule.
pub fn satisfies_mass_scaling(system: &ParticleSystem, tol: f64) -> Result<ScalingCheck> {
    if tol.is_nan() || tol < 0.0 {
        return Err(invalid("tol", format!("must be non-negative, got {tol}")));
    }
    let per_particle: Vec<ScaledValues> = system
        .particles()
        .iter()
        .map(|p| scaled_values(&p.spec, p.mass))
        .collect();
    let mu = system.mass_fractions();
    let n_scaled = per_particle[0].scaled.len();
    let n_shared = per_particle[0].shared.len();
    let mut worst = 0.0f64;
    let mut consensus = ScaledValues {
        scaled: vec![0.0; n_scaled],
        shared: vec![0.0; n_shared],
    };
    for c in 0..n_scaled {
        let column: Vec<f64> = per_particle.iter().map(|v| v.scaled[c]).collect();
        worst = worst.max(spread(&column));
        consensus.scaled[c] = weighted_mean(&column, &mu);
    }
    for c in 0..n_shared {
        let column: Vec<f64> = per_particle.iter().map(|v| v.shared[c]).collect();
        worst = worst.max(spread(&column));
        consensus.shared[c] = weighted_mean(&column, &mu);
    }
    let holds = worst <= tol;
    Ok(ScalingCheck {
        holds,
        rule: holds.then(|| rule_from(&system.particles()[0].spec, &consensus)),
        worst_relative_deviation: worst,
    })
}

fn weighted_mean(values: &[f64], mu: &[f64]) -> f64 {
    // Identical values come back unchanged, which keeps exact rules exact.
    if values.iter().all(|v| *v == values[0]) {
        return values[0];
    }
    values.iter().zip(mu).map(|(v, m)| v * m).sum()
}

/// Effective single-particle algebra of a system's center of mass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParameters {
    pub spec: AlgebraSpec,
    /// The effective algebra closes, but its parameters depend on how the
    /// total mass is distributed among the particles (no mass scaling).
    pub composition_dependent: bool,
}

/// Parameters of the center-of-mass algebra.
///
/// The space-time algebra (and a generalized algebra with only `θ⁰` and a
/// common `θ̄`) always closes with `1/κ_eff = Σ μa²/κa`. Every state-dependent
/// deformation only closes when the parameters obey a mass-scaling rule, in
/// which case `κ_eff = γκ M` and `θ_eff = γ/M`.
pub fn effective_parameters(system: &ParticleSystem) -> Result<EffectiveParameters> {
    let mu = system.mass_fractions();
    let total = system.total_mass();
    let check = satisfies_mass_scaling(system, SCALING_TOL)?;
    let first = &system.particles()[0].spec;
    let scaled = |what: &str| -> Result<MassScalingRule> {
        check.rule.clone().ok_or_else(|| {
            Error::ScalingRequired(format!(
                "{what} parameters deviate from mass scaling by {:e}",
                check.worst_relative_deviation
            ))
        })
    };
    let spec = match first {
        AlgebraSpec::Canonical => AlgebraSpec::Canonical,
        AlgebraSpec::SpaceTime { rho, tau, .. } => {
            let inv: f64 = system
                .particles()
                .iter()
                .zip(&mu)
                .map(|(p, m)| match p.spec {
                    AlgebraSpec::SpaceTime { kappa, .. } => m * m / kappa,
                    _ => unreachable!("system variants are uniform"),
                })
                .sum();
            AlgebraSpec::SpaceTime {
                kappa: 1.0 / inv,
                rho: *rho,
                tau: *tau,
            }
        }
        AlgebraSpec::Generalized(_) if time_only(system) => {
            let mut g = GeneralizedParams::default();
            for (p, m) in system.particles().iter().zip(&mu) {
                let pg = generalized_params(&p.spec);
                for i in 0..3 {
                    for j in 0..3 {
                        g.theta0[i][j] += m * m * pg.theta0[i][j];
                    }
                }
            }
            g.theta_bar = generalized_params(first).theta_bar;
            AlgebraSpec::Generalized(g)
        }
        AlgebraSpec::Generalized(_) => scaled("generalized")?.spec_for_mass(first, total)?,
        other => scaled(other.kind().name())?.spec_for_mass(first, total)?,
    };
    Ok(EffectiveParameters {
        spec,
        composition_dependent: !check.holds,
    })
}

/// Generalized system whose only mass-dependent tensor is `θ⁰` and whose `θ̄` is shared.
fn time_only(system: &ParticleSystem) -> bool {
    let first_bar = generalized_params(&system.particles()[0].spec).theta_bar;
    system.particles().iter().all(|p| {
        let g = generalized_params(&p.spec);
        flatten3(&g.theta).all(|v| v == 0.0) && flatten3(&g.theta_tilde).all(|v| v == 0.0) && g.theta_bar == first_bar
    })
}
