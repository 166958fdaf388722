use serde::Serialize;

use super::report::{composite_bracket, BracketLabel};
use super::scaling::{effective_parameters, EffectiveParameters};
use super::system::{com_transform, ParticleSystem};
use crate::algebra::{
    generalized_params, particle_brackets, structure_matrix, AlgebraSpec, GeneralizedParams, PhaseState,
};
use crate::error::{Error, Result};

/// Absolute tolerance for declaring the center-of-mass algebra closed.
pub const CLOSURE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureReport {
    pub closes: bool,
    pub max_abs_diff: f64,
    /// Single-particle algebra the center-of-mass brackets were compared with.
    pub reference: AlgebraSpec,
    /// `reference` is the effective algebra; otherwise it is the
    /// composition-weighted candidate used when no effective algebra exists.
    pub effective: bool,
}

/// Compares the center-of-mass brackets with the single-particle table of the
/// effective algebra evaluated at `(X̃, P̃, t)`.
///
/// Systems without effective parameters are compared against the
/// composition-weighted candidate (`1/κ = Σ μa²/κa` for coordinate terms,
/// `Σ μa θa` for mixed terms), which closes only in degenerate states.
pub fn reproduction_check(system: &ParticleSystem, state: &PhaseState) -> Result<ClosureReport> {
    let (reference, effective) = match effective_parameters(system) {
        Ok(EffectiveParameters { spec, .. }) => (spec, true),
        Err(Error::ScalingRequired(_)) => (candidate(system), false),
        Err(e) => return Err(e),
    };
    let com = com_transform(system, state)?;
    let table = particle_brackets(&reference, &com.x_com, &com.p_com, state.t);
    let j = structure_matrix(&system.specs(), state)?.into_matrix();
    let mu = system.mass_fractions();
    let mut worst = 0.0f64;
    for i in 0..3 {
        for jj in 0..3 {
            let xx = composite_bracket(&j, &mu, &BracketLabel::ComCom { i, j: jj });
            let xp = composite_bracket(&j, &mu, &BracketLabel::ComComMomentum { i, j: jj });
            let pp = composite_bracket(&j, &mu, &BracketLabel::MomentumMomentum { i, j: jj });
            worst = worst
                .max((xx - table.xx[(i, jj)]).abs())
                .max((xp - table.xp[(i, jj)]).abs())
                .max(pp.abs());
        }
    }
    Ok(ClosureReport {
        closes: worst <= CLOSURE_TOL,
        max_abs_diff: worst,
        reference,
        effective,
    })
}

fn candidate(system: &ParticleSystem) -> AlgebraSpec {
    let mu = system.mass_fractions();
    let mut g = GeneralizedParams::default();
    for (p, m) in system.particles().iter().zip(&mu) {
        let pg = generalized_params(&p.spec);
        for i in 0..3 {
            for j in 0..3 {
                g.theta0[i][j] += m * m * pg.theta0[i][j];
                for k in 0..3 {
                    g.theta[k][i][j] += m * m * pg.theta[k][i][j];
                    g.theta_bar[k][i][j] += m * pg.theta_bar[k][i][j];
                    g.theta_tilde[k][i][j] += m * pg.theta_tilde[k][i][j];
                }
            }
        }
    }
    AlgebraSpec::Generalized(g)
}

/// Size of the brackets linking center-of-mass and relative variables.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingReport {
    /// `max |{ΔXi⁽ᵃ⁾, X̃j}|`
    pub relative_com: f64,
    /// `max |{P̃i, ΔXj⁽ᵃ⁾}|`
    pub momentum_relative: f64,
    /// `max |{ΔPi⁽ᵃ⁾, X̃j}|`
    pub relative_momentum_com: f64,
}

impl CouplingReport {
    pub fn max(&self) -> f64 {
        self.relative_com
            .max(self.momentum_relative)
            .max(self.relative_momentum_com)
    }
}

pub fn com_relative_coupling(system: &ParticleSystem, state: &PhaseState) -> Result<CouplingReport> {
    let j = structure_matrix(&system.specs(), state)?.into_matrix();
    let mu = system.mass_fractions();
    let mut report = CouplingReport {
        relative_com: 0.0,
        momentum_relative: 0.0,
        relative_momentum_com: 0.0,
    };
    for a in 0..system.len() {
        for i in 0..3 {
            for jj in 0..3 {
                let b = |label| composite_bracket(&j, &mu, &label).abs();
                report.relative_com = report.relative_com.max(b(BracketLabel::RelCom { a, i, j: jj }));
                report.momentum_relative = report.momentum_relative.max(b(BracketLabel::ComMomRel { i, a, j: jj }));
                report.relative_momentum_com =
                    report
                        .relative_momentum_com
                        .max(b(BracketLabel::RelMomCom { a, i, j: jj }));
            }
        }
    }
    Ok(report)
}
