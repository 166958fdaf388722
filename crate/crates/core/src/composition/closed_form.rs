//! Closed-form center-of-mass brackets, written out per algebra family.
//!
//! These formulas expand the composite variables by bilinearity directly from
//! the per-particle tables; they never touch the structure matrix and serve as
//! the reference for the chain-rule evaluation in [`super::report`].

use nalgebra::Matrix3;

use super::report::BracketLabel;
use super::system::ParticleSystem;
use crate::algebra::{generalized_params, AlgebraSpec, Axis, PhaseState};

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// `δiρ δjτ − δiτ δjρ`
fn epsilon(rho: Axis, tau: Axis, i: usize, j: usize) -> f64 {
    let (r, t) = (rho.index(), tau.index());
    delta(i, r) * delta(j, t) - delta(i, t) * delta(j, r)
}

pub(crate) struct ClosedForms<'a> {
    system: &'a ParticleSystem,
    state: &'a PhaseState,
    mu: Vec<f64>,
    /// Per-particle `{Xi, Xj}`.
    xx: Vec<Matrix3<f64>>,
    /// Per-particle `{Xi, Pj}`.
    xp: Vec<Matrix3<f64>>,
}

impl<'a> ClosedForms<'a> {
    pub(crate) fn new(system: &'a ParticleSystem, state: &'a PhaseState) -> Self {
        let mut xx = Vec::with_capacity(system.len());
        let mut xp = Vec::with_capacity(system.len());
        for (a, particle) in system.particles().iter().enumerate() {
            let g = generalized_params(&particle.spec);
            let (x, p, t) = (&state.x[a], &state.p[a], state.t);
            xx.push(Matrix3::from_fn(|i, j| {
                g.theta0[i][j] * t + (0..3).map(|k| g.theta[k][i][j] * x[k]).sum::<f64>()
            }));
            xp.push(Matrix3::from_fn(|i, j| {
                delta(i, j)
                    + (0..3)
                        .map(|k| g.theta_bar[k][i][j] * x[k] + g.theta_tilde[k][i][j] * p[k])
                        .sum::<f64>()
            }));
        }
        ClosedForms {
            system,
            state,
            mu: system.mass_fractions(),
            xx,
            xp,
        }
    }

    pub(crate) fn value(&self, label: &BracketLabel) -> f64 {
        match &self.system.particles()[0].spec {
            AlgebraSpec::SpaceTime { rho, tau, .. } => self.space_time(*rho, *tau, label),
            AlgebraSpec::SpaceSpace { k, l, gamma, .. } => self
                .space_space(*k, *l, *gamma, label)
                .unwrap_or_else(|| self.expansion(label)),
            _ => self.expansion(label),
        }
    }

    fn kappas(&self) -> Vec<f64> {
        self.system
            .particles()
            .iter()
            .map(|p| match p.spec {
                AlgebraSpec::SpaceTime { kappa, .. } => kappa,
                AlgebraSpec::SpaceSpace { kappa_tilde, .. } => kappa_tilde,
                _ => unreachable!("kappa requested for a tensor algebra"),
            })
            .collect()
    }

    fn space_time(&self, rho: Axis, tau: Axis, label: &BracketLabel) -> f64 {
        let mu = &self.mu;
        let kappa = self.kappas();
        let t = self.state.t;
        let s: f64 = mu.iter().zip(&kappa).map(|(m, k)| m * m / k).sum();
        let eps = |i: usize, j: usize| epsilon(rho, tau, i, j);
        use BracketLabel::*;
        match *label {
            ComCom { i, j } => t * s * eps(i, j),
            ComComMomentum { i, j } => delta(i, j),
            RelRel { a, i, b, j } => t * (delta(a, b) / kappa[a] - mu[a] / kappa[a] - mu[b] / kappa[b] + s) * eps(i, j),
            RelRelMomentum { a, i, b, j } => delta(i, j) * (delta(a, b) - mu[b]),
            RelCom { a, i, j } => t * (mu[a] / kappa[a] - s) * eps(i, j),
            MomentumMomentum { .. } | RelMomRelMom { .. } | ComMomRel { .. } | RelMomCom { .. } => 0.0,
        }
    }

    /// Tables printed for the space-space algebra; `None` where only the
    /// generic expansion applies.
    fn space_space(&self, k: Axis, l: Axis, gamma: Axis, label: &BracketLabel) -> Option<f64> {
        let mu = &self.mu;
        let kt = self.kappas();
        let (x, p) = (&self.state.x, &self.state.p);
        let (k, l, g) = (k.index(), l.index(), gamma.index());
        let n = mu.len();
        let sum_mu2_x = |axis: usize| (0..n).map(|b| mu[b] * mu[b] * x[b][axis] / kt[b]).sum::<f64>();
        let sum_mu_p = |axis: usize| (0..n).map(|b| mu[b] * p[b][axis] / kt[b]).sum::<f64>();
        // Signed pattern of the rotation generated by Xγ: +1 on (k, γ), −1 on (l, γ).
        let oriented = |i: usize, j: usize, on_k: f64, on_l: f64| -> f64 {
            if (i, j) == (k, g) {
                on_k
            } else if (i, j) == (l, g) {
                on_l
            } else if (i, j) == (g, k) {
                -on_k
            } else if (i, j) == (g, l) {
                -on_l
            } else {
                0.0
            }
        };
        use BracketLabel::*;
        let v = match *label {
            ComCom { i, j } => oriented(i, j, sum_mu2_x(l), -sum_mu2_x(k)),
            // {P̃k, X̃γ} = Σ μa Pl/κ̃a, {P̃l, X̃γ} = −Σ μa Pk/κ̃a
            ComComMomentum { i, j } => {
                if (i, j) == (g, k) {
                    -sum_mu_p(l)
                } else if (i, j) == (g, l) {
                    sum_mu_p(k)
                } else {
                    delta(i, j)
                }
            }
            MomentumMomentum { .. } => 0.0,
            RelCom { a, i, j } => {
                let ck = mu[a] * x[a][l] / kt[a] - sum_mu2_x(l);
                let cl = -(mu[a] * x[a][k] / kt[a] - sum_mu2_x(k));
                oriented(i, j, ck, cl)
            }
            // {P̃k, ΔXγ} = Pl⁽ᵃ⁾/κ̃a − Σ μb Pl/κ̃b, {P̃l, ΔXγ} = −(Pk⁽ᵃ⁾/κ̃a − Σ μb Pk/κ̃b)
            ComMomRel { i, a, j } => {
                if (i, j) == (k, g) {
                    p[a][l] / kt[a] - sum_mu_p(l)
                } else if (i, j) == (l, g) {
                    -(p[a][k] / kt[a] - sum_mu_p(k))
                } else {
                    0.0
                }
            }
            RelMomCom { a, i, j } => {
                if (i, j) == (k, g) {
                    mu[a] * (p[a][l] / kt[a] - sum_mu_p(l))
                } else if (i, j) == (l, g) {
                    -mu[a] * (p[a][k] / kt[a] - sum_mu_p(k))
                } else {
                    0.0
                }
            }
            _ => return None,
        };
        Some(v)
    }

    /// Bilinear expansion of the composite variables over the particle tables.
    fn expansion(&self, label: &BracketLabel) -> f64 {
        let mu = &self.mu;
        let (xx, xp) = (&self.xx, &self.xp);
        let sum_xx = |i: usize, j: usize| (0..mu.len()).map(|c| mu[c] * mu[c] * xx[c][(i, j)]).sum::<f64>();
        let sum_xp = |i: usize, j: usize| (0..mu.len()).map(|c| mu[c] * xp[c][(i, j)]).sum::<f64>();
        use BracketLabel::*;
        match *label {
            ComCom { i, j } => sum_xx(i, j),
            ComComMomentum { i, j } => sum_xp(i, j),
            MomentumMomentum { .. } | RelMomRelMom { .. } => 0.0,
            RelRel { a, i, b, j } => {
                delta(a, b) * xx[a][(i, j)] - mu[b] * xx[b][(i, j)] - mu[a] * xx[a][(i, j)] + sum_xx(i, j)
            }
            RelRelMomentum { a, i, b, j } => {
                delta(a, b) * xp[a][(i, j)] - mu[b] * xp[a][(i, j)] - mu[b] * xp[b][(i, j)] + mu[b] * sum_xp(i, j)
            }
            RelCom { a, i, j } => mu[a] * xx[a][(i, j)] - sum_xx(i, j),
            ComMomRel { i, a, j } => -xp[a][(j, i)] + sum_xp(j, i),
            RelMomCom { a, i, j } => -mu[a] * xp[a][(j, i)] + mu[a] * sum_xp(j, i),
        }
    }
}
