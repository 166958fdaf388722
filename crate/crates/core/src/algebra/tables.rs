//! Single-particle bracket tables.
//!
//! Every variant evaluates to two 3×3 blocks at a phase point: `xx[i][j] = {Xi, Xj}`
//! and `xp[i][j] = {Xi, Pj}`. The momentum block `{Pi, Pj}` vanishes for all
//! supported algebras. Parameters enter as reciprocals (`1/κ`) computed on the fly.

use nalgebra::{Matrix3, Matrix6, Vector3};

use super::spec::{AlgebraSpec, Axis, GeneralizedParams};

/// `{Xi, Xj}` and `{Xi, Pj}` of one particle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleBrackets {
    pub xx: Matrix3<f64>,
    pub xp: Matrix3<f64>,
}

impl ParticleBrackets {
    fn canonical() -> Self {
        ParticleBrackets {
            xx: Matrix3::zeros(),
            xp: Matrix3::identity(),
        }
    }

    fn set_xx(&mut self, i: Axis, j: Axis, value: f64) {
        self.xx[(i.index(), j.index())] = value;
        self.xx[(j.index(), i.index())] = -value;
    }

    /// The 6×6 block `{z_a, z_b}` in `(X1..X3, P1..P3)` order.
    pub fn block(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.xx);
        m.fixed_view_mut::<3, 3>(0, 3).copy_from(&self.xp);
        m.fixed_view_mut::<3, 3>(3, 0).copy_from(&(-self.xp.transpose()));
        m
    }
}

/// Evaluates the bracket table of `spec` at `(x, p, t)`.
pub fn particle_brackets(spec: &AlgebraSpec, x: &Vector3<f64>, p: &Vector3<f64>, t: f64) -> ParticleBrackets {
    let mut b = ParticleBrackets::canonical();
    match spec {
        AlgebraSpec::Canonical => {}
        AlgebraSpec::SpaceTime { kappa, rho, tau } => {
            b.set_xx(*rho, *tau, (1.0 / kappa) * t);
        }
        AlgebraSpec::SpaceSpace {
            kappa_tilde,
            k,
            l,
            gamma,
        } => {
            let c = 1.0 / kappa_tilde;
            rotation_terms(&mut b, c, *k, *l, *gamma, x, p);
        }
        AlgebraSpec::MiaoTypeI {
            kappa,
            kappa_tilde,
            k,
            l,
            gamma,
        } => {
            let (a, c) = (1.0 / kappa, 1.0 / kappa_tilde);
            let (ki, li) = (k.index(), l.index());
            b.set_xx(*k, *gamma, (-a) * t + c * x[li]);
            b.set_xx(*l, *gamma, a * t + (-c) * x[ki]);
            b.set_xx(*k, *l, a * t);
            let gi = gamma.index();
            b.xp[(gi, ki)] = (-c) * p[li];
            b.xp[(gi, li)] = c * p[ki];
        }
        AlgebraSpec::MiaoTypeII {
            kappa,
            kappa_tilde,
            kappa_bar,
            k,
            l,
            gamma,
        } => {
            let (a, c, e) = (1.0 / kappa, 1.0 / kappa_tilde, 1.0 / kappa_bar);
            let (ki, li, gi) = (k.index(), l.index(), gamma.index());
            b.set_xx(*k, *gamma, (-a) * t + c * x[li]);
            b.set_xx(*l, *gamma, a * t + (-c) * x[ki]);
            // {Pk, Xγ} = Xl/κ̄ + Pl/κ̃ and {Pl, Xγ} = Xk/κ̄ − Pk/κ̃, stored as {Xγ, P·}.
            b.xp[(gi, ki)] = (-e) * x[li] + (-c) * p[li];
            b.xp[(gi, li)] = (-e) * x[ki] + c * p[ki];
        }
        AlgebraSpec::Generalized(g) => return generalized_brackets(g, x, p, t),
    }
    b
}

/// `Xγ` acts as a rotation generator in the `(k, l)` plane on coordinates and momenta.
fn rotation_terms(b: &mut ParticleBrackets, c: f64, k: Axis, l: Axis, gamma: Axis, x: &Vector3<f64>, p: &Vector3<f64>) {
    let (ki, li, gi) = (k.index(), l.index(), gamma.index());
    b.set_xx(k, gamma, c * x[li]);
    b.set_xx(l, gamma, (-c) * x[ki]);
    // {Pk, Xγ} = Pl/κ̃  ⇔  {Xγ, Pk} = −Pl/κ̃
    b.xp[(gi, ki)] = (-c) * p[li];
    b.xp[(gi, li)] = c * p[ki];
}

pub(crate) fn generalized_brackets(
    g: &GeneralizedParams,
    x: &Vector3<f64>,
    p: &Vector3<f64>,
    t: f64,
) -> ParticleBrackets {
    let mut b = ParticleBrackets::canonical();
    for i in 0..3 {
        for j in 0..3 {
            let mut xx = g.theta0[i][j] * t;
            let mut xp = if i == j { 1.0 } else { 0.0 };
            for k in 0..3 {
                xx += g.theta[k][i][j] * x[k];
                xp += g.theta_bar[k][i][j] * x[k];
            }
            for k in 0..3 {
                xp += g.theta_tilde[k][i][j] * p[k];
            }
            b.xx[(i, j)] = xx;
            b.xp[(i, j)] = xp;
        }
    }
    b
}
