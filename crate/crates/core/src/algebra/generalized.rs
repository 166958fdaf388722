use super::spec::{AlgebraSpec, Axis, GeneralizedParams};

/// Re-expresses any algebra in the general tensor form.
///
/// The tensors reproduce the variant's bracket table entry for entry, including
/// floating-point rounding: every entry is the same product of a reciprocal
/// parameter with a phase coordinate.
pub fn as_generalized(spec: &AlgebraSpec) -> AlgebraSpec {
    AlgebraSpec::Generalized(generalized_params(spec))
}

/// The tensors behind [`as_generalized`].
pub fn generalized_params(spec: &AlgebraSpec) -> GeneralizedParams {
    let mut g = GeneralizedParams::default();
    match spec {
        AlgebraSpec::Canonical => {}
        AlgebraSpec::Generalized(params) => return params.clone(),
        AlgebraSpec::SpaceTime { kappa, rho, tau } => {
            set_pair(&mut g.theta0, *rho, *tau, 1.0 / kappa);
        }
        AlgebraSpec::SpaceSpace {
            kappa_tilde,
            k,
            l,
            gamma,
        } => {
            rotation_tensors(&mut g, 1.0 / kappa_tilde, *k, *l, *gamma);
        }
        AlgebraSpec::MiaoTypeI {
            kappa,
            kappa_tilde,
            k,
            l,
            gamma,
        } => {
            let a = 1.0 / kappa;
            set_pair(&mut g.theta0, *k, *gamma, -a);
            set_pair(&mut g.theta0, *l, *gamma, a);
            set_pair(&mut g.theta0, *k, *l, a);
            rotation_tensors(&mut g, 1.0 / kappa_tilde, *k, *l, *gamma);
        }
        AlgebraSpec::MiaoTypeII {
            kappa,
            kappa_tilde,
            kappa_bar,
            k,
            l,
            gamma,
        } => {
            let a = 1.0 / kappa;
            set_pair(&mut g.theta0, *k, *gamma, -a);
            set_pair(&mut g.theta0, *l, *gamma, a);
            rotation_tensors(&mut g, 1.0 / kappa_tilde, *k, *l, *gamma);
            let e = 1.0 / kappa_bar;
            let (ki, li, gi) = (k.index(), l.index(), gamma.index());
            g.theta_bar[li][gi][ki] = -e;
            g.theta_bar[ki][gi][li] = -e;
        }
    }
    g
}

fn set_pair(t: &mut [[f64; 3]; 3], i: Axis, j: Axis, value: f64) {
    t[i.index()][j.index()] = value;
    t[j.index()][i.index()] = -value;
}

fn rotation_tensors(g: &mut GeneralizedParams, c: f64, k: Axis, l: Axis, gamma: Axis) {
    let (ki, li, gi) = (k.index(), l.index(), gamma.index());
    set_pair(&mut g.theta[li], k, gamma, c);
    set_pair(&mut g.theta[ki], l, gamma, -c);
    // Mixed block only in the γ row: {Xγ, Pk} = −Pl/κ̃, {Xγ, Pl} = Pk/κ̃.
    g.theta_tilde[li][gi][ki] = -c;
    g.theta_tilde[ki][gi][li] = c;
}
