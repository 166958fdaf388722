//! Phase-space functions with analytic gradients, and the bracket `{f, g} = ∇f·J·∇g`.

use nalgebra::{DMatrix, DVector};

use super::spec::AlgebraSpec;
use super::state::{p_index, x_index, PhaseState};
use super::structure::structure_matrix;
use crate::error::{Error, Result};

/// A smooth function of the flattened phase vector.
pub trait Observable {
    fn value(&self, z: &DVector<f64>) -> Result<f64>;
    fn gradient(&self, z: &DVector<f64>) -> Result<DVector<f64>>;
}

/// `f(z) = c·z + offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Linear {
    pub coeffs: DVector<f64>,
    pub offset: f64,
}

impl Linear {
    pub fn new(coeffs: DVector<f64>) -> Self {
        Linear { coeffs, offset: 0.0 }
    }

    pub fn position(n_particles: usize, a: usize, i: usize) -> Self {
        Self::unit(n_particles, x_index(a, i))
    }

    pub fn momentum(n_particles: usize, a: usize, i: usize) -> Self {
        Self::unit(n_particles, p_index(a, i))
    }

    fn unit(n_particles: usize, index: usize) -> Self {
        let mut c = DVector::zeros(6 * n_particles);
        c[index] = 1.0;
        Linear::new(c)
    }

    /// Center-of-mass coordinate `X̃i = Σ μa Xi⁽ᵃ⁾`.
    pub fn com_position(mu: &[f64], i: usize) -> Self {
        let mut c = DVector::zeros(6 * mu.len());
        for (a, m) in mu.iter().enumerate() {
            c[x_index(a, i)] = *m;
        }
        Linear::new(c)
    }

    /// Total momentum `P̃i = Σ Pi⁽ᵃ⁾`.
    pub fn com_momentum(n_particles: usize, i: usize) -> Self {
        let mut c = DVector::zeros(6 * n_particles);
        for a in 0..n_particles {
            c[p_index(a, i)] = 1.0;
        }
        Linear::new(c)
    }

    /// Relative coordinate `ΔXi⁽ᵃ⁾ = Xi⁽ᵃ⁾ − X̃i`.
    pub fn relative_position(mu: &[f64], a: usize, i: usize) -> Self {
        let mut f = Self::com_position(mu, i);
        f.coeffs.neg_mut();
        f.coeffs[x_index(a, i)] += 1.0;
        f
    }

    /// Relative momentum `ΔPi⁽ᵃ⁾ = Pi⁽ᵃ⁾ − μa P̃i`.
    pub fn relative_momentum(mu: &[f64], a: usize, i: usize) -> Self {
        let mut f = Self::com_momentum(mu.len(), i);
        f.coeffs *= -mu[a];
        f.coeffs[p_index(a, i)] += 1.0;
        f
    }

    pub fn plus(mut self, other: &Linear) -> Self {
        self.coeffs += &other.coeffs;
        self.offset += other.offset;
        self
    }
}

impl Observable for Linear {
    fn value(&self, z: &DVector<f64>) -> Result<f64> {
        check_dim(self.coeffs.len(), z)?;
        Ok(self.coeffs.dot(z) + self.offset)
    }

    fn gradient(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.coeffs.len(), z)?;
        Ok(self.coeffs.clone())
    }
}

fn check_dim(expected: usize, z: &DVector<f64>) -> Result<()> {
    if expected != z.len() {
        return Err(Error::Gradient(format!(
            "observable defined on dimension {expected}, evaluated on {}",
            z.len()
        )));
    }
    Ok(())
}

/// `Σ wk ℓk(z)²` for linear `ℓk`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub terms: Vec<(f64, Linear)>,
}

impl Observable for Quadratic {
    fn value(&self, z: &DVector<f64>) -> Result<f64> {
        self.terms.iter().try_fold(0.0, |acc, (w, l)| {
            let v = l.value(z)?;
            Ok(acc + w * v * v)
        })
    }

    fn gradient(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        let mut g = DVector::zeros(z.len());
        for (w, l) in &self.terms {
            let v = l.value(z)?;
            g.axpy(2.0 * w * v, &l.gradient(z)?, 1.0);
        }
        Ok(g)
    }
}

/// Pointwise product `f·g`.
pub struct Product<'a>(pub &'a dyn Observable, pub &'a dyn Observable);

impl Observable for Product<'_> {
    fn value(&self, z: &DVector<f64>) -> Result<f64> {
        Ok(self.0.value(z)? * self.1.value(z)?)
    }

    fn gradient(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        let (f, g) = (self.0.value(z)?, self.1.value(z)?);
        Ok(self.0.gradient(z)? * g + self.1.gradient(z)? * f)
    }
}

/// Pointwise sum of observables.
pub struct Sum<'a>(pub Vec<&'a dyn Observable>);

impl Observable for Sum<'_> {
    fn value(&self, z: &DVector<f64>) -> Result<f64> {
        self.0.iter().try_fold(0.0, |acc, f| Ok(acc + f.value(z)?))
    }

    fn gradient(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        let mut g = DVector::zeros(z.len());
        for f in &self.0 {
            g += f.gradient(z)?;
        }
        Ok(g)
    }
}

/// User-supplied function with its gradient.
pub struct FnObservable<F, G> {
    pub value: F,
    pub gradient: G,
}

impl<F, G> Observable for FnObservable<F, G>
where
    F: Fn(&DVector<f64>) -> Result<f64>,
    G: Fn(&DVector<f64>) -> Result<DVector<f64>>,
{
    fn value(&self, z: &DVector<f64>) -> Result<f64> {
        (self.value)(z)
    }

    fn gradient(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        (self.gradient)(z)
    }
}

/// `{f, g}` at `state` for one algebra per particle.
pub fn bracket(f: &dyn Observable, g: &dyn Observable, specs: &[AlgebraSpec], state: &PhaseState) -> Result<f64> {
    let j = structure_matrix(specs, state)?;
    bracket_with(j.matrix(), f, g, &state.to_vector())
}

/// `{f, g}` for a precomputed structure matrix.
pub fn bracket_with(j: &DMatrix<f64>, f: &dyn Observable, g: &dyn Observable, z: &DVector<f64>) -> Result<f64> {
    let df = f.gradient(z)?;
    let dg = g.gradient(z)?;
    Ok(linear_bracket(j, &df, &dg))
}

/// `cᵀ J d` for two gradient vectors.
pub fn linear_bracket(j: &DMatrix<f64>, c: &DVector<f64>, d: &DVector<f64>) -> f64 {
    c.dot(&(j * d))
}
