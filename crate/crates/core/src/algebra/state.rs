use nalgebra::{DVector, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Number of phase coordinates per particle: `(X1, X2, X3, P1, P2, P3)`.
pub const PARTICLE_DIM: usize = 6;

/// Positions and momenta of every particle at time `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub x: Vec<Vector3<f64>>,
    pub p: Vec<Vector3<f64>>,
    pub t: f64,
}

impl PhaseState {
    pub fn new(x: Vec<Vector3<f64>>, p: Vec<Vector3<f64>>, t: f64) -> Result<Self> {
        let state = PhaseState { x, p, t };
        state.validate()?;
        Ok(state)
    }

    pub fn single(x: Vector3<f64>, p: Vector3<f64>, t: f64) -> Self {
        PhaseState {
            x: vec![x],
            p: vec![p],
            t,
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn dim(&self) -> usize {
        PARTICLE_DIM * self.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.len() != self.p.len() {
            return Err(invalid(
                "p",
                format!("{} momenta for {} positions", self.p.len(), self.x.len()),
            ));
        }
        if !self.t.is_finite() {
            return Err(invalid("t", "time is not finite"));
        }
        let finite = |v: &Vector3<f64>| v.iter().all(|c| c.is_finite());
        if let Some(a) = self.x.iter().position(|v| !finite(v)) {
            return Err(invalid(format!("x[{}]", a + 1), "non-finite coordinate"));
        }
        if let Some(a) = self.p.iter().position(|v| !finite(v)) {
            return Err(invalid(format!("p[{}]", a + 1), "non-finite momentum"));
        }
        Ok(())
    }

    pub(crate) fn expect_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// Flattened phase vector `z`, particle by particle, `(X1..X3, P1..P3)` each.
    pub fn to_vector(&self) -> DVector<f64> {
        let mut z = DVector::zeros(self.dim());
        for (a, (x, p)) in self.x.iter().zip(&self.p).enumerate() {
            z.fixed_rows_mut::<3>(PARTICLE_DIM * a).copy_from(x);
            z.fixed_rows_mut::<3>(PARTICLE_DIM * a + 3).copy_from(p);
        }
        z
    }

    pub fn from_vector(z: &DVector<f64>, t: f64) -> Self {
        let n = z.len() / PARTICLE_DIM;
        let x = (0..n)
            .map(|a| z.fixed_rows::<3>(PARTICLE_DIM * a).into_owned())
            .collect();
        let p = (0..n)
            .map(|a| z.fixed_rows::<3>(PARTICLE_DIM * a + 3).into_owned())
            .collect();
        PhaseState { x, p, t }
    }
}

/// Index of `X_i` of particle `a` in the flattened phase vector.
pub fn x_index(a: usize, i: usize) -> usize {
    PARTICLE_DIM * a + i
}

/// Index of `P_i` of particle `a` in the flattened phase vector.
pub fn p_index(a: usize, i: usize) -> usize {
    PARTICLE_DIM * a + 3 + i
}
