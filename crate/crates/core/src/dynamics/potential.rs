use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Closest approach to a Newtonian source before evaluation fails.
pub const NEWTONIAN_R_MIN: f64 = 1e-9;

/// Highest total degree accepted in a polynomial potential.
pub const MAX_POLYNOMIAL_DEGREE: u32 = 4;

/// `c · X1^p1 · X2^p2 · X3^p3`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coefficient: f64,
    pub powers: [u32; 3],
}

impl Monomial {
    fn value(&self, x: &Vector3<f64>) -> f64 {
        self.coefficient * (0..3).map(|i| x[i].powi(self.powers[i] as i32)).product::<f64>()
    }

    fn derivative(&self, x: &Vector3<f64>, axis: usize) -> f64 {
        let n = self.powers[axis];
        if n == 0 {
            return 0.0;
        }
        let rest: f64 = (0..3)
            .filter(|&i| i != axis)
            .map(|i| x[i].powi(self.powers[i] as i32))
            .product();
        self.coefficient * n as f64 * x[axis].powi(n as i32 - 1) * rest
    }
}

/// Gravitational potential per unit mass, `V(X1, X2, X3)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Potential {
    /// `V = g·X`
    Uniform {
        g: Vector3<f64>,
    },
    /// `V = −GM/|X − center|`
    Newtonian {
        source_strength: f64,
        center: Vector3<f64>,
    },
    Polynomial {
        terms: Vec<Monomial>,
    },
}

impl Potential {
    pub fn validate(&self) -> Result<()> {
        match self {
            Potential::Uniform { g } => {
                if !g.iter().all(|v| v.is_finite()) {
                    return Err(invalid("potential.g", "must be finite"));
                }
            }
            Potential::Newtonian {
                source_strength,
                center,
            } => {
                if !(source_strength.is_finite() && *source_strength > 0.0) {
                    return Err(invalid(
                        "potential.source_strength",
                        format!("must be finite and positive, got {source_strength}"),
                    ));
                }
                if !center.iter().all(|v| v.is_finite()) {
                    return Err(invalid("potential.center", "must be finite"));
                }
            }
            Potential::Polynomial { terms } => {
                for (n, term) in terms.iter().enumerate() {
                    let field = format!("potential.terms[{}]", n + 1);
                    if !term.coefficient.is_finite() {
                        return Err(invalid(format!("{field}.coefficient"), "must be finite"));
                    }
                    let degree: u32 = term.powers.iter().sum();
                    if degree > MAX_POLYNOMIAL_DEGREE {
                        return Err(invalid(
                            format!("{field}.powers"),
                            format!("total degree {degree} exceeds {MAX_POLYNOMIAL_DEGREE}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn newtonian_offset(center: &Vector3<f64>, x: &Vector3<f64>) -> Result<(Vector3<f64>, f64)> {
        let d = x - center;
        let r = d.norm();
        if r.is_nan() || r < NEWTONIAN_R_MIN {
            return Err(Error::Singularity {
                distance: r,
                r_min: NEWTONIAN_R_MIN,
            });
        }
        Ok((d, r))
    }

    pub fn value(&self, x: &Vector3<f64>) -> Result<f64> {
        match self {
            Potential::Uniform { g } => Ok(g.dot(x)),
            Potential::Newtonian {
                source_strength,
                center,
            } => {
                let (_, r) = Self::newtonian_offset(center, x)?;
                Ok(-source_strength / r)
            }
            Potential::Polynomial { terms } => Ok(terms.iter().map(|t| t.value(x)).sum()),
        }
    }

    /// `∂V/∂Xi`
    pub fn gradient(&self, x: &Vector3<f64>) -> Result<Vector3<f64>> {
        match self {
            Potential::Uniform { g } => Ok(*g),
            Potential::Newtonian {
                source_strength,
                center,
            } => {
                let (d, r) = Self::newtonian_offset(center, x)?;
                Ok(d * (source_strength / (r * r * r)))
            }
            Potential::Polynomial { terms } => {
                Ok(Vector3::from_fn(|i, _| terms.iter().map(|t| t.derivative(x, i)).sum()))
            }
        }
    }

    /// Isotropic harmonic well `V = ½ω²|X|²`.
    pub fn harmonic(omega: f64) -> Self {
        let c = 0.5 * omega * omega;
        Potential::Polynomial {
            terms: (0..3)
                .map(|i| {
                    let mut powers = [0; 3];
                    powers[i] = 2;
                    Monomial { coefficient: c, powers }
                })
                .collect(),
        }
    }
}
