use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Rank-2 tensor `t[i][j]` over spatial indices.
pub type Tensor2 = [[f64; 3]; 3];
/// Rank-3 tensor stored as `t[k][i][j]`: upper index first, then the two lower ones.
pub type Tensor3 = [[[f64; 3]; 3]; 3];

pub const ZERO2: Tensor2 = [[0.0; 3]; 3];
pub const ZERO3: Tensor3 = [[[0.0; 3]; 3]; 3];

/// Spatial axis. Serialized and displayed 1-based (`1`, `2`, `3`), indexed 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Axis(u8);

impl Axis {
    pub const X1: Axis = Axis(0);
    pub const X2: Axis = Axis(1);
    pub const X3: Axis = Axis(2);
    pub const ALL: [Axis; 3] = [Axis::X1, Axis::X2, Axis::X3];

    /// Builds an axis from its 1-based number.
    pub fn new(number: u8) -> Result<Self> {
        match number {
            1..=3 => Ok(Axis(number - 1)),
            _ => Err(invalid("axis", format!("{number} is not in {{1,2,3}}"))),
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn number(self) -> u8 {
        self.0 + 1
    }
}

impl TryFrom<u8> for Axis {
    type Error = String;

    fn try_from(value: u8) -> std::result::Result<Self, Self::Error> {
        Axis::new(value).map_err(|e| e.to_string())
    }
}

impl From<Axis> for u8 {
    fn from(axis: Axis) -> u8 {
        axis.number()
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Deformation tensors of the general Lie-type algebra
///
/// ```text
/// {Xi, Xj} = θ⁰ij t + θᵏij Xk
/// {Xi, Pj} = δij + θ̄ᵏij Xk + θ̃ᵏij Pk
/// {Pi, Pj} = 0
/// ```
///
/// `theta0` and `theta` must be antisymmetric in `(i, j)`. `theta_bar` and
/// `theta_tilde` feed the mixed block and carry no symmetry requirement; the
/// Jacobi-consistent special cases need non-antisymmetric entries there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedParams {
    #[serde(default = "zero2")]
    pub theta0: Tensor2,
    #[serde(default = "zero3")]
    pub theta: Tensor3,
    #[serde(default = "zero3")]
    pub theta_bar: Tensor3,
    #[serde(default = "zero3")]
    pub theta_tilde: Tensor3,
}

fn zero2() -> Tensor2 {
    ZERO2
}

fn zero3() -> Tensor3 {
    ZERO3
}

impl Default for GeneralizedParams {
    fn default() -> Self {
        GeneralizedParams {
            theta0: ZERO2,
            theta: ZERO3,
            theta_bar: ZERO3,
            theta_tilde: ZERO3,
        }
    }
}

/// Which bracket algebra a particle's phase variables obey.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum AlgebraSpec {
    /// Commuting coordinates.
    Canonical,
    /// Coordinates commuting to time: `{Xρ, Xτ} = t/κ`.
    SpaceTime {
        kappa: f64,
        rho: Axis,
        tau: Axis,
    },
    /// Coordinates commuting to space: `{Xk, Xγ} = Xl/κ̃`, `{Xl, Xγ} = −Xk/κ̃`.
    SpaceSpace {
        kappa_tilde: f64,
        k: Axis,
        l: Axis,
        gamma: Axis,
    },
    Generalized(GeneralizedParams),
    /// Time- and space-type deformation together, `{Xk, Xl} = t/κ`.
    MiaoTypeI {
        kappa: f64,
        kappa_tilde: f64,
        k: Axis,
        l: Axis,
        gamma: Axis,
    },
    /// As type I without `{Xk, Xl}`, plus the coordinate term `1/κ̄` in `{P, Xγ}`.
    #[serde(rename = "miao-type-ii")]
    MiaoTypeII {
        kappa: f64,
        kappa_tilde: f64,
        kappa_bar: f64,
        k: Axis,
        l: Axis,
        gamma: Axis,
    },
}

/// Variant tag of an [`AlgebraSpec`], without parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraKind {
    Canonical,
    SpaceTime,
    SpaceSpace,
    Generalized,
    MiaoTypeI,
    #[serde(rename = "miao-type-ii")]
    MiaoTypeII,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 6] = [
        AlgebraKind::Canonical,
        AlgebraKind::SpaceTime,
        AlgebraKind::SpaceSpace,
        AlgebraKind::Generalized,
        AlgebraKind::MiaoTypeI,
        AlgebraKind::MiaoTypeII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Canonical => "canonical",
            AlgebraKind::SpaceTime => "space-time",
            AlgebraKind::SpaceSpace => "space-space",
            AlgebraKind::Generalized => "generalized",
            AlgebraKind::MiaoTypeI => "miao-type-i",
            AlgebraKind::MiaoTypeII => "miao-type-ii",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_param(field: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value == 0.0 {
        return Err(invalid(field, format!("must be finite and nonzero, got {value}")));
    }
    Ok(())
}

fn check_positive(field: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(invalid(field, format!("must be finite and positive, got {value}")));
    }
    Ok(())
}

fn check_triple(k: Axis, l: Axis, gamma: Axis) -> Result<()> {
    if k == l || k == gamma || l == gamma {
        return Err(invalid(
            "gamma",
            format!("(k, l, gamma) = ({k}, {l}, {gamma}) is not a permutation of (1, 2, 3)"),
        ));
    }
    Ok(())
}

#[allow(clippy::needless_range_loop)]
fn check_antisymmetric2(field: &str, t: &Tensor2) -> Result<()> {
    for i in 0..3 {
        for j in 0..3 {
            if !t[i][j].is_finite() {
                return Err(invalid(field, format!("entry [{i}][{j}] is not finite")));
            }
            if t[i][j] != -t[j][i] {
                return Err(invalid(field, format!("not antisymmetric at [{}][{}]", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

fn check_finite3(field: &str, t: &Tensor3) -> Result<()> {
    if t.iter().flatten().flatten().any(|v| !v.is_finite()) {
        return Err(invalid(field, "contains non-finite entries"));
    }
    Ok(())
}

impl AlgebraSpec {
    pub fn kind(&self) -> AlgebraKind {
        match self {
            AlgebraSpec::Canonical => AlgebraKind::Canonical,
            AlgebraSpec::SpaceTime { .. } => AlgebraKind::SpaceTime,
            AlgebraSpec::SpaceSpace { .. } => AlgebraKind::SpaceSpace,
            AlgebraSpec::Generalized(_) => AlgebraKind::Generalized,
            AlgebraSpec::MiaoTypeI { .. } => AlgebraKind::MiaoTypeI,
            AlgebraSpec::MiaoTypeII { .. } => AlgebraKind::MiaoTypeII,
        }
    }

    /// Checks the invariants of the variant's parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            AlgebraSpec::Canonical => Ok(()),
            AlgebraSpec::SpaceTime { kappa, rho, tau } => {
                check_positive("kappa", *kappa)?;
                if rho == tau {
                    return Err(invalid("tau", format!("must differ from rho (both are {rho})")));
                }
                Ok(())
            }
            AlgebraSpec::SpaceSpace {
                kappa_tilde,
                k,
                l,
                gamma,
            } => {
                check_param("kappa_tilde", *kappa_tilde)?;
                check_triple(*k, *l, *gamma)
            }
            AlgebraSpec::Generalized(g) => {
                check_antisymmetric2("theta0", &g.theta0)?;
                for (k, slice) in g.theta.iter().enumerate() {
                    check_antisymmetric2(&format!("theta[{}]", k + 1), slice)?;
                }
                check_finite3("theta_bar", &g.theta_bar)?;
                check_finite3("theta_tilde", &g.theta_tilde)
            }
            AlgebraSpec::MiaoTypeI {
                kappa,
                kappa_tilde,
                k,
                l,
                gamma,
            } => {
                check_param("kappa", *kappa)?;
                check_param("kappa_tilde", *kappa_tilde)?;
                check_triple(*k, *l, *gamma)
            }
            AlgebraSpec::MiaoTypeII {
                kappa,
                kappa_tilde,
                kappa_bar,
                k,
                l,
                gamma,
            } => {
                check_param("kappa", *kappa)?;
                check_param("kappa_tilde", *kappa_tilde)?;
                check_param("kappa_bar", *kappa_bar)?;
                check_triple(*k, *l, *gamma)
            }
        }
    }

    /// True when two specs differ at most in their numeric deformation
    /// parameters (same variant, same fixed axes).
    pub fn same_shape(&self, other: &AlgebraSpec) -> bool {
        use AlgebraSpec::*;
        match (self, other) {
            (Canonical, Canonical) | (Generalized(_), Generalized(_)) => true,
            (SpaceTime { rho, tau, .. }, SpaceTime { rho: r2, tau: t2, .. }) => rho == r2 && tau == t2,
            (
                SpaceSpace { k, l, gamma, .. },
                SpaceSpace {
                    k: k2,
                    l: l2,
                    gamma: g2,
                    ..
                },
            )
            | (
                MiaoTypeI { k, l, gamma, .. },
                MiaoTypeI {
                    k: k2,
                    l: l2,
                    gamma: g2,
                    ..
                },
            )
            | (
                MiaoTypeII { k, l, gamma, .. },
                MiaoTypeII {
                    k: k2,
                    l: l2,
                    gamma: g2,
                    ..
                },
            ) => k == k2 && l == l2 && gamma == g2,
            _ => false,
        }
    }
}
