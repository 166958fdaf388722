use std::fmt;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use super::closed_form::ClosedForms;
use super::system::ParticleSystem;
use crate::algebra::{linear_bracket, structure_matrix, Linear, PhaseState};
use crate::error::Result;

/// A bracket between composite variables. Axis indices `i`, `j` and particle
/// indices `a`, `b` are 0-based; [`fmt::Display`] prints them 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketLabel {
    /// `{X̃i, X̃j}`
    ComCom { i: usize, j: usize },
    /// `{X̃i, P̃j}`
    ComComMomentum { i: usize, j: usize },
    /// `{P̃i, P̃j}`
    MomentumMomentum { i: usize, j: usize },
    /// `{ΔXi⁽ᵃ⁾, ΔXj⁽ᵇ⁾}`
    RelRel { a: usize, i: usize, b: usize, j: usize },
    /// `{ΔXi⁽ᵃ⁾, ΔPj⁽ᵇ⁾}`
    RelRelMomentum { a: usize, i: usize, b: usize, j: usize },
    /// `{ΔXi⁽ᵃ⁾, X̃j}`
    RelCom { a: usize, i: usize, j: usize },
    /// `{ΔPi⁽ᵃ⁾, ΔPj⁽ᵇ⁾}`
    RelMomRelMom { a: usize, i: usize, b: usize, j: usize },
    /// `{P̃i, ΔXj⁽ᵃ⁾}`
    ComMomRel { i: usize, a: usize, j: usize },
    /// `{ΔPi⁽ᵃ⁾, X̃j}`
    RelMomCom { a: usize, i: usize, j: usize },
}

impl fmt::Display for BracketLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BracketLabel::*;
        match *self {
            ComCom { i, j } => write!(f, "{{Xc{},Xc{}}}", i + 1, j + 1),
            ComComMomentum { i, j } => write!(f, "{{Xc{},Pc{}}}", i + 1, j + 1),
            MomentumMomentum { i, j } => write!(f, "{{Pc{},Pc{}}}", i + 1, j + 1),
            RelRel { a, i, b, j } => write!(f, "{{dX{}({}),dX{}({})}}", i + 1, a + 1, j + 1, b + 1),
            RelRelMomentum { a, i, b, j } => write!(f, "{{dX{}({}),dP{}({})}}", i + 1, a + 1, j + 1, b + 1),
            RelCom { a, i, j } => write!(f, "{{dX{}({}),Xc{}}}", i + 1, a + 1, j + 1),
            RelMomRelMom { a, i, b, j } => write!(f, "{{dP{}({}),dP{}({})}}", i + 1, a + 1, j + 1, b + 1),
            ComMomRel { i, a, j } => write!(f, "{{Pc{},dX{}({})}}", i + 1, j + 1, a + 1),
            RelMomCom { a, i, j } => write!(f, "{{dP{}({}),Xc{}}}", i + 1, a + 1, j + 1),
        }
    }
}

impl Serialize for BracketLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl BracketLabel {
    /// Every label for a system of `n` particles, in a fixed order.
    pub fn all(n: usize) -> Vec<BracketLabel> {
        use BracketLabel::*;
        let mut out = Vec::new();
        let pairs = || (0..3).flat_map(|i| (0..3).map(move |j| (i, j)));
        for (i, j) in pairs() {
            out.push(ComCom { i, j });
            out.push(ComComMomentum { i, j });
            out.push(MomentumMomentum { i, j });
        }
        for a in 0..n {
            for (i, j) in pairs() {
                for b in 0..n {
                    out.push(RelRel { a, i, b, j });
                    out.push(RelRelMomentum { a, i, b, j });
                    out.push(RelMomRelMom { a, i, b, j });
                }
                out.push(RelCom { a, i, j });
                out.push(ComMomRel { i, a, j });
                out.push(RelMomCom { a, i, j });
            }
        }
        out.sort();
        out
    }

    /// The two composite observables of the bracket.
    pub fn observables(&self, mu: &[f64]) -> (Linear, Linear) {
        use BracketLabel::*;
        let n = mu.len();
        match *self {
            ComCom { i, j } => (Linear::com_position(mu, i), Linear::com_position(mu, j)),
            ComComMomentum { i, j } => (Linear::com_position(mu, i), Linear::com_momentum(n, j)),
            MomentumMomentum { i, j } => (Linear::com_momentum(n, i), Linear::com_momentum(n, j)),
            RelRel { a, i, b, j } => (Linear::relative_position(mu, a, i), Linear::relative_position(mu, b, j)),
            RelRelMomentum { a, i, b, j } => (Linear::relative_position(mu, a, i), Linear::relative_momentum(mu, b, j)),
            RelCom { a, i, j } => (Linear::relative_position(mu, a, i), Linear::com_position(mu, j)),
            RelMomRelMom { a, i, b, j } => (Linear::relative_momentum(mu, a, i), Linear::relative_momentum(mu, b, j)),
            ComMomRel { i, a, j } => (Linear::com_momentum(n, i), Linear::relative_position(mu, a, j)),
            RelMomCom { a, i, j } => (Linear::relative_momentum(mu, a, i), Linear::com_position(mu, j)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketEntry {
    #[serde(rename = "bracket")]
    pub label: BracketLabel,
    pub computed: f64,
    pub closed_form: f64,
}

/// Composite-variable brackets from the chain rule next to their closed forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComBracketReport {
    pub entries: Vec<BracketEntry>,
    pub max_abs_diff: f64,
}

impl ComBracketReport {
    pub fn get(&self, label: &BracketLabel) -> Option<&BracketEntry> {
        self.entries
            .binary_search_by(|e| e.label.cmp(label))
            .ok()
            .map(|idx| &self.entries[idx])
    }

    pub fn computed(&self, label: &BracketLabel) -> Option<f64> {
        self.get(label).map(|e| e.computed)
    }

    pub fn closed_form(&self, label: &BracketLabel) -> Option<f64> {
        self.get(label).map(|e| e.closed_form)
    }
}

/// Chain-rule bracket of two composite variables for a prebuilt structure matrix.
pub(crate) fn composite_bracket(j: &DMatrix<f64>, mu: &[f64], label: &BracketLabel) -> f64 {
    let (f, g) = label.observables(mu);
    linear_bracket(j, &f.coeffs, &g.coeffs)
}

/// Evaluates every composite bracket both ways.
pub fn com_bracket_report(system: &ParticleSystem, state: &PhaseState) -> Result<ComBracketReport> {
    let j = structure_matrix(&system.specs(), state)?.into_matrix();
    let mu = system.mass_fractions();
    let oracle = ClosedForms::new(system, state);
    let mut max_abs_diff = 0.0f64;
    let entries = BracketLabel::all(system.len())
        .into_iter()
        .map(|label| {
            let computed = composite_bracket(&j, &mu, &label);
            let closed_form = oracle.value(&label);
            max_abs_diff = max_abs_diff.max((computed - closed_form).abs());
            BracketEntry {
                label,
                computed,
                closed_form,
            }
        })
        .collect();
    Ok(ComBracketReport { entries, max_abs_diff })
}
