//! Multi-particle systems and their center-of-mass algebra.

mod closed_form;
mod closure;
mod report;
mod scaling;
mod system;

pub use closure::{com_relative_coupling, reproduction_check, ClosureReport, CouplingReport, CLOSURE_TOL};
pub use report::{com_bracket_report, BracketEntry, BracketLabel, ComBracketReport};
pub use scaling::{
    effective_parameters, satisfies_mass_scaling, EffectiveParameters, MassScalingRule, ScalingCheck, SCALING_TOL,
};
pub use system::{com_transform, ComCoordinates, Particle, ParticleSystem};
