//! Hamiltonian dynamics of particles and composite bodies in gravitational fields.

mod decoupling;
mod integrate;
mod potential;
mod rhs;
mod scenario;
mod wep;

pub use decoupling::decoupling_check;
pub use integrate::{
    convergence_ratio, energy_summary, integrate, ConvergenceReport, EnergySummary, Trajectory, TrajectoryMeta,
    INTEGRATOR,
};
pub use potential::{Monomial, Potential, MAX_POLYNOMIAL_DEGREE, NEWTONIAN_R_MIN};
pub use rhs::{body_com_rhs, closed_form_eom, eom_rhs, hamiltonian};
pub use scenario::{BodyMode, GravityScenario, TimeGrid};
pub use wep::{scenario_for_mass, wep_deviation, ScalingMode, WepDeviation, WepPair};
