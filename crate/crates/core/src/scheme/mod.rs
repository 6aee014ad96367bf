//! SBP-SAT semi-discretisation: boundary penalties, the right-hand side and
//! discrete energy analysis.

mod energy;
mod penalty;
mod rhs;
mod sat;

pub use crate::model::SchemeKind;
pub use energy::{
    assemble_local_operator, assemble_operator, energy_rate, sampled_energy_rates, sup_energy_rate, EnergyEstimate,
    SparseOperator,
};
pub use penalty::{build_penalties, FacePenalty, PenaltyConfig};
pub use rhs::{semidiscrete_rhs, SemiDiscrete};
pub use sat::{add_curl_penalty, add_face_penalties, sat_dirichlet, sat_mixed};
