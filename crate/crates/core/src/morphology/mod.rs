//! Couples linkage kinematics to the aerodynamic model: per-phase evaluation,
//! full phase sweeps, flight-state selection and the reference comparison.

mod evaluate;
mod report;
mod select;

pub use evaluate::{
    evaluate_phase, sweep_morphology, ModelInputs, MorphCurve, PhaseValues, StatePoint,
};
pub use report::{
    reference_anchors, state_report, FieldComparison, StateAnchor, StateComparison, StateReport,
};
pub use select::{select_flight_states, FlightStateSet, SelectedState, SelectionThresholds};

use thiserror::Error;

use crate::aero::AeroError;
use crate::linkage::LinkageError;
use crate::FlightState;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MorphologyError {
    #[error(transparent)]
    Linkage(#[from] LinkageError),
    #[error(transparent)]
    Aero(#[from] AeroError),
    #[error("no phase satisfies the {state} criterion: {reason}")]
    CriterionUnsatisfiable { state: FlightState, reason: String },
    #[error("state selection needs at least 3 assemblable phases (found {found})")]
    TooFewPoints { found: usize },
}

impl MorphologyError {
    pub fn class(&self) -> &'static str {
        match self {
            MorphologyError::Linkage(e) => e.class(),
            MorphologyError::Aero(e) => e.class(),
            MorphologyError::CriterionUnsatisfiable { .. } => "CriterionUnsatisfiable",
            MorphologyError::TooFewPoints { .. } => "TooFewPoints",
        }
    }
}
