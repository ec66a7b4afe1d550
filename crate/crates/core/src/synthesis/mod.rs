//! Dimensional synthesis of the wing linkage.
//!
//! Exact three-position Freudenstein synthesis seeds a deterministic
//! multi-start compass search over the link lengths, scored by how well the
//! swept dihedrals reach the three flight-state bands and by the worst
//! transmission angle.

mod candidate;
mod freudenstein;
mod multistart;
mod targets;

pub use candidate::{evaluate_candidate, CandidateReport, ObjectiveBreakdown, StateAchievement};
pub use freudenstein::{freudenstein_three_position, LinkLengths};
pub use multistart::{synthesize_constrained, StartSummary, SynthesisOutcome};
pub use targets::{
    Band, LengthBounds, ObjectiveWeights, Psi2Band, StateBand, StateTargets, SynthesisProblem,
};

use thiserror::Error;

use crate::linkage::LinkageError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthesisError {
    #[error("the three precision poses give a singular Freudenstein system")]
    SingularSystem,
    #[error("synthesised coupler length is imaginary (l2^2 = {l2_squared})")]
    ImaginaryCoupler { l2_squared: f64 },
    #[error("synthesised side link is not positive (K1 = {k1}, K2 = {k2})")]
    NegativeLink { k1: f64, k2: f64 },
    #[error("invalid synthesis problem: {0}")]
    InvalidProblem(String),
    #[error("no start produced a valid linkage ({failed} of {starts} starts failed)")]
    NoFeasibleCandidate { starts: usize, failed: usize },
    #[error(transparent)]
    Linkage(#[from] LinkageError),
}

impl SynthesisError {
    pub fn class(&self) -> &'static str {
        match self {
            SynthesisError::SingularSystem => "SingularSystem",
            SynthesisError::ImaginaryCoupler { .. } => "ImaginaryCoupler",
            SynthesisError::NegativeLink { .. } => "NegativeLink",
            SynthesisError::InvalidProblem(_) => "InvalidProblem",
            SynthesisError::NoFeasibleCandidate { .. } => "NoFeasibleCandidate",
            SynthesisError::Linkage(e) => e.class(),
        }
    }
}
