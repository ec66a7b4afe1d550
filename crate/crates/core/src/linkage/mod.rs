//! Planar four-bar kinematics.
//!
//! Frame: crank pivot at the origin, rocker pivot at `(l4, 0)`. Absolute
//! angles are measured counterclockwise from the ground line (crank pivot to
//! rocker pivot). Lengths are in millimetres, angles in radians.

mod calibrate;
mod grashof;
mod mapping;
mod params;
mod pose;
mod sweep;

pub use calibrate::{calibrate_phase_mapping, prediction_rms, Calibration, PhaseAnchor};
pub use grashof::{grashof_classify, GrashofClass};
pub use mapping::{pose_to_dihedrals, rocker_angle_for_psi1, DihedralPair, PhaseMapping, Psi2Mode};
pub use params::{validate_params, AuxLengths, LinkageParams};
pub use pose::{
    solve_fourbar, transmission_angle, transmission_quality, Branch, LinkagePose, Point,
};
pub use sweep::{phase_grid, sample_phase, sweep_crank, KinematicCurve, KinematicSample};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkageError {
    #[error("link {name} must be strictly positive (got {value})")]
    NonPositiveLength { name: &'static str, value: f64 },
    #[error("angle {name} must be finite and in (-180, 180] degrees (got {value_deg})")]
    InvalidOffsetAngle { name: &'static str, value_deg: f64 },
    #[error("no crank angle admits loop closure for lengths ({l1}, {l2}, {l3}, {l4})")]
    NeverAssemblable { l1: f64, l2: f64, l3: f64, l4: f64 },
    #[error("linkage cannot be assembled at crank angle {crank_angle_deg:.6} deg")]
    Unassemblable { crank_angle_deg: f64 },
    #[error("linkage is at a singular (collinear) configuration at crank angle {crank_angle_deg:.6} deg")]
    Singular { crank_angle_deg: f64 },
    #[error("grid step must lie in (0, 10] degrees (got {step_deg})")]
    InvalidGridStep { step_deg: f64 },
    #[error("sweep contains no assemblable phase")]
    EmptySweep,
    #[error("calibration needs at least one anchor")]
    NoAnchors,
    #[error("every candidate phase mapping leaves some anchor unassemblable")]
    NoFeasibleMapping,
}

impl LinkageError {
    pub fn class(&self) -> &'static str {
        match self {
            LinkageError::NonPositiveLength { .. } => "NonPositiveLength",
            LinkageError::InvalidOffsetAngle { .. } => "InvalidOffsetAngle",
            LinkageError::NeverAssemblable { .. } => "NeverAssemblable",
            LinkageError::Unassemblable { .. } => "Unassemblable",
            LinkageError::Singular { .. } => "Singular",
            LinkageError::InvalidGridStep { .. } => "InvalidGridStep",
            LinkageError::EmptySweep => "EmptySweep",
            LinkageError::NoAnchors => "NoAnchors",
            LinkageError::NoFeasibleMapping => "NoFeasibleMapping",
        }
    }
}
