//! Quasi-steady aerodynamics of the two-panel morphing wing.
//!
//! All panel areas are per side; the factor of two for the symmetric pair of
//! half-wings is applied inside [`morphing_forces`] and [`roll_moment`].

mod flight;
mod forces;
mod geometry;
mod polar;
mod stability;

pub use flight::{check_flow_regime, FlightCondition, MAX_LOW_SPEED_MACH};
pub use forces::{
    evaluate_aero, geometric_factor, lift_drag_ratio, morphing_forces, roll_moment, AeroResult,
};
pub use geometry::{centroid_arms, panel_centroids, HalfEllipsePanel, RectPanel, WingGeometry};
pub use polar::{drag_coefficient, lift_coefficient, AirfoilPolar};
pub use stability::{dihedral_stability, ClBetaBreakdown, StabilityConfig};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AeroError {
    #[error("angle of attack {alpha_deg:.4} deg exceeds the stall angle {stall_deg:.4} deg")]
    StallExceeded { alpha_deg: f64, stall_deg: f64 },
    #[error(
        "angle of attack {alpha_deg:.4} deg is below the linear-lift range (from {min_deg:.4} deg)"
    )]
    BelowLinearRange { alpha_deg: f64, min_deg: f64 },
    #[error("Mach {mach:.4} is outside the low-speed regime (Ma <= 0.3)")]
    FlowRegimeViolation { mach: f64 },
    #[error("drag coefficient must be positive to form a lift-to-drag ratio (got {cd})")]
    ZeroDrag { cd: f64 },
    #[error("invalid polar: {0}")]
    InvalidPolar(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid flight condition: {0}")]
    InvalidCondition(String),
}

impl AeroError {
    pub fn class(&self) -> &'static str {
        match self {
            AeroError::StallExceeded { .. } => "StallExceeded",
            AeroError::BelowLinearRange { .. } => "BelowLinearRange",
            AeroError::FlowRegimeViolation { .. } => "FlowRegimeViolation",
            AeroError::ZeroDrag { .. } => "ZeroDrag",
            AeroError::InvalidPolar(_) => "InvalidPolar",
            AeroError::InvalidGeometry(_) => "InvalidGeometry",
            AeroError::InvalidCondition(_) => "InvalidCondition",
        }
    }
}
