use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI};

use super::AeroError;
use crate::angle::{deg, rad};

/// Linear lift up to stall and a parabolic drag polar.
///
/// The default is a thin-airfoil placeholder (2 pi per rad, zero-lift at 0,
/// stall at 12 deg, `C_D0 = 0.02`, `A = 0.2`); it is not fitted to any
/// particular section and should be overridden with measured constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolarRepr", into = "PolarRepr")]
pub struct AirfoilPolar {
    /// Lift-curve slope, per radian.
    pub cl_alpha: f64,
    /// Zero-lift angle, rad.
    pub alpha0: f64,
    /// Stall angle, rad.
    pub alpha_s: f64,
    pub cd0: f64,
    /// Induced-drag factor `A` in `C_D = C_D0 + A C_L^2`.
    pub induced_factor: f64,
}

impl Default for AirfoilPolar {
    fn default() -> Self {
        AirfoilPolar {
            cl_alpha: 2.0 * PI,
            alpha0: 0.0,
            alpha_s: rad(12.0),
            cd0: 0.02,
            induced_factor: 0.2,
        }
    }
}

impl AirfoilPolar {
    pub fn validate(&self) -> Result<(), AeroError> {
        let finite = [
            self.cl_alpha,
            self.alpha0,
            self.alpha_s,
            self.cd0,
            self.induced_factor,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(AeroError::InvalidPolar(
                "all constants must be finite".into(),
            ));
        }
        if self.cl_alpha <= 0.0 {
            return Err(AeroError::InvalidPolar("cl_alpha must be positive".into()));
        }
        if self.alpha_s <= self.alpha0 {
            return Err(AeroError::InvalidPolar(
                "stall angle must exceed the zero-lift angle".into(),
            ));
        }
        if self.cd0 < 0.0 || self.induced_factor < 0.0 {
            return Err(AeroError::InvalidPolar(
                "cd0 and induced_factor must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Lowest angle of attack the linear model accepts.
    pub fn alpha_min(&self) -> f64 {
        self.alpha0 - FRAC_PI_4
    }
}

/// `C_L = cl_alpha (alpha - alpha0)` on `[alpha0 - pi/4, alpha_s]`.
pub fn lift_coefficient(alpha: f64, polar: &AirfoilPolar) -> Result<f64, AeroError> {
    if alpha > polar.alpha_s {
        return Err(AeroError::StallExceeded {
            alpha_deg: deg(alpha),
            stall_deg: deg(polar.alpha_s),
        });
    }
    if alpha < polar.alpha_min() {
        return Err(AeroError::BelowLinearRange {
            alpha_deg: deg(alpha),
            min_deg: deg(polar.alpha_min()),
        });
    }
    Ok(polar.cl_alpha * (alpha - polar.alpha0))
}

/// `C_D = C_D0 + A C_L^2`.
pub fn drag_coefficient(cl: f64, polar: &AirfoilPolar) -> f64 {
    polar.cd0 + polar.induced_factor * cl * cl
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolarRepr {
    #[serde(default = "default_cl_alpha")]
    cl_alpha_per_rad: f64,
    #[serde(default)]
    alpha0_deg: f64,
    #[serde(default = "default_stall")]
    alpha_stall_deg: f64,
    #[serde(default = "default_cd0")]
    cd0: f64,
    #[serde(default = "default_induced")]
    induced_factor: f64,
}

fn default_cl_alpha() -> f64 {
    2.0 * PI
}
fn default_stall() -> f64 {
    12.0
}
fn default_cd0() -> f64 {
    0.02
}
fn default_induced() -> f64 {
    0.2
}

impl TryFrom<PolarRepr> for AirfoilPolar {
    type Error = String;

    fn try_from(r: PolarRepr) -> Result<Self, String> {
        let p = AirfoilPolar {
            cl_alpha: r.cl_alpha_per_rad,
            alpha0: rad(r.alpha0_deg),
            alpha_s: rad(r.alpha_stall_deg),
            cd0: r.cd0,
            induced_factor: r.induced_factor,
        };
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }
}

impl From<AirfoilPolar> for PolarRepr {
    fn from(p: AirfoilPolar) -> Self {
        PolarRepr {
            cl_alpha_per_rad: p.cl_alpha,
            alpha0_deg: deg(p.alpha0),
            alpha_stall_deg: deg(p.alpha_s),
            cd0: p.cd0,
            induced_factor: p.induced_factor,
        }
    }
}
