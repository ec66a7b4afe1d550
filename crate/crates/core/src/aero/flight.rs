use serde::{Deserialize, Serialize};

use super::AeroError;
use crate::angle::{deg, rad};

/// Upper Mach limit of the constant-polar assumption.
pub const MAX_LOW_SPEED_MACH: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConditionRepr", into = "ConditionRepr")]
pub struct FlightCondition {
    /// Air density, kg/m^3.
    pub rho: f64,
    /// Airspeed, m/s.
    pub airspeed: f64,
    /// Angle of attack, rad.
    pub alpha: f64,
    /// Sideslip, rad.
    pub beta: f64,
    /// m/s, used to derive the Mach number.
    pub speed_of_sound: f64,
    pub reynolds: Option<f64>,
}

impl Default for FlightCondition {
    /// Sea-level wind-tunnel setting: 10 m/s, 5 deg incidence, 5 deg sideslip.
    fn default() -> Self {
        FlightCondition {
            rho: 1.225,
            airspeed: 10.0,
            alpha: rad(5.0),
            beta: rad(5.0),
            speed_of_sound: 340.0,
            reynolds: None,
        }
    }
}

impl FlightCondition {
    pub fn mach(&self) -> f64 {
        self.airspeed / self.speed_of_sound
    }

    pub fn dynamic_pressure(&self) -> f64 {
        0.5 * self.rho * self.airspeed * self.airspeed
    }

    pub fn validate(&self) -> Result<(), AeroError> {
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(AeroError::InvalidCondition("rho must be positive".into()));
        }
        if !(self.airspeed.is_finite() && self.airspeed >= 0.0) {
            return Err(AeroError::InvalidCondition(
                "airspeed must be non-negative".into(),
            ));
        }
        if !(self.speed_of_sound.is_finite() && self.speed_of_sound > 0.0) {
            return Err(AeroError::InvalidCondition(
                "speed_of_sound must be positive".into(),
            ));
        }
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(AeroError::InvalidCondition(
                "alpha and beta must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// Accepts the condition iff `Ma <= 0.3`.
pub fn check_flow_regime(cond: &FlightCondition) -> Result<(), AeroError> {
    let mach = cond.mach();
    if mach <= MAX_LOW_SPEED_MACH {
        Ok(())
    } else {
        Err(AeroError::FlowRegimeViolation { mach })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConditionRepr {
    #[serde(default = "default_rho")]
    rho: f64,
    #[serde(default = "default_airspeed")]
    airspeed: f64,
    #[serde(default = "default_angle")]
    alpha_deg: f64,
    #[serde(default = "default_angle")]
    beta_deg: f64,
    #[serde(default = "default_sound")]
    speed_of_sound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reynolds: Option<f64>,
}

fn default_rho() -> f64 {
    1.225
}
fn default_airspeed() -> f64 {
    10.0
}
fn default_angle() -> f64 {
    5.0
}
fn default_sound() -> f64 {
    340.0
}

impl TryFrom<ConditionRepr> for FlightCondition {
    type Error = String;

    fn try_from(r: ConditionRepr) -> Result<Self, String> {
        let c = FlightCondition {
            rho: r.rho,
            airspeed: r.airspeed,
            alpha: rad(r.alpha_deg),
            beta: rad(r.beta_deg),
            speed_of_sound: r.speed_of_sound,
            reynolds: r.reynolds,
        };
        c.validate().map_err(|e| e.to_string())?;
        Ok(c)
    }
}

impl From<FlightCondition> for ConditionRepr {
    fn from(c: FlightCondition) -> Self {
        ConditionRepr {
            rho: c.rho,
            airspeed: c.airspeed,
            alpha_deg: deg(c.alpha),
            beta_deg: deg(c.beta),
            speed_of_sound: c.speed_of_sound,
            reynolds: c.reynolds,
        }
    }
}
