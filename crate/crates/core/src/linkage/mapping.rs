use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::{Branch, LinkageParams, LinkagePose};
use crate::angle::{deg, rad, wrap_pi, wrap_two_pi};

/// Inner (`psi1`) and outer (`psi2`) wing dihedral, radians, positive up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DihedralPair {
    pub psi1: f64,
    pub psi2: f64,
}

impl DihedralPair {
    pub fn new(psi1: f64, psi2: f64) -> Self {
        DihedralPair { psi1, psi2 }
    }

    pub fn from_degrees(psi1_deg: f64, psi2_deg: f64) -> Self {
        DihedralPair::new(rad(psi1_deg), rad(psi2_deg))
    }

    /// Both panels strictly between -90 and 90 degrees.
    pub fn is_physical(&self) -> bool {
        self.psi1.abs() < FRAC_PI_2 && self.psi2.abs() < FRAC_PI_2
    }
}

/// Which solved member carries the outer wing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Psi2Mode {
    #[default]
    Coupler,
    Rocker,
}

/// Maps a mechanism phase onto a crank angle and a pose onto wing dihedrals.
///
/// `crank = phase_offset + rotation_sign * phase`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PhaseMappingRepr", into = "PhaseMappingRepr")]
pub struct PhaseMapping {
    /// Crank angle at phase zero, in `[0, 2PI)`.
    pub phase_offset: f64,
    /// `+1` or `-1`.
    pub rotation_sign: i8,
    pub branch: Branch,
    pub psi2_mode: Psi2Mode,
}

impl Default for PhaseMapping {
    fn default() -> Self {
        PhaseMapping {
            phase_offset: 0.0,
            rotation_sign: 1,
            branch: Branch::ElbowUp,
            psi2_mode: Psi2Mode::Coupler,
        }
    }
}

impl PhaseMapping {
    pub fn new(phase_offset: f64, rotation_sign: i8, branch: Branch, psi2_mode: Psi2Mode) -> Self {
        assert!(
            rotation_sign == 1 || rotation_sign == -1,
            "rotation sign must be +1 or -1"
        );
        PhaseMapping {
            phase_offset: wrap_two_pi(phase_offset),
            rotation_sign,
            branch,
            psi2_mode,
        }
    }

    /// Crank angle for a phase given in radians.
    pub fn crank_angle(&self, phase: f64) -> f64 {
        wrap_two_pi(self.phase_offset + f64::from(self.rotation_sign) * phase)
    }

    /// Inverse of [`PhaseMapping::crank_angle`], in `[0, 2PI)`.
    pub fn phase_of(&self, crank_angle: f64) -> f64 {
        wrap_two_pi(f64::from(self.rotation_sign) * (crank_angle - self.phase_offset))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseMappingRepr {
    #[serde(default)]
    phase_offset_deg: f64,
    #[serde(default = "one")]
    rotation_sign: i8,
    #[serde(default)]
    branch: Branch,
    #[serde(default)]
    psi2_mode: Psi2Mode,
}

fn one() -> i8 {
    1
}

impl TryFrom<PhaseMappingRepr> for PhaseMapping {
    type Error = String;

    fn try_from(r: PhaseMappingRepr) -> Result<Self, Self::Error> {
        if r.rotation_sign != 1 && r.rotation_sign != -1 {
            return Err(format!(
                "rotation_sign must be 1 or -1 (got {})",
                r.rotation_sign
            ));
        }
        if !r.phase_offset_deg.is_finite() {
            return Err("phase_offset_deg must be finite".into());
        }
        Ok(PhaseMapping::new(
            rad(r.phase_offset_deg),
            r.rotation_sign,
            r.branch,
            r.psi2_mode,
        ))
    }
}

impl From<PhaseMapping> for PhaseMappingRepr {
    fn from(m: PhaseMapping) -> Self {
        PhaseMappingRepr {
            phase_offset_deg: deg(m.phase_offset),
            rotation_sign: m.rotation_sign,
            branch: m.branch,
            psi2_mode: m.psi2_mode,
        }
    }
}

/// `psi1 = rocker - (90deg - epsilon)` and
/// `psi2 = member + xi - (90deg - epsilon)`, where the member is the coupler
/// or the rocker according to `psi2_mode`. Both wrapped into `(-PI, PI]`.
pub fn pose_to_dihedrals(pose: &LinkagePose, p: &LinkageParams, m: &PhaseMapping) -> DihedralPair {
    let mount = FRAC_PI_2 - p.epsilon;
    let member = match m.psi2_mode {
        Psi2Mode::Coupler => pose.coupler_angle,
        Psi2Mode::Rocker => pose.rocker_angle,
    };
    DihedralPair {
        psi1: wrap_pi(pose.rocker_angle - mount),
        psi2: wrap_pi(member + p.xi - mount),
    }
}

/// Absolute rocker angle that produces inner dihedral `psi1`.
pub fn rocker_angle_for_psi1(psi1: f64, epsilon: f64) -> f64 {
    psi1 + FRAC_PI_2 - epsilon
}
