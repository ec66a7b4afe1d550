use serde::{Deserialize, Serialize};

use super::SynthesisError;
use crate::linkage::{LinkageParams, PhaseMapping};
use crate::FlightState;

/// Closed interval in degrees, written `[lo, hi]` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band(pub f64, pub f64);

impl Band {
    pub fn lo(&self) -> f64 {
        self.0
    }

    pub fn hi(&self) -> f64 {
        self.1
    }

    /// Distance from `v` to the band, zero inside.
    pub fn violation(&self, v: f64) -> f64 {
        (self.0 - v).max(0.0) + (v - self.1).max(0.0)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.0 + self.1)
    }

    fn check(&self, what: &str) -> Result<(), SynthesisError> {
        if !(self.0.is_finite() && self.1.is_finite()) {
            return Err(SynthesisError::InvalidProblem(format!(
                "{what}: band bounds must be finite"
            )));
        }
        if self.0 > self.1 {
            return Err(SynthesisError::InvalidProblem(format!(
                "{what}: empty band [{}, {}]",
                self.0, self.1
            )));
        }
        Ok(())
    }
}

/// Outer-wing target: an absolute range or "same as the inner wing".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Psi2Band {
    Range(Band),
    /// `|psi2 - psi1| <= tolerance` (degrees).
    Linked {
        same_as_psi1: f64,
    },
}

impl Psi2Band {
    pub const DEFAULT_LINK_TOLERANCE_DEG: f64 = 3.0;

    pub fn linked() -> Self {
        Psi2Band::Linked {
            same_as_psi1: Self::DEFAULT_LINK_TOLERANCE_DEG,
        }
    }

    pub fn violation(&self, psi1: f64, psi2: f64) -> f64 {
        match *self {
            Psi2Band::Range(b) => b.violation(psi2),
            Psi2Band::Linked { same_as_psi1 } => ((psi2 - psi1).abs() - same_as_psi1).max(0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateBand {
    pub psi1_deg: Band,
    pub psi2_deg: Psi2Band,
}

impl StateBand {
    /// Summed band violation in degrees for dihedrals given in degrees.
    pub fn violation(&self, psi1_deg: f64, psi2_deg: f64) -> f64 {
        self.psi1_deg.violation(psi1_deg) + self.psi2_deg.violation(psi1_deg, psi2_deg)
    }
}

/// Dihedral bands per flight state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateTargets {
    pub gliding: StateBand,
    pub descending: StateBand,
    pub high_maneuverability: StateBand,
}

impl Default for StateTargets {
    /// Gliding -2..2 / 20..30, descending 35..45 / linked, high-maneuverability
    /// -30..-20 / linked.
    fn default() -> Self {
        StateTargets {
            gliding: StateBand {
                psi1_deg: Band(-2.0, 2.0),
                psi2_deg: Psi2Band::Range(Band(20.0, 30.0)),
            },
            descending: StateBand {
                psi1_deg: Band(35.0, 45.0),
                psi2_deg: Psi2Band::linked(),
            },
            high_maneuverability: StateBand {
                psi1_deg: Band(-30.0, -20.0),
                psi2_deg: Psi2Band::linked(),
            },
        }
    }
}

impl StateTargets {
    pub fn band(&self, state: FlightState) -> &StateBand {
        match state {
            FlightState::Gliding => &self.gliding,
            FlightState::Descending => &self.descending,
            FlightState::HighManeuverability => &self.high_maneuverability,
        }
    }

    pub fn validate(&self) -> Result<(), SynthesisError> {
        for state in FlightState::ALL {
            let b = self.band(state);
            b.psi1_deg.check(&format!("{state}.psi1"))?;
            match b.psi2_deg {
                Psi2Band::Range(r) => r.check(&format!("{state}.psi2"))?,
                Psi2Band::Linked { same_as_psi1 } => {
                    if !(same_as_psi1.is_finite() && same_as_psi1 >= 0.0) {
                        return Err(SynthesisError::InvalidProblem(format!(
                            "{state}.psi2: link tolerance must be non-negative"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Per-link `[min, max]` in millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthBounds {
    pub l1: Band,
    pub l2: Band,
    pub l3: Band,
    pub l4: Band,
}

impl LengthBounds {
    pub fn uniform(lo: f64, hi: f64) -> Self {
        LengthBounds {
            l1: Band(lo, hi),
            l2: Band(lo, hi),
            l3: Band(lo, hi),
            l4: Band(lo, hi),
        }
    }

    pub fn as_array(&self) -> [Band; 4] {
        [self.l1, self.l2, self.l3, self.l4]
    }
}

impl Default for LengthBounds {
    fn default() -> Self {
        LengthBounds::uniform(10.0, 80.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveWeights {
    /// Per degree of band violation.
    #[serde(default = "unit")]
    pub band: f64,
    /// Per degree the worst transmission angle falls below the floor.
    #[serde(default = "unit")]
    pub transmission: f64,
    /// On total link length over the sum of upper bounds.
    #[serde(default = "default_compactness")]
    pub compactness: f64,
}

fn unit() -> f64 {
    1.0
}
fn default_compactness() -> f64 {
    0.01
}

impl Default for ObjectiveWeights {
    fn default() -> Self {
        ObjectiveWeights {
            band: 1.0,
            transmission: 1.0,
            compactness: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthesisProblem {
    pub targets: StateTargets,
    pub bounds: LengthBounds,
    pub min_transmission_angle_deg: f64,
    pub weights: ObjectiveWeights,
    pub rng_seed: u64,
    pub starts: usize,
    pub evaluations_per_start: usize,
    /// Reject linkages whose input crank cannot turn fully.
    pub require_crank_rocker: bool,
    /// Also search the mount offsets epsilon and xi (degrees, within
    /// `offset_bounds_deg`). With them pinned to the template the three bands
    /// are generally out of reach.
    pub refine_offsets: bool,
    pub offset_bounds_deg: Band,
    /// Supplies the mount offsets and auxiliary members; its lengths are ignored.
    pub template: LinkageParams,
    pub mapping: PhaseMapping,
}

impl Default for SynthesisProblem {
    fn default() -> Self {
        SynthesisProblem {
            targets: StateTargets::default(),
            bounds: LengthBounds::default(),
            min_transmission_angle_deg: 40.0,
            weights: ObjectiveWeights::default(),
            rng_seed: 42,
            starts: 64,
            evaluations_per_start: 500,
            require_crank_rocker: true,
            refine_offsets: true,
            offset_bounds_deg: Band(-179.0, 180.0),
            template: LinkageParams::prototype(),
            mapping: PhaseMapping::default(),
        }
    }
}

impl SynthesisProblem {
    pub fn validate(&self) -> Result<(), SynthesisError> {
        self.targets.validate()?;
        for (name, b) in ["l1", "l2", "l3", "l4"].iter().zip(self.bounds.as_array()) {
            b.check(&format!("bounds.{name}"))?;
            if b.lo() <= 0.0 {
                return Err(SynthesisError::InvalidProblem(format!(
                    "bounds.{name}: lengths must be positive"
                )));
            }
        }
        let w = self.weights;
        if ![w.band, w.transmission, w.compactness]
            .iter()
            .all(|v| v.is_finite() && *v >= 0.0)
        {
            return Err(SynthesisError::InvalidProblem(
                "weights must be non-negative".into(),
            ));
        }
        if !(0.0..=90.0).contains(&self.min_transmission_angle_deg) {
            return Err(SynthesisError::InvalidProblem(
                "min_transmission_angle_deg must lie in [0, 90]".into(),
            ));
        }
        self.offset_bounds_deg.check("offset_bounds_deg")?;
        if self.offset_bounds_deg.lo() <= -180.0 || self.offset_bounds_deg.hi() > 180.0 {
            return Err(SynthesisError::InvalidProblem(
                "offset_bounds_deg must lie in (-180, 180]".into(),
            ));
        }
        if self.starts == 0 || self.evaluations_per_start == 0 {
            return Err(SynthesisError::InvalidProblem(
                "starts and evaluations_per_start must be positive".into(),
            ));
        }
        Ok(())
    }
}
