use serde::{Deserialize, Serialize};
use std::fmt::{self, Write as _};

use super::FlightStateSet;
use crate::angle::wrap_deg_180;
use crate::FlightState;

/// Reference values for one flight state. Any field may be omitted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateAnchor {
    pub state: FlightState,
    #[serde(default)]
    pub phase_deg: Option<f64>,
    #[serde(default)]
    pub psi1_deg: Option<f64>,
    #[serde(default)]
    pub psi2_deg: Option<f64>,
    #[serde(default)]
    pub lift_drag_ratio: Option<f64>,
    #[serde(default)]
    pub roll_moment_nm: Option<f64>,
}

/// Measured key values of the reference prototype.
pub fn reference_anchors() -> Vec<StateAnchor> {
    let row = |state, phase, psi1, psi2, k, m| StateAnchor {
        state,
        phase_deg: Some(phase),
        psi1_deg: Some(psi1),
        psi2_deg: Some(psi2),
        lift_drag_ratio: Some(k),
        roll_moment_nm: Some(m),
    };
    vec![
        row(FlightState::Gliding, 0.0, -1.0, 27.1, 11.3, 0.46),
        row(FlightState::Descending, 48.0, 37.8, 38.1, 6.3, -0.32),
        row(
            FlightState::HighManeuverability,
            256.0,
            -21.4,
            -23.2,
            4.26,
            0.74,
        ),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldComparison {
    pub field: String,
    pub achieved: f64,
    pub anchor: Option<f64>,
    pub abs_delta: Option<f64>,
    /// `(achieved - anchor) / |anchor|`; absent for a zero anchor.
    pub rel_delta: Option<f64>,
}

impl FieldComparison {
    fn new(field: &str, achieved: f64, anchor: Option<f64>, circular: bool) -> Self {
        let delta = anchor.map(|a| {
            if circular {
                wrap_deg_180(achieved - a)
            } else {
                achieved - a
            }
        });
        let rel_delta = match (delta, anchor) {
            (Some(d), Some(a)) if a != 0.0 => Some(d / a.abs()),
            _ => None,
        };
        Self {
            field: field.to_string(),
            achieved,
            anchor,
            abs_delta: delta.map(f64::abs),
            rel_delta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateComparison {
    pub state: FlightState,
    pub cl_beta_per_rad: f64,
    pub fields: Vec<FieldComparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateReport {
    pub states: Vec<StateComparison>,
}

/// Compares each selected state with its anchor row. Phase deltas are taken
/// on the circle.
pub fn state_report(set: &FlightStateSet, anchors: &[StateAnchor]) -> StateReport {
    let states = set
        .iter()
        .map(|sel| {
            let a = anchors.iter().find(|a| a.state == sel.state);
            let v = sel.values();
            let get = |f: fn(&StateAnchor) -> Option<f64>| a.and_then(f);
            StateComparison {
                state: sel.state,
                cl_beta_per_rad: v.cl_beta.total,
                fields: vec![
                    FieldComparison::new(
                        "phase_deg",
                        sel.point.phase_deg,
                        get(|a| a.phase_deg),
                        true,
                    ),
                    FieldComparison::new("psi1_deg", v.psi1_deg, get(|a| a.psi1_deg), false),
                    FieldComparison::new("psi2_deg", v.psi2_deg, get(|a| a.psi2_deg), false),
                    FieldComparison::new(
                        "lift_drag_ratio",
                        v.lift_drag_ratio,
                        get(|a| a.lift_drag_ratio),
                        false,
                    ),
                    FieldComparison::new(
                        "roll_moment_nm",
                        v.roll_moment_nm,
                        get(|a| a.roll_moment_nm),
                        false,
                    ),
                ],
            }
        })
        .collect();
    StateReport { states }
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

impl fmt::Display for StateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for s in &self.states {
            let _ = writeln!(
                out,
                "{} (C_l_beta = {:.6} /rad)",
                s.state, s.cl_beta_per_rad
            );
            let _ = writeln!(
                out,
                "  {:<16} {:>12} {:>12} {:>12} {:>12}",
                "field", "achieved", "anchor", "|delta|", "rel delta"
            );
            for c in &s.fields {
                let _ = writeln!(
                    out,
                    "  {:<16} {:>12} {:>12} {:>12} {:>12}",
                    c.field,
                    format!("{:.4}", c.achieved),
                    cell(c.anchor),
                    cell(c.abs_delta),
                    cell(c.rel_delta)
                );
            }
        }
        f.write_str(&out)
    }
}
