use serde::{Deserialize, Serialize};

use super::{MorphCurve, MorphologyError, PhaseValues, StatePoint};
use crate::FlightState;

/// Thresholds for the selection rules.
///
/// * gliding: maximum `K` among phases with `C_l_beta < -stability_margin`
/// * descending: minimum `C_l_beta`
/// * high maneuverability: maximum `C_l_beta` among phases with
///   `K >= kappa * max K`
///
/// Ties resolve to the smallest phase; each state takes a phase not already
/// taken by an earlier state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionThresholds {
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default)]
    pub stability_margin: f64,
}

fn default_kappa() -> f64 {
    0.3
}

impl Default for SelectionThresholds {
    fn default() -> Self {
        Self {
            kappa: default_kappa(),
            stability_margin: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedState {
    pub state: FlightState,
    pub point: StatePoint,
    pub rule: String,
}

impl SelectedState {
    pub fn values(&self) -> &PhaseValues {
        self.point
            .values
            .as_ref()
            .expect("selected points are assemblable")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlightStateSet {
    pub thresholds: SelectionThresholds,
    pub gliding: SelectedState,
    pub descending: SelectedState,
    pub high_maneuverability: SelectedState,
}

impl FlightStateSet {
    pub fn get(&self, state: FlightState) -> &SelectedState {
        match state {
            FlightState::Gliding => &self.gliding,
            FlightState::Descending => &self.descending,
            FlightState::HighManeuverability => &self.high_maneuverability,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &SelectedState> {
        [&self.gliding, &self.descending, &self.high_maneuverability].into_iter()
    }
}

/// Best admissible, untaken point by `key`; the first one wins ties.
fn pick<'a, A, K>(
    pts: &[(&'a StatePoint, &'a PhaseValues)],
    taken: &[f64],
    admissible: A,
    key: K,
    maximize: bool,
) -> Option<(&'a StatePoint, &'a PhaseValues)>
where
    A: Fn(&PhaseValues) -> bool,
    K: Fn(&PhaseValues) -> f64,
{
    let mut best: Option<(&StatePoint, &PhaseValues)> = None;
    for &(p, v) in pts {
        if taken.contains(&p.phase_deg) || !admissible(v) {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, b)) if maximize => key(v) > key(b),
            Some((_, b)) => key(v) < key(b),
        };
        if better {
            best = Some((p, v));
        }
    }
    best
}

pub fn select_flight_states(
    curve: &MorphCurve,
    thresholds: &SelectionThresholds,
) -> Result<FlightStateSet, MorphologyError> {
    let mut pts: Vec<_> = curve.assemblable_points().collect();
    if pts.len() < 3 {
        return Err(MorphologyError::TooFewPoints { found: pts.len() });
    }
    pts.sort_by(|a, b| a.0.phase_deg.total_cmp(&b.0.phase_deg));

    let margin = thresholds.stability_margin;
    let (gp, _) = pick(
        &pts,
        &[],
        |v| v.cl_beta.total < -margin,
        |v| v.lift_drag_ratio,
        true,
    )
    .ok_or_else(|| MorphologyError::CriterionUnsatisfiable {
        state: FlightState::Gliding,
        reason: format!("no assemblable phase has C_l_beta < {}", -margin),
    })?;

    let (dp, _) = pick(&pts, &[gp.phase_deg], |_| true, |v| v.cl_beta.total, false).ok_or(
        MorphologyError::CriterionUnsatisfiable {
            state: FlightState::Descending,
            reason: "no phase left after gliding".into(),
        },
    )?;

    let k_max = pts
        .iter()
        .map(|(_, v)| v.lift_drag_ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    let k_floor = thresholds.kappa * k_max;
    let (hp, _) = pick(
        &pts,
        &[gp.phase_deg, dp.phase_deg],
        |v| v.lift_drag_ratio >= k_floor,
        |v| v.cl_beta.total,
        true,
    )
    .ok_or_else(|| MorphologyError::CriterionUnsatisfiable {
        state: FlightState::HighManeuverability,
        reason: format!("no remaining phase has K >= {k_floor:.6}"),
    })?;

    Ok(FlightStateSet {
        thresholds: *thresholds,
        gliding: SelectedState {
            state: FlightState::Gliding,
            point: *gp,
            rule: format!("max K subject to C_l_beta < {}", -margin),
        },
        descending: SelectedState {
            state: FlightState::Descending,
            point: *dp,
            rule: "min C_l_beta".into(),
        },
        high_maneuverability: SelectedState {
            state: FlightState::HighManeuverability,
            point: *hp,
            rule: format!("max C_l_beta subject to K >= {} * max K", thresholds.kappa),
        },
    })
}
