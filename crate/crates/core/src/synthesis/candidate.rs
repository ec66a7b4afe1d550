use serde::{Deserialize, Serialize};

use super::{SynthesisError, SynthesisProblem};
use crate::angle::deg;
use crate::linkage::{
    grashof_classify, sample_phase, sweep_crank, transmission_quality, GrashofClass,
    KinematicSample, LinkageError, LinkageParams, PhaseMapping,
};
use crate::search::golden_section;
use crate::FlightState;

/// Dense search resolution for each state's phase.
const SCAN_STEP_DEG: f64 = 1.0;
const REFINE_TOL_DEG: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateAchievement {
    pub state: FlightState,
    pub phase_deg: f64,
    pub crank_angle_deg: f64,
    pub psi1_deg: f64,
    pub psi2_deg: f64,
    pub band_violation_deg: f64,
    pub transmission_angle_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveBreakdown {
    pub band_violation_deg: f64,
    pub transmission_shortfall_deg: f64,
    /// Total primary link length over the sum of upper bounds.
    pub compactness: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateReport {
    /// Reusable as the `linkage` block of a configuration.
    pub params: LinkageParams,
    pub mapping: PhaseMapping,
    pub grashof: GrashofClass,
    pub states: Vec<StateAchievement>,
    /// Worst `min(mu, 180 - mu)` over all assemblable phases, degrees.
    pub min_transmission_angle_deg: f64,
    pub objective: ObjectiveBreakdown,
}

impl CandidateReport {
    pub fn state(&self, state: FlightState) -> &StateAchievement {
        self.states
            .iter()
            .find(|s| s.state == state)
            .expect("all three states are reported")
    }
}

fn achievement(
    state: FlightState,
    s: &KinematicSample,
    violation: f64,
) -> Option<StateAchievement> {
    let (pose, d) = (s.pose?, s.dihedrals?);
    Some(StateAchievement {
        state,
        phase_deg: s.phase_deg,
        crank_angle_deg: deg(s.crank_angle),
        psi1_deg: deg(d.psi1),
        psi2_deg: deg(d.psi2),
        band_violation_deg: violation,
        transmission_angle_deg: deg(pose.transmission_angle),
    })
}

/// Scores a linkage against the problem's bands and transmission floor.
///
/// Each state's phase minimises its band violation on a 1 deg scan, refined
/// by golden section within one grid step either side. Ties keep the smallest
/// phase.
pub fn evaluate_candidate(
    params: &LinkageParams,
    problem: &SynthesisProblem,
    mapping: &PhaseMapping,
) -> Result<CandidateReport, SynthesisError> {
    let curve = sweep_crank(params, mapping, SCAN_STEP_DEG)?;
    let params = curve.params;
    let grashof = grashof_classify(params)?;

    let min_quality = curve
        .samples
        .iter()
        .filter_map(|s| s.pose)
        .map(|p| transmission_quality(p.transmission_angle))
        .fold(f64::INFINITY, f64::min);

    let mut states = Vec::with_capacity(3);
    for state in FlightState::ALL {
        let band = problem.targets.band(state);
        let score = |s: &KinematicSample| {
            s.dihedrals
                .map(|d| band.violation(deg(d.psi1), deg(d.psi2)))
                .unwrap_or(f64::INFINITY)
        };
        let (mut best, mut best_v) = (curve.samples[0], score(&curve.samples[0]));
        for s in &curve.samples[1..] {
            let v = score(s);
            if v < best_v {
                best = *s;
                best_v = v;
            }
        }
        if best_v > 0.0 {
            let refined = golden_section(
                |ph| score(&sample_phase(&params, mapping, ph)),
                best.phase_deg - SCAN_STEP_DEG,
                best.phase_deg + SCAN_STEP_DEG,
                REFINE_TOL_DEG,
                200,
            );
            if refined.f < best_v {
                best = sample_phase(&params, mapping, refined.x.rem_euclid(360.0));
                best_v = score(&best);
            }
        }
        states.push(achievement(state, &best, best_v).ok_or(LinkageError::EmptySweep)?);
    }

    let band_violation_deg: f64 = states.iter().map(|s| s.band_violation_deg).sum();
    let transmission_shortfall_deg =
        (problem.min_transmission_angle_deg - deg(min_quality)).max(0.0);
    let upper: f64 = problem.bounds.as_array().iter().map(|b| b.hi()).sum();
    let compactness = params.lengths().iter().sum::<f64>() / upper;
    let w = problem.weights;
    let total = w.band * band_violation_deg
        + w.transmission * transmission_shortfall_deg
        + w.compactness * compactness;

    Ok(CandidateReport {
        params,
        mapping: *mapping,
        grashof,
        states,
        min_transmission_angle_deg: deg(min_quality),
        objective: ObjectiveBreakdown {
            band_violation_deg,
            transmission_shortfall_deg,
            compactness,
            total,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::solve_fourbar;
    use crate::synthesis::{Band, Psi2Band, StateBand, StateTargets};

    #[test]
    fn planted_bands_are_hit_exactly() {
        let p = LinkageParams::prototype();
        let m = PhaseMapping::default();
        let at = |ph: f64| sample_phase(&p, &m, ph).dihedrals.unwrap();
        let band_at = |ph: f64| {
            let d = at(ph);
            StateBand {
                psi1_deg: Band(deg(d.psi1) - 0.5, deg(d.psi1) + 0.5),
                psi2_deg: Psi2Band::Range(Band(deg(d.psi2) - 0.5, deg(d.psi2) + 0.5)),
            }
        };
        let problem = SynthesisProblem {
            targets: StateTargets {
                gliding: band_at(10.0),
                descending: band_at(100.0),
                high_maneuverability: band_at(250.0),
            },
            ..Default::default()
        };
        let r = evaluate_candidate(&p, &problem, &m).unwrap();
        assert_eq!(r.objective.band_violation_deg, 0.0);
        for s in &r.states {
            // reproducible through the forward solver
            let pose = solve_fourbar(&p, s.crank_angle_deg.to_radians(), m.branch).unwrap();
            assert!((deg(pose.transmission_angle) - s.transmission_angle_deg).abs() < 1e-9);
        }
    }

    #[test]
    fn prototype_has_transmission_shortfall() {
        let r = evaluate_candidate(
            &LinkageParams::prototype(),
            &SynthesisProblem::default(),
            &PhaseMapping::default(),
        )
        .unwrap();
        assert!(r.min_transmission_angle_deg < 40.0);
        assert!(r.min_transmission_angle_deg <= 32.6 + 0.05);
        assert!(r.objective.transmission_shortfall_deg > 0.0);
        assert_eq!(r.grashof, GrashofClass::CrankRocker);
    }
}
