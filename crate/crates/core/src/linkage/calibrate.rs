use serde::{Deserialize, Serialize};

use super::{
    pose_to_dihedrals, solve_fourbar, validate_params, Branch, LinkageError, LinkageParams,
    PhaseMapping,
};
use crate::angle::{deg, rad, wrap_deg_180, wrap_two_pi};
use crate::search::golden_section;

/// Reference inner-wing dihedral at a given phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseAnchor {
    pub phase_deg: f64,
    pub psi1_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub mapping: PhaseMapping,
    pub rms_residual_deg: f64,
    /// RMS of the default mapping (offset 0, elbow-up, +1); `None` when that
    /// mapping cannot reach every anchor.
    pub uncalibrated_rms_deg: Option<f64>,
    /// Predicted inner dihedral at each anchor phase under `mapping`.
    pub predicted_psi1_deg: Vec<f64>,
}

const GRID_STEP_DEG: f64 = 0.5;
/// Refinement runs far below the 0.01 deg requirement so exact fits reach
/// round-off residuals.
const REFINE_TOL_RAD: f64 = 1e-12;

fn predicted_psi1(p: &LinkageParams, m: &PhaseMapping, phase_deg: f64) -> Option<f64> {
    let pose = solve_fourbar(p, m.crank_angle(rad(phase_deg)), m.branch).ok()?;
    Some(deg(pose_to_dihedrals(&pose, p, m).psi1))
}

/// Sum of squared wrapped residuals in degrees; `None` if any anchor is a gap.
fn sse(p: &LinkageParams, m: &PhaseMapping, anchors: &[PhaseAnchor]) -> Option<f64> {
    let mut total = 0.0;
    for a in anchors {
        let r = wrap_deg_180(predicted_psi1(p, m, a.phase_deg)? - a.psi1_deg);
        total += r * r;
    }
    Some(total)
}

/// RMS inner-dihedral residual (deg) of `m` against `anchors`.
pub fn prediction_rms(p: &LinkageParams, m: &PhaseMapping, anchors: &[PhaseAnchor]) -> Option<f64> {
    if anchors.is_empty() {
        return None;
    }
    sse(p, m, anchors).map(|s| (s / anchors.len() as f64).sqrt())
}

/// Fits phase offset, branch and rotation sign to inner-dihedral anchors.
///
/// Exhaustive 0.5 deg grid over the offset for each branch/sign pair, then a
/// golden-section refinement around each pair's best grid point. Ties keep
/// the earlier candidate in the order elbow-up before elbow-down, +1 before
/// -1, ascending offset, so the default mapping wins any exact tie at zero.
/// `base.psi2_mode` is carried through unchanged.
pub fn calibrate_phase_mapping(
    p: &LinkageParams,
    base: &PhaseMapping,
    anchors: &[PhaseAnchor],
) -> Result<Calibration, LinkageError> {
    let p = validate_params(*p)?;
    if anchors.is_empty() {
        return Err(LinkageError::NoAnchors);
    }
    let n_grid = (360.0 / GRID_STEP_DEG) as usize;
    let mut best: Option<(PhaseMapping, f64)> = None;

    for branch in [Branch::ElbowUp, Branch::ElbowDown] {
        for sign in [1i8, -1] {
            let at = |offset: f64| PhaseMapping::new(offset, sign, branch, base.psi2_mode);
            let mut combo_best: Option<(f64, f64)> = None;
            for k in 0..n_grid {
                let offset = rad(k as f64 * GRID_STEP_DEG);
                if let Some(f) = sse(&p, &at(offset), anchors) {
                    if combo_best.is_none_or(|(_, bf)| f < bf) {
                        combo_best = Some((offset, f));
                    }
                }
            }
            let Some((grid_offset, grid_f)) = combo_best else {
                continue;
            };
            let half = rad(GRID_STEP_DEG);
            let refined = golden_section(
                |o| sse(&p, &at(o), anchors).unwrap_or(f64::INFINITY),
                grid_offset - half,
                grid_offset + half,
                REFINE_TOL_RAD,
                200,
            );
            let (offset, f) = if refined.f < grid_f {
                (wrap_two_pi(refined.x), refined.f)
            } else {
                (grid_offset, grid_f)
            };
            if best.as_ref().is_none_or(|(_, bf)| f < *bf) {
                best = Some((at(offset), f));
            }
        }
    }

    let (mapping, f) = best.ok_or(LinkageError::NoFeasibleMapping)?;
    let uncalibrated = PhaseMapping {
        psi2_mode: base.psi2_mode,
        ..PhaseMapping::default()
    };
    Ok(Calibration {
        mapping,
        rms_residual_deg: (f / anchors.len() as f64).sqrt(),
        uncalibrated_rms_deg: prediction_rms(&p, &uncalibrated, anchors),
        predicted_psi1_deg: anchors
            .iter()
            .map(|a| predicted_psi1(&p, &mapping, a.phase_deg).unwrap_or(f64::NAN))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::Psi2Mode;

    #[test]
    fn planted_offset_is_recovered() {
        let p = LinkageParams::prototype();
        let truth = PhaseMapping::new(rad(30.0), 1, Branch::ElbowUp, Psi2Mode::Coupler);
        let anchors: Vec<PhaseAnchor> = [0.0, 48.0, 130.0, 256.0]
            .iter()
            .map(|&ph| PhaseAnchor {
                phase_deg: ph,
                psi1_deg: predicted_psi1(&p, &truth, ph).unwrap(),
            })
            .collect();
        let cal = calibrate_phase_mapping(&p, &PhaseMapping::default(), &anchors).unwrap();
        assert_eq!(cal.mapping.branch, Branch::ElbowUp);
        assert_eq!(cal.mapping.rotation_sign, 1);
        assert!((deg(cal.mapping.phase_offset) - 30.0).abs() < 0.05);
        assert!(cal.rms_residual_deg < 1e-6);
    }

    #[test]
    fn uncalibrated_fixed_point() {
        let p = LinkageParams::prototype();
        let anchor = PhaseAnchor {
            phase_deg: 10.0,
            psi1_deg: predicted_psi1(&p, &PhaseMapping::default(), 10.0).unwrap(),
        };
        let cal = calibrate_phase_mapping(&p, &PhaseMapping::default(), &[anchor]).unwrap();
        assert_eq!(cal.mapping, PhaseMapping::default());
        assert_eq!(cal.rms_residual_deg, 0.0);
        assert_eq!(cal.uncalibrated_rms_deg, Some(0.0));
    }

    #[test]
    fn no_anchors_rejected() {
        let p = LinkageParams::prototype();
        assert_eq!(
            calibrate_phase_mapping(&p, &PhaseMapping::default(), &[]),
            Err(LinkageError::NoAnchors)
        );
    }

    #[test]
    fn deterministic() {
        let p = LinkageParams::prototype();
        let anchors = [
            PhaseAnchor {
                phase_deg: 0.0,
                psi1_deg: -1.0,
            },
            PhaseAnchor {
                phase_deg: 48.0,
                psi1_deg: 37.8,
            },
            PhaseAnchor {
                phase_deg: 256.0,
                psi1_deg: -21.4,
            },
        ];
        let a = calibrate_phase_mapping(&p, &PhaseMapping::default(), &anchors).unwrap();
        let b = calibrate_phase_mapping(&p, &PhaseMapping::default(), &anchors).unwrap();
        assert_eq!(a, b);
    }
}
