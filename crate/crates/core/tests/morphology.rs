use morphwing::aero::{
    drag_coefficient, lift_coefficient, AirfoilPolar, ClBetaBreakdown, FlightCondition,
    StabilityConfig, WingGeometry,
};
use morphwing::linkage::{
    calibrate_phase_mapping, Branch, LinkageParams, PhaseAnchor, PhaseMapping, Psi2Mode,
};
use morphwing::morphology::{
    evaluate_phase, reference_anchors, select_flight_states, state_report, sweep_morphology,
    ModelInputs, MorphCurve, MorphologyError, PhaseValues, SelectionThresholds, StatePoint,
};
use morphwing::FlightState;
use std::time::Instant;

fn prototype_inputs() -> ModelInputs {
    ModelInputs {
        params: LinkageParams::prototype(),
        mapping: PhaseMapping::default(),
        geometry: WingGeometry::default(),
        polar: AirfoilPolar::default(),
        condition: FlightCondition::default(),
        stability: StabilityConfig::default(),
    }
}

#[test]
fn parallelogram_follows_cosine_factor() {
    let mut inputs = prototype_inputs();
    inputs.params = LinkageParams::prototype().with_lengths(30.0, 60.0, 30.0, 60.0);
    inputs.params.epsilon = 0.0;
    inputs.params.xi = 0.0;
    inputs.mapping = PhaseMapping::new(0.0, 1, Branch::ElbowUp, Psi2Mode::Rocker);
    let curve = sweep_morphology(&inputs, 1.0).unwrap();
    let cl = lift_coefficient(inputs.condition.alpha, &inputs.polar).unwrap();
    let ratio = cl / drag_coefficient(cl, &inputs.polar);
    for p in curve
        .points
        .iter()
        .filter(|p| p.phase_deg > 0.0 && p.phase_deg < 180.0)
    {
        let v = p.values.expect("upper half is on the elbow-up branch");
        // both dihedrals equal phase - 90
        let expected = ratio * (p.phase_deg - 90.0).to_radians().cos();
        assert!(
            (v.lift_drag_ratio - expected).abs() < 1e-9 * ratio,
            "phase {}",
            p.phase_deg
        );
    }
}

#[test]
fn prototype_sweep_full_and_fast() {
    let t = Instant::now();
    let curve = sweep_morphology(&prototype_inputs(), 1.0).unwrap();
    assert!(t.elapsed().as_secs_f64() < 1.0);
    assert_eq!(curve.points.len(), 360);
    assert!(curve.points.iter().all(|p| p.assemblable()));
    for w in curve.points.windows(2) {
        assert!(w[1].phase_deg > w[0].phase_deg);
    }
    assert_eq!(curve.regenerate().unwrap(), curve);
}

#[test]
fn points_match_direct_evaluation() {
    let inputs = prototype_inputs();
    let curve = sweep_morphology(&inputs, 5.0).unwrap();
    for p in &curve.points {
        assert_eq!(*p, evaluate_phase(p.phase_deg, &inputs).unwrap());
    }
}

fn synthetic(k: impl Fn(f64) -> f64, cl_beta: impl Fn(f64) -> f64) -> MorphCurve {
    let points = (0..360)
        .map(|i| {
            let phase = i as f64;
            let c = cl_beta(phase);
            StatePoint {
                phase_deg: phase,
                crank_angle_deg: phase,
                values: Some(PhaseValues {
                    psi1_deg: 0.0,
                    psi2_deg: 0.0,
                    lift_drag_ratio: k(phase),
                    cl_beta: ClBetaBreakdown {
                        dihedral: c,
                        tip: 0.0,
                        fuselage: 0.0,
                        vertical_tail: 0.0,
                        total: c,
                    },
                    roll_moment_nm: c,
                    mu_deg: 60.0,
                    dihedrals_physical: true,
                }),
            }
        })
        .collect();
    MorphCurve {
        inputs: prototype_inputs(),
        grid_step_deg: 1.0,
        points,
    }
}

#[test]
fn planted_extrema_are_selected() {
    let curve = synthetic(
        |ph| 10.0 - ((ph - 90.0) / 30.0).powi(2),
        |ph| -1.0 + ((ph - 200.0) / 150.0).powi(2),
    );
    let s = select_flight_states(&curve, &SelectionThresholds::default()).unwrap();
    assert_eq!(s.gliding.point.phase_deg, 90.0);
    assert_eq!(s.descending.point.phase_deg, 200.0);
    let hm = s.high_maneuverability.values();
    assert!(hm.lift_drag_ratio >= 0.3 * 10.0);
    assert!(hm.cl_beta.total > 0.0);
}

#[test]
fn all_unstable_fails_gliding() {
    let curve = synthetic(|_| 5.0, |ph| 0.1 + ph * 1e-3);
    match select_flight_states(&curve, &SelectionThresholds::default()) {
        Err(MorphologyError::CriterionUnsatisfiable { state, .. }) => {
            assert_eq!(state, FlightState::Gliding)
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn calibrated_prototype_report() {
    let mut inputs = prototype_inputs();
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
    inputs.mapping = calibrate_phase_mapping(&inputs.params, &inputs.mapping, &anchors)
        .unwrap()
        .mapping;
    let curve = sweep_morphology(&inputs, 1.0).unwrap();
    let set = select_flight_states(&curve, &SelectionThresholds::default()).unwrap();
    let report = state_report(&set, &reference_anchors());
    assert_eq!(report.states.len(), 3);
    for s in &report.states {
        assert_eq!(s.fields.len(), 5);
        assert!(s
            .fields
            .iter()
            .all(|f| f.anchor.is_some() && f.abs_delta.is_some()));
    }
    let json = serde_json::to_value(&report).unwrap();
    assert!(json["states"][0]["fields"][0]["rel_delta"].is_null());
}
