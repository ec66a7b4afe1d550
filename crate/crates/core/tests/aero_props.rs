mod common;

use common::simpson;
use morphwing::aero::{
    dihedral_stability, drag_coefficient, geometric_factor, lift_coefficient, lift_drag_ratio,
    morphing_forces, panel_centroids, AeroError, AirfoilPolar, FlightCondition, HalfEllipsePanel,
    RectPanel, StabilityConfig, WingGeometry,
};
use morphwing::linkage::DihedralPair;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

fn geometry(b1: f64, c1: f64, b2: f64, c2: f64) -> WingGeometry {
    WingGeometry {
        inner: RectPanel {
            span: b1,
            chord: c1,
        },
        outer: HalfEllipsePanel {
            span: b2,
            root_chord: c2,
        },
    }
}

fn dihedral() -> impl Strategy<Value = f64> {
    -(FRAC_PI_2 - 1e-3)..(FRAC_PI_2 - 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn k_equals_force_ratio(
        b1 in 0.05f64..2.0, c1 in 0.02f64..0.5, b2 in 0.05f64..2.0, c2 in 0.02f64..0.5,
        psi1 in dihedral(), psi2 in dihedral(), alpha_deg in -10.0f64..12.0,
    ) {
        let g = geometry(b1, c1, b2, c2);
        let polar = AirfoilPolar::default();
        let cond = FlightCondition { alpha: alpha_deg.to_radians(), ..FlightCondition::default() };
        let d = DihedralPair::new(psi1, psi2);
        let (lift, drag) = morphing_forces(&cond, &g, &d, &polar).unwrap();
        let cl = lift_coefficient(cond.alpha, &polar).unwrap();
        let k = lift_drag_ratio(&d, &g, cl, drag_coefficient(cl, &polar)).unwrap();
        prop_assert!((k - lift / drag).abs() <= 1e-12 * k.abs().max(1e-300));
    }

    #[test]
    fn geometric_factor_bounds(
        b1 in 0.05f64..2.0, c1 in 0.02f64..0.5, b2 in 0.05f64..2.0, c2 in 0.02f64..0.5,
        psi1 in dihedral(), psi2 in dihedral(),
    ) {
        let g = geometry(b1, c1, b2, c2);
        let f = geometric_factor(&DihedralPair::new(psi1, psi2), &g);
        prop_assert!(f > 0.0 && f <= 1.0);
        if psi1 != 0.0 || psi2 != 0.0 {
            prop_assert!(f < 1.0);
        }
        prop_assert_eq!(geometric_factor(&DihedralPair::new(0.0, 0.0), &g), 1.0);
    }

    #[test]
    fn factor_monotone_in_area_ratio(
        b1 in 0.05f64..2.0, c1 in 0.02f64..0.5, grow in 1.01f64..3.0,
        psi1 in dihedral(), psi2 in dihedral(),
    ) {
        prop_assume!((psi1.cos() - psi2.cos()).abs() > 1e-6);
        let d = DihedralPair::new(psi1, psi2);
        let small = geometric_factor(&d, &geometry(b1, c1, 0.3, 0.2));
        let large = geometric_factor(&d, &geometry(b1, c1 * grow, 0.3, 0.2));
        if psi2.cos() / psi1.cos() < 1.0 {
            prop_assert!(large > small);
        } else {
            prop_assert!(large < small);
        }
    }

    #[test]
    fn equal_cosines_give_constant_factor(b1 in 0.05f64..2.0, c1 in 0.02f64..0.5, psi in dihedral()) {
        let d = DihedralPair::new(psi, -psi);
        let a = geometric_factor(&d, &geometry(b1, c1, 0.3, 0.2));
        let b = geometric_factor(&d, &geometry(b1 * 2.5, c1, 0.3, 0.2));
        prop_assert!((a - b).abs() < 1e-14);
        prop_assert!((a - psi.cos()).abs() < 1e-14);
    }

    #[test]
    fn cl_beta_linear_decreasing_antisymmetric(
        b1 in 0.05f64..2.0, b2 in 0.05f64..2.0, cla in 0.5f64..8.0,
        psi1 in dihedral(), psi2 in dihedral(), step in 0.01f64..0.5,
    ) {
        let g = geometry(b1, 0.2, b2, 0.2);
        let polar = AirfoilPolar { cl_alpha: cla, ..AirfoilPolar::default() };
        let cfg = StabilityConfig::default();
        let c = |a: f64, b: f64| dihedral_stability(&DihedralPair::new(a, b), &g, &polar, &cfg).dihedral;
        let base = c(psi1, psi2);
        prop_assert!(c(psi1 + step, psi2) < base);
        prop_assert!(c(psi1, psi2 + step) < base);
        prop_assert!((c(-psi1, -psi2) + base).abs() < 1e-12 * (1.0 + base.abs()));
        // superposition
        let sum = c(psi1, 0.0) + c(0.0, psi2);
        prop_assert!((sum - base).abs() < 1e-12 * (1.0 + base.abs()));
    }

    #[test]
    fn table_five_sign_ordering(
        b1 in 0.05f64..2.0, b2 in 0.05f64..2.0, cla in 0.01f64..20.0,
    ) {
        let g = geometry(b1, 0.2, b2, 0.2);
        let polar = AirfoilPolar { cl_alpha: cla, ..AirfoilPolar::default() };
        let cfg = StabilityConfig::default();
        let c = |a: f64, b: f64| {
            dihedral_stability(&DihedralPair::from_degrees(a, b), &g, &polar, &cfg).dihedral
        };
        let gliding = c(-1.0, 27.1);
        let descending = c(37.8, 38.1);
        let high = c(-21.4, -23.2);
        prop_assert!(descending < gliding && gliding < 0.0 && 0.0 < high);
        prop_assert!(descending.abs() > gliding.abs());
    }
}

/// Area-weighted spanwise centroid of a panel, by quadrature.
fn quadrature_centroid<F: Fn(f64) -> f64>(chord: F, b: f64) -> f64 {
    let area = simpson(&chord, 0.0, b, 2000);
    simpson(|y| y * chord(y), 0.0, b, 2000) / area
}

#[test]
fn half_ellipse_centroid_matches_quadrature() {
    for b2 in [0.1, 0.1782, 0.5, 1.3] {
        // y = b2 sin(t) removes the square-root endpoint singularity
        let area = simpson(|t: f64| b2 * t.cos().powi(2), 0.0, FRAC_PI_2, 2000);
        let moment = simpson(
            |t: f64| b2 * t.sin() * b2 * t.cos().powi(2),
            0.0,
            FRAC_PI_2,
            2000,
        );
        let numeric = moment / area;
        let closed = 4.0 * b2 / (3.0 * PI);
        assert!(
            (numeric - closed).abs() < 1e-6 * closed,
            "{numeric} vs {closed}"
        );
    }
}

#[test]
fn panel_centroids_match_quadrature() {
    let g = WingGeometry::default();
    let (b1, b2) = (g.inner.span, g.outer.span);
    let inner = quadrature_centroid(|_| g.inner.chord, b1);
    let outer = b1
        + simpson(
            |t: f64| b2 * t.sin() * t.cos().powi(2),
            0.0,
            FRAC_PI_2,
            2000,
        ) / simpson(|t: f64| t.cos().powi(2), 0.0, FRAC_PI_2, 2000);
    let (y1, y2) = panel_centroids(&g);
    let semi = b1 + b2;
    assert!((y1 - inner / semi).abs() < 1e-6 * y1);
    assert!((y2 - outer / semi).abs() < 1e-6 * y2);
}

#[test]
fn lift_curve_domain() {
    let p = AirfoilPolar::default();
    let lo = p.alpha0 - FRAC_PI_4;
    assert!(lift_coefficient(lo, &p).is_ok());
    assert!(lift_coefficient(p.alpha_s, &p).is_ok());
    assert!(matches!(
        lift_coefficient(p.alpha_s + 1e-9, &p),
        Err(AeroError::StallExceeded { .. })
    ));
    assert!(lift_coefficient(lo - 1e-9, &p).is_err());
    for i in 0..=100 {
        let a = (lo + (p.alpha_s - lo) * i as f64 / 100.0).min(p.alpha_s);
        assert!(lift_coefficient(a, &p).unwrap().is_finite());
    }
}

#[test]
fn flow_regime_boundary() {
    let polar = AirfoilPolar::default();
    let d = DihedralPair::new(0.0, 0.0);
    let g = WingGeometry::default();
    let ok = FlightCondition {
        airspeed: 0.3 * 340.0,
        ..FlightCondition::default()
    };
    assert!(morphing_forces(&ok, &g, &d, &polar).is_ok());
    let fast = FlightCondition {
        airspeed: 0.31 * 340.0,
        ..FlightCondition::default()
    };
    assert!(matches!(
        morphing_forces(&fast, &g, &d, &polar),
        Err(AeroError::FlowRegimeViolation { .. })
    ));
}
