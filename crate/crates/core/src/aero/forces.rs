use serde::{Deserialize, Serialize};

use super::{
    check_flow_regime, dihedral_stability, drag_coefficient, lift_coefficient, AeroError,
    AirfoilPolar, ClBetaBreakdown, FlightCondition, StabilityConfig, WingGeometry,
};
use crate::linkage::DihedralPair;

/// Projected-area factor `(S1 cos psi1 + S2 cos psi2) / (S1 + S2)`.
pub fn geometric_factor(d: &DihedralPair, geom: &WingGeometry) -> f64 {
    let (s1, s2) = (geom.s1(), geom.s2());
    (s1 * d.psi1.cos() + s2 * d.psi2.cos()) / (s1 + s2)
}

/// Lift and drag (N) of both half-wings, ignoring roll motion.
pub fn morphing_forces(
    cond: &FlightCondition,
    geom: &WingGeometry,
    d: &DihedralPair,
    polar: &AirfoilPolar,
) -> Result<(f64, f64), AeroError> {
    check_flow_regime(cond)?;
    let cl = lift_coefficient(cond.alpha, polar)?;
    let cd = drag_coefficient(cl, polar);
    let q = cond.dynamic_pressure();
    let (s1, s2) = (geom.s1(), geom.s2());
    let lift = q * cl * (s1 * d.psi1.cos() + s2 * d.psi2.cos()) * 2.0;
    let drag = q * cd * (s1 + s2) * 2.0;
    Ok((lift, drag))
}

/// `K = (C_L / C_D) * geometric_factor`.
pub fn lift_drag_ratio(
    d: &DihedralPair,
    geom: &WingGeometry,
    cl: f64,
    cd: f64,
) -> Result<f64, AeroError> {
    if cd.is_nan() || cd <= 0.0 {
        return Err(AeroError::ZeroDrag { cd });
    }
    Ok(cl / cd * geometric_factor(d, geom))
}

/// Dimensional roll moment (N m) at the condition's sideslip:
/// `q * S_total * b * C_l_beta * beta`, with both-side area and full span.
pub fn roll_moment(cond: &FlightCondition, geom: &WingGeometry, cl_beta: f64) -> f64 {
    cond.dynamic_pressure() * geom.total_area() * geom.full_span() * cl_beta * cond.beta
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AeroResult {
    pub cl: f64,
    pub cd: f64,
    pub lift: f64,
    pub drag: f64,
    pub lift_drag_ratio: f64,
    pub cl_beta: ClBetaBreakdown,
    pub roll_moment: f64,
}

/// Full quasi-steady evaluation at one wing shape.
pub fn evaluate_aero(
    cond: &FlightCondition,
    geom: &WingGeometry,
    d: &DihedralPair,
    polar: &AirfoilPolar,
    stability: &StabilityConfig,
) -> Result<AeroResult, AeroError> {
    let (lift, drag) = morphing_forces(cond, geom, d, polar)?;
    let cl = lift_coefficient(cond.alpha, polar)?;
    let cd = drag_coefficient(cl, polar);
    let k = lift_drag_ratio(d, geom, cl, cd)?;
    let cl_beta = dihedral_stability(d, geom, polar, stability);
    Ok(AeroResult {
        cl,
        cd,
        lift,
        drag,
        lift_drag_ratio: k,
        cl_beta,
        roll_moment: roll_moment(cond, geom, cl_beta.total),
    })
}
