use serde::{Deserialize, Serialize};

use super::{panel_centroids, AirfoilPolar, WingGeometry};
use crate::linkage::DihedralPair;

/// Roll-stability contributions other than wing dihedral, per radian.
///
/// All default to zero. A conventional vertical tail contributes a negative
/// value; no number is assumed here.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityConfig {
    #[serde(default)]
    pub cl_beta_vt: f64,
    #[serde(default)]
    pub cl_beta_fuselage: f64,
    #[serde(default)]
    pub cl_beta_tip: f64,
}

/// `C_l_beta` terms, per radian. Negative total means laterally stable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClBetaBreakdown {
    pub dihedral: f64,
    pub tip: f64,
    pub fuselage: f64,
    pub vertical_tail: f64,
    pub total: f64,
}

/// `C_l_beta,psi = -1/2 C_L_alpha (y1 psi1 + y2 psi2)` plus the configured
/// tip, fuselage and tail terms. Dihedrals in radians.
pub fn dihedral_stability(
    d: &DihedralPair,
    geom: &WingGeometry,
    polar: &AirfoilPolar,
    cfg: &StabilityConfig,
) -> ClBetaBreakdown {
    let (y1, y2) = panel_centroids(geom);
    let dihedral = -0.5 * polar.cl_alpha * (y1 * d.psi1 + y2 * d.psi2);
    ClBetaBreakdown {
        dihedral,
        tip: cfg.cl_beta_tip,
        fuselage: cfg.cl_beta_fuselage,
        vertical_tail: cfg.cl_beta_vt,
        total: dihedral + cfg.cl_beta_tip + cfg.cl_beta_fuselage + cfg.cl_beta_vt,
    }
}
