use rayon::prelude::*;
use serde::Serialize;
use std::io::{self, Write};

use super::{
    pose_to_dihedrals, solve_fourbar, validate_params, DihedralPair, LinkageError, LinkageParams,
    LinkagePose, PhaseMapping,
};
use crate::angle::{deg, rad};

/// Largest accepted sweep step, degrees.
pub const MAX_GRID_STEP_DEG: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinematicSample {
    pub phase_deg: f64,
    pub crank_angle: f64,
    /// `None` marks a gap: the linkage cannot be assembled on the held branch.
    pub pose: Option<LinkagePose>,
    pub dihedrals: Option<DihedralPair>,
}

impl KinematicSample {
    pub fn assemblable(&self) -> bool {
        self.pose.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KinematicCurve {
    pub params: LinkageParams,
    pub mapping: PhaseMapping,
    pub grid_step_deg: f64,
    pub samples: Vec<KinematicSample>,
}

impl KinematicCurve {
    pub fn gap_count(&self) -> usize {
        self.samples.iter().filter(|s| !s.assemblable()).count()
    }

    /// CSV with columns `phase_deg, psi1_deg, psi2_deg, mu_deg, assemblable`.
    /// Gap rows leave the angle columns empty.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "phase_deg,psi1_deg,psi2_deg,mu_deg,assemblable")?;
        for s in &self.samples {
            match (s.pose, s.dihedrals) {
                (Some(pose), Some(d)) => writeln!(
                    w,
                    "{:.6},{:.6},{:.6},{:.6},1",
                    s.phase_deg,
                    deg(d.psi1),
                    deg(d.psi2),
                    deg(pose.transmission_angle)
                )?,
                _ => writeln!(w, "{:.6},,,,0", s.phase_deg)?,
            }
        }
        Ok(())
    }
}

/// Uniform phase grid `k * step` covering `[0, 360)` degrees.
///
/// Phases are generated from the integer index, so a grid of step `h/2`
/// contains the exact same phase values as a grid of step `h` at shared points.
pub fn phase_grid(step_deg: f64) -> Result<Vec<f64>, LinkageError> {
    if !(step_deg.is_finite() && step_deg > 0.0 && step_deg <= MAX_GRID_STEP_DEG) {
        return Err(LinkageError::InvalidGridStep { step_deg });
    }
    let n = (360.0 / step_deg - 1e-9).ceil() as usize;
    Ok((0..n).map(|k| k as f64 * step_deg).collect())
}

/// Kinematic state at one phase; gaps are returned as `None` pose.
pub fn sample_phase(p: &LinkageParams, m: &PhaseMapping, phase_deg: f64) -> KinematicSample {
    let crank_angle = m.crank_angle(rad(phase_deg));
    match solve_fourbar(p, crank_angle, m.branch) {
        Ok(pose) => KinematicSample {
            phase_deg,
            crank_angle,
            dihedrals: Some(pose_to_dihedrals(&pose, p, m)),
            pose: Some(pose),
        },
        Err(_) => KinematicSample {
            phase_deg,
            crank_angle,
            pose: None,
            dihedrals: None,
        },
    }
}

/// Solves the linkage over the full phase circle on a fixed branch.
pub fn sweep_crank(
    p: &LinkageParams,
    m: &PhaseMapping,
    grid_step_deg: f64,
) -> Result<KinematicCurve, LinkageError> {
    let p = validate_params(*p)?;
    let grid = phase_grid(grid_step_deg)?;
    let samples: Vec<KinematicSample> = grid
        .par_iter()
        .map(|&phase| sample_phase(&p, m, phase))
        .collect();
    if samples.iter().all(|s| !s.assemblable()) {
        return Err(LinkageError::EmptySweep);
    }
    Ok(KinematicCurve {
        params: p,
        mapping: *m,
        grid_step_deg,
        samples,
    })
}
