use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

use super::MorphologyError;
use crate::aero::{
    evaluate_aero, AirfoilPolar, ClBetaBreakdown, FlightCondition, StabilityConfig, WingGeometry,
};
use crate::angle::deg;
use crate::linkage::{
    phase_grid, sample_phase, validate_params, LinkageError, LinkageParams, PhaseMapping,
};

/// Everything a phase evaluation depends on. Doubles as the provenance block
/// of a [`MorphCurve`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelInputs {
    pub params: LinkageParams,
    pub mapping: PhaseMapping,
    pub geometry: WingGeometry,
    pub polar: AirfoilPolar,
    pub condition: FlightCondition,
    pub stability: StabilityConfig,
}

impl ModelInputs {
    fn validate(&self) -> Result<(), MorphologyError> {
        validate_params(self.params)?;
        self.geometry.validate()?;
        self.polar.validate()?;
        self.condition.validate()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseValues {
    pub psi1_deg: f64,
    pub psi2_deg: f64,
    pub lift_drag_ratio: f64,
    pub cl_beta: ClBetaBreakdown,
    pub roll_moment_nm: f64,
    pub mu_deg: f64,
    /// Both dihedrals strictly inside (-90, 90) degrees.
    pub dihedrals_physical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatePoint {
    pub phase_deg: f64,
    pub crank_angle_deg: f64,
    /// `None` when the linkage cannot be assembled at this phase.
    pub values: Option<PhaseValues>,
}

impl StatePoint {
    pub fn assemblable(&self) -> bool {
        self.values.is_some()
    }
}

/// Linkage pose, dihedrals and aerodynamics at one phase (degrees).
///
/// An unassemblable phase yields a flagged point; stall and flow-regime
/// violations are errors.
pub fn evaluate_phase(phase_deg: f64, inputs: &ModelInputs) -> Result<StatePoint, MorphologyError> {
    inputs.validate()?;
    evaluate_unchecked(phase_deg, inputs)
}

fn evaluate_unchecked(phase_deg: f64, inputs: &ModelInputs) -> Result<StatePoint, MorphologyError> {
    let s = sample_phase(&inputs.params, &inputs.mapping, phase_deg);
    let crank_angle_deg = deg(s.crank_angle);
    let (Some(pose), Some(d)) = (s.pose, s.dihedrals) else {
        return Ok(StatePoint {
            phase_deg,
            crank_angle_deg,
            values: None,
        });
    };
    let aero = evaluate_aero(
        &inputs.condition,
        &inputs.geometry,
        &d,
        &inputs.polar,
        &inputs.stability,
    )?;
    Ok(StatePoint {
        phase_deg,
        crank_angle_deg,
        values: Some(PhaseValues {
            psi1_deg: deg(d.psi1),
            psi2_deg: deg(d.psi2),
            lift_drag_ratio: aero.lift_drag_ratio,
            cl_beta: aero.cl_beta,
            roll_moment_nm: aero.roll_moment,
            mu_deg: deg(pose.transmission_angle),
            dihedrals_physical: d.is_physical(),
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphCurve {
    pub inputs: ModelInputs,
    pub grid_step_deg: f64,
    pub points: Vec<StatePoint>,
}

fn opt(v: f64) -> String {
    format!("{v:.6}")
}

impl MorphCurve {
    /// Recomputes the curve from its own provenance.
    pub fn regenerate(&self) -> Result<MorphCurve, MorphologyError> {
        sweep_morphology(&self.inputs, self.grid_step_deg)
    }

    pub fn assemblable_points(&self) -> impl Iterator<Item = (&StatePoint, &PhaseValues)> {
        self.points
            .iter()
            .filter_map(|p| p.values.as_ref().map(|v| (p, v)))
    }

    /// `phase_deg,psi1_deg,psi2_deg,K,cl_beta_per_rad,roll_moment_Nm,mu_deg,assemblable`
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "phase_deg,psi1_deg,psi2_deg,K,cl_beta_per_rad,roll_moment_Nm,mu_deg,assemblable"
        )?;
        for p in &self.points {
            match &p.values {
                Some(v) => writeln!(
                    w,
                    "{},{},{},{},{},{},{},1",
                    opt(p.phase_deg),
                    opt(v.psi1_deg),
                    opt(v.psi2_deg),
                    opt(v.lift_drag_ratio),
                    opt(v.cl_beta.total),
                    opt(v.roll_moment_nm),
                    opt(v.mu_deg)
                )?,
                None => writeln!(w, "{},,,,,,,0", opt(p.phase_deg))?,
            }
        }
        Ok(())
    }

    /// Two-column `phase value` data for plotting; gaps become blank lines so
    /// gnuplot breaks the line there.
    pub fn write_gnuplot<W: Write, F>(&self, mut w: W, label: &str, value: F) -> io::Result<()>
    where
        F: Fn(&PhaseValues) -> f64,
    {
        writeln!(w, "# phase_deg {label}")?;
        for p in &self.points {
            match &p.values {
                Some(v) => writeln!(w, "{} {}", opt(p.phase_deg), opt(value(v)))?,
                None => writeln!(w)?,
            }
        }
        Ok(())
    }
}

/// Evaluates every phase of a uniform grid over `[0, 360)` degrees.
pub fn sweep_morphology(
    inputs: &ModelInputs,
    grid_step_deg: f64,
) -> Result<MorphCurve, MorphologyError> {
    inputs.validate()?;
    let grid = phase_grid(grid_step_deg)?;
    let points = grid
        .par_iter()
        .map(|&phase| evaluate_unchecked(phase, inputs))
        .collect::<Result<Vec<_>, _>>()?;
    if points.iter().all(|p| !p.assemblable()) {
        return Err(LinkageError::EmptySweep.into());
    }
    Ok(MorphCurve {
        inputs: *inputs,
        grid_step_deg,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aero::{drag_coefficient, geometric_factor, lift_coefficient, lift_drag_ratio};
    use crate::linkage::{Branch, DihedralPair, Psi2Mode};

    pub(crate) fn prototype_inputs() -> ModelInputs {
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
    fn flat_wing_phase() {
        // parallelogram with zero offsets: both dihedrals equal crank - 90
        let mut inputs = prototype_inputs();
        inputs.params = LinkageParams::prototype().with_lengths(30.0, 60.0, 30.0, 60.0);
        inputs.params.epsilon = 0.0;
        inputs.params.xi = 0.0;
        inputs.mapping = PhaseMapping::new(0.0, 1, Branch::ElbowUp, Psi2Mode::Rocker);
        let p = evaluate_phase(90.0, &inputs).unwrap();
        let v = p.values.unwrap();
        assert!(v.psi1_deg.abs() < 1e-9 && v.psi2_deg.abs() < 1e-9);
        let cl = lift_coefficient(inputs.condition.alpha, &inputs.polar).unwrap();
        let cd = drag_coefficient(cl, &inputs.polar);
        assert!((v.lift_drag_ratio - cl / cd).abs() < 1e-12 * (cl / cd));
        assert!(v.cl_beta.dihedral.abs() < 1e-12);
    }

    #[test]
    fn gap_is_flagged_not_failed() {
        let mut inputs = prototype_inputs();
        inputs.params = LinkageParams::prototype().with_lengths(30.0, 20.0, 25.0, 28.0);
        let curve = sweep_morphology(&inputs, 1.0).unwrap();
        let gap = curve.points.iter().find(|p| !p.assemblable()).unwrap();
        assert!(evaluate_phase(gap.phase_deg, &inputs)
            .unwrap()
            .values
            .is_none());
    }

    #[test]
    fn stall_is_an_error() {
        let mut inputs = prototype_inputs();
        inputs.condition.alpha = 20f64.to_radians();
        assert!(matches!(
            evaluate_phase(0.0, &inputs),
            Err(MorphologyError::Aero(_))
        ));
        assert!(sweep_morphology(&inputs, 1.0).is_err());
    }

    #[test]
    fn prototype_sweep_has_360_points_and_matches_direct_calls() {
        let inputs = prototype_inputs();
        let curve = sweep_morphology(&inputs, 1.0).unwrap();
        assert_eq!(curve.points.len(), 360);
        assert!(curve.points.iter().all(|p| p.assemblable()));
        for p in curve.points.iter().step_by(37) {
            assert_eq!(*p, evaluate_phase(p.phase_deg, &inputs).unwrap());
            let v = p.values.unwrap();
            let d = DihedralPair::from_degrees(v.psi1_deg, v.psi2_deg);
            let cl = lift_coefficient(inputs.condition.alpha, &inputs.polar).unwrap();
            let k = lift_drag_ratio(
                &d,
                &inputs.geometry,
                cl,
                drag_coefficient(cl, &inputs.polar),
            )
            .unwrap();
            assert!((k - v.lift_drag_ratio).abs() < 1e-12);
            assert!(geometric_factor(&d, &inputs.geometry) <= 1.0);
        }
    }

    #[test]
    fn coarse_grid_is_subsample() {
        let inputs = prototype_inputs();
        let fine = sweep_morphology(&inputs, 1.0).unwrap();
        let coarse = sweep_morphology(&inputs, 2.0).unwrap();
        assert_eq!(coarse.points.len(), 180);
        for (i, p) in coarse.points.iter().enumerate() {
            assert_eq!(*p, fine.points[2 * i]);
        }
    }

    #[test]
    fn regenerates_bit_identically() {
        let curve = sweep_morphology(&prototype_inputs(), 3.0).unwrap();
        assert_eq!(curve.regenerate().unwrap(), curve);
    }

    #[test]
    fn csv_layout() {
        let curve = sweep_morphology(&prototype_inputs(), 10.0).unwrap();
        let mut buf = Vec::new();
        curve.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "phase_deg,psi1_deg,psi2_deg,K,cl_beta_per_rad,roll_moment_Nm,mu_deg,assemblable\n"
        ));
        assert_eq!(text.lines().count(), 37);
        assert!(!text.contains('\r'));
    }
}
