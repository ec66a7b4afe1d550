use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

use super::config::{hex, ConfigError, LoadedConfig, OutputFormat, ProjectConfig};
use crate::aero::AeroError;
use crate::angle::deg;
use crate::linkage::{
    calibrate_phase_mapping, grashof_classify, pose_to_dihedrals, solve_fourbar, Branch,
    Calibration, GrashofClass, LinkageError, PhaseAnchor, PhaseMapping, Point,
};
use crate::morphology::{
    evaluate_phase, select_flight_states, state_report, sweep_morphology, FlightStateSet,
    MorphologyError, StatePoint, StateReport,
};
use crate::synthesis::{
    synthesize_constrained, SynthesisError, SynthesisOutcome, SynthesisProblem,
};

pub const TOOL_NAME: &str = "morphwing";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Command {
    Solve { phase_deg: f64 },
    Classify,
    Sweep,
    Calibrate,
    Synthesize { seed: Option<u64> },
    States,
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Classify => "classify",
            Command::Sweep => "sweep",
            Command::Calibrate => "calibrate",
            Command::Synthesize { .. } => "synthesize",
            Command::States => "states",
            Command::Report => "report",
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Linkage(#[from] LinkageError),
    #[error(transparent)]
    Aero(#[from] AeroError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Morphology(#[from] MorphologyError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl RunError {
    pub fn class(&self) -> &'static str {
        match self {
            RunError::Config(e) => e.class(),
            RunError::Linkage(e) => e.class(),
            RunError::Aero(e) => e.class(),
            RunError::Synthesis(e) => e.class(),
            RunError::Morphology(e) => e.class(),
            RunError::Io { .. } => "Io",
        }
    }

    /// Process exit status: 2 for configuration problems, 3 for I/O, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            RunError::Io { .. } => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileRecord {
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Complete,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub class: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
    pub started_at: String,
    pub finished_at: String,
    pub status: RunStatus,
    pub error: Option<ErrorRecord>,
    pub notes: Vec<String>,
    /// Every file this run wrote, relative to the output directory. On
    /// failure these are the incomplete run's partial outputs.
    pub files: Vec<FileRecord>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

struct Emitter {
    dir: PathBuf,
    files: Vec<FileRecord>,
    notes: Vec<String>,
}

impl Emitter {
    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), RunError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|source| RunError::Io { path, source })?;
        self.files.push(FileRecord {
            path: name.to_string(),
            bytes: bytes.len() as u64,
            sha256: hex(&Sha256::digest(bytes)),
        });
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), RunError> {
        let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
        text.push('\n');
        self.write(name, text.as_bytes())
    }
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Runs one command, writing its data files and `manifest.json` into `out`.
///
/// The manifest is written on failure too (status `failed`) whenever the
/// output directory is usable.
pub fn run_command(
    cmd: Command,
    loaded: &LoadedConfig,
    out: &Path,
) -> Result<RunManifest, RunError> {
    let started_at = now();
    fs::create_dir_all(out).map_err(|source| RunError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let mut em = Emitter {
        dir: out.to_path_buf(),
        files: Vec::new(),
        notes: Vec::new(),
    };
    let result = dispatch(cmd, &loaded.config, &mut em);
    let manifest = RunManifest {
        tool: TOOL_NAME.into(),
        version: TOOL_VERSION.into(),
        command: cmd.name().into(),
        config_hash: loaded.hash(),
        started_at,
        finished_at: now(),
        status: if result.is_ok() {
            RunStatus::Complete
        } else {
            RunStatus::Failed
        },
        error: result.as_ref().err().map(|e| ErrorRecord {
            class: e.class().into(),
            message: e.to_string(),
        }),
        notes: em.notes.clone(),
        files: em.files.clone(),
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    let path = out.join(MANIFEST_FILE);
    let written = fs::write(&path, text).map_err(|source| RunError::Io { path, source });
    result?;
    written?;
    Ok(manifest)
}

fn dispatch(cmd: Command, cfg: &ProjectConfig, em: &mut Emitter) -> Result<(), RunError> {
    match cmd {
        Command::Solve { phase_deg } => solve(cfg, phase_deg, em),
        Command::Classify => classify(cfg, em),
        Command::Sweep => sweep(cfg, em),
        Command::Calibrate => calibrate(cfg, em).map(|_| ()),
        Command::Synthesize { seed } => synthesize(cfg, seed, em),
        Command::States => states(cfg, em),
        Command::Report => {
            classify(cfg, em)?;
            if calibration_anchors(cfg).is_some() {
                calibrate(cfg, em)?;
            } else {
                em.notes
                    .push("calibrate skipped: no anchors.calibration entries".into());
            }
            solve(cfg, 0.0, em)?;
            sweep(cfg, em)?;
            states(cfg, em)?;
            synthesize(cfg, None, em)
        }
    }
}

fn calibration_anchors(cfg: &ProjectConfig) -> Option<&[PhaseAnchor]> {
    cfg.anchors
        .as_ref()
        .map(|a| a.calibration.as_slice())
        .filter(|a| !a.is_empty())
}

fn run_calibration(cfg: &ProjectConfig) -> Result<Calibration, RunError> {
    let anchors = calibration_anchors(cfg).ok_or_else(|| {
        ConfigError::schema("anchors.calibration", "at least one anchor is required")
    })?;
    Ok(calibrate_phase_mapping(
        &cfg.params(),
        &cfg.linkage.mapping,
        anchors,
    )?)
}

/// The configured mapping, or the calibrated one when requested.
fn active_mapping(cfg: &ProjectConfig) -> Result<PhaseMapping, RunError> {
    if cfg
        .anchors
        .as_ref()
        .is_some_and(|a| a.use_calibrated_mapping)
    {
        Ok(run_calibration(cfg)?.mapping)
    } else {
        Ok(cfg.linkage.mapping)
    }
}

#[derive(Serialize)]
struct PoseView {
    crank_angle_deg: f64,
    rocker_angle_deg: f64,
    coupler_angle_deg: f64,
    transmission_angle_deg: f64,
    branch: Branch,
    /// Crank pivot, crank pin, rocker pin, rocker pivot (mm).
    joints: [Point; 4],
    psi1_deg: f64,
    psi2_deg: f64,
}

#[derive(Serialize)]
struct SolveReport {
    phase_deg: f64,
    mapping: PhaseMapping,
    pose: PoseView,
    state: Option<StatePoint>,
}

fn solve(cfg: &ProjectConfig, phase_deg: f64, em: &mut Emitter) -> Result<(), RunError> {
    let mapping = active_mapping(cfg)?;
    let p = cfg.params();
    let pose = solve_fourbar(
        &p,
        mapping.crank_angle(phase_deg.to_radians()),
        mapping.branch,
    )?;
    let d = pose_to_dihedrals(&pose, &p, &mapping);
    let state = match cfg.aero {
        Some(_) => Some(evaluate_phase(phase_deg, &cfg.model_inputs(mapping)?)?),
        None => {
            em.notes.push("solve: no aero block, state omitted".into());
            None
        }
    };
    let report = SolveReport {
        phase_deg,
        mapping,
        pose: PoseView {
            crank_angle_deg: deg(pose.crank_angle),
            rocker_angle_deg: deg(pose.rocker_angle),
            coupler_angle_deg: deg(pose.coupler_angle),
            transmission_angle_deg: deg(pose.transmission_angle),
            branch: pose.branch,
            joints: pose.joints,
            psi1_deg: deg(d.psi1),
            psi2_deg: deg(d.psi2),
        },
        state,
    };
    em.json("solve.json", &report)
}

#[derive(Serialize)]
struct ClassifyReport {
    lengths_mm: [f64; 4],
    class: GrashofClass,
    input_fully_rotates: bool,
    shortest_plus_longest: f64,
    sum_of_others: f64,
}

fn classify(cfg: &ProjectConfig, em: &mut Emitter) -> Result<(), RunError> {
    let p = cfg.params();
    let class = grashof_classify(p)?;
    let mut l = p.lengths();
    l.sort_by(f64::total_cmp);
    em.json(
        "classify.json",
        &ClassifyReport {
            lengths_mm: p.lengths(),
            class,
            input_fully_rotates: class.input_fully_rotates(),
            shortest_plus_longest: l[0] + l[3],
            sum_of_others: l[1] + l[2],
        },
    )
}

fn sweep(cfg: &ProjectConfig, em: &mut Emitter) -> Result<(), RunError> {
    let inputs = cfg.model_inputs(active_mapping(cfg)?)?;
    let curve = sweep_morphology(&inputs, cfg.sweep.grid_step_deg)?;
    let mut buf = Vec::new();
    let io = |e| RunError::Io {
        path: PathBuf::from("(buffer)"),
        source: e,
    };
    if cfg.output.wants(OutputFormat::Csv) {
        curve.write_csv(&mut buf).map_err(io)?;
        em.write("sweep.csv", &buf)?;
    }
    if cfg.output.wants(OutputFormat::Gnuplot) {
        buf.clear();
        curve
            .write_gnuplot(&mut buf, "K", |v| v.lift_drag_ratio)
            .map_err(io)?;
        em.write("lift_drag_ratio.dat", &buf)?;
        buf.clear();
        curve
            .write_gnuplot(&mut buf, "roll_moment_Nm", |v| v.roll_moment_nm)
            .map_err(io)?;
        em.write("roll_moment.dat", &buf)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CalibrationReport<'a> {
    anchors: &'a [PhaseAnchor],
    base_mapping: PhaseMapping,
    calibration: &'a Calibration,
    /// `1 - calibrated / uncalibrated` RMS.
    rms_reduction: Option<f64>,
}

fn calibrate(cfg: &ProjectConfig, em: &mut Emitter) -> Result<Calibration, RunError> {
    let cal = run_calibration(cfg)?;
    let anchors = calibration_anchors(cfg).unwrap_or_default();
    let rms_reduction = cal
        .uncalibrated_rms_deg
        .filter(|u| *u > 0.0)
        .map(|u| 1.0 - cal.rms_residual_deg / u);
    em.json(
        "calibration.json",
        &CalibrationReport {
            anchors,
            base_mapping: cfg.linkage.mapping,
            calibration: &cal,
            rms_reduction,
        },
    )?;
    Ok(cal)
}

#[derive(Serialize)]
struct SynthesisReport<'a> {
    problem: &'a SynthesisProblem,
    outcome: &'a SynthesisOutcome,
}

fn synthesize(cfg: &ProjectConfig, seed: Option<u64>, em: &mut Emitter) -> Result<(), RunError> {
    let mut problem = cfg.synthesis.clone().unwrap_or_default();
    if let Some(s) = seed {
        problem.rng_seed = s;
    }
    let outcome = synthesize_constrained(&problem)?;
    if !outcome.feasible {
        em.notes
            .push("synthesize: best candidate violates the targets".into());
    }
    em.json(
        "synthesis.json",
        &SynthesisReport {
            problem: &problem,
            outcome: &outcome,
        },
    )
}

#[derive(Serialize)]
struct StatesReport<'a> {
    mapping: PhaseMapping,
    states: &'a FlightStateSet,
    comparison: &'a StateReport,
}

fn states(cfg: &ProjectConfig, em: &mut Emitter) -> Result<(), RunError> {
    let mapping = active_mapping(cfg)?;
    let inputs = cfg.model_inputs(mapping)?;
    let curve = sweep_morphology(&inputs, cfg.sweep.grid_step_deg)?;
    let set = select_flight_states(&curve, &cfg.selection)?;
    let anchors = cfg
        .anchors
        .as_ref()
        .map(|a| a.states.as_slice())
        .unwrap_or_default();
    let report = state_report(&set, anchors);
    em.json(
        "states.json",
        &StatesReport {
            mapping,
            states: &set,
            comparison: &report,
        },
    )?;
    if cfg.output.wants(OutputFormat::Text) {
        em.write("states.txt", report.to_string().as_bytes())?;
    }
    Ok(())
}
