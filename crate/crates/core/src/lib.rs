//! Design analysis for a dihedral-morphing wing driven by a planar four-bar linkage.
//!
//! The crate is organised bottom-up:
//!
//! - [`linkage`]: four-bar kinematics, Grashof classification, phase sweeps and
//!   calibration of the phase origin against reference dihedral values.
//! - [`synthesis`]: three-position Freudenstein synthesis and a seeded
//!   multi-start refinement against per-state dihedral bands.
//! - [`aero`]: linear-lift / parabolic-drag polar, two-panel wing geometry,
//!   morphing lift-to-drag ratio and the dihedral roll-stability derivative.
//! - [`morphology`]: couples the two, sweeps the phase circle and selects the
//!   gliding / descending / high-maneuverability phases.
//! - [`cli`]: JSON configuration, command dispatch and file emission.

pub mod aero;
pub mod angle;
pub mod cli;
mod flight_state;
pub mod linkage;
pub mod morphology;
pub mod search;
pub mod synthesis;
pub use flight_state::FlightState;
