use serde::{Deserialize, Serialize};
use std::fmt;

/// The three operating shapes of the wing, in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlightState {
    Gliding,
    Descending,
    HighManeuverability,
}

impl FlightState {
    pub const ALL: [FlightState; 3] = [
        FlightState::Gliding,
        FlightState::Descending,
        FlightState::HighManeuverability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FlightState::Gliding => "gliding",
            FlightState::Descending => "descending",
            FlightState::HighManeuverability => "high_maneuverability",
        }
    }
}

impl fmt::Display for FlightState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
