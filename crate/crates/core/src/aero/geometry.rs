use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::AeroError;

/// Rectangular inner panel, per side. Metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectPanel {
    pub span: f64,
    pub chord: f64,
}

/// Half-ellipse outer panel: chord `c(y) = root_chord * sqrt(1 - (y/span)^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfEllipsePanel {
    pub span: f64,
    pub root_chord: f64,
}

/// One half-wing. Areas and centroid arms are derived on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WingGeometry {
    pub inner: RectPanel,
    pub outer: HalfEllipsePanel,
}

impl Default for WingGeometry {
    /// 0.675 m semispan (1.35 m span) split at the 178.2 mm outer member,
    /// 0.22 m chord at the panel joint.
    fn default() -> Self {
        WingGeometry {
            inner: RectPanel {
                span: 0.4968,
                chord: 0.22,
            },
            outer: HalfEllipsePanel {
                span: 0.1782,
                root_chord: 0.22,
            },
        }
    }
}

impl WingGeometry {
    pub fn validate(&self) -> Result<(), AeroError> {
        let dims = [
            ("inner.span", self.inner.span),
            ("inner.chord", self.inner.chord),
            ("outer.span", self.outer.span),
            ("outer.root_chord", self.outer.root_chord),
        ];
        for (name, v) in dims {
            if !(v.is_finite() && v > 0.0) {
                return Err(AeroError::InvalidGeometry(format!(
                    "{name} must be positive (got {v})"
                )));
            }
        }
        Ok(())
    }

    /// Inner panel area, per side.
    pub fn s1(&self) -> f64 {
        self.inner.span * self.inner.chord
    }

    /// Outer panel area, per side.
    pub fn s2(&self) -> f64 {
        PI / 4.0 * self.outer.root_chord * self.outer.span
    }

    pub fn semispan(&self) -> f64 {
        self.inner.span + self.outer.span
    }

    pub fn full_span(&self) -> f64 {
        2.0 * self.semispan()
    }

    /// Both sides.
    pub fn total_area(&self) -> f64 {
        2.0 * (self.s1() + self.s2())
    }
}

/// Spanwise area-centroid arms of the inner and outer panels, normalised by
/// the semispan `b1 + b2`.
///
/// Inner rectangle: `b1 / 2`. Outer half-ellipse: `b1 + 4 b2 / (3 pi)`. Either
/// span may be zero as long as the sum is positive.
pub fn centroid_arms(inner_span: f64, outer_span: f64) -> (f64, f64) {
    let semispan = inner_span + outer_span;
    assert!(semispan > 0.0, "semispan must be positive");
    let inner = 0.5 * inner_span;
    let outer = inner_span + 4.0 * outer_span / (3.0 * PI);
    (inner / semispan, outer / semispan)
}

pub fn panel_centroids(geom: &WingGeometry) -> (f64, f64) {
    centroid_arms(geom.inner.span, geom.outer.span)
}
