use serde::{Deserialize, Serialize};

use super::LinkageError;
use crate::angle::{deg, rad};

/// Lengths of the auxiliary members. Stored and echoed in reports only; the
/// kinematic solve does not use them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxLengths {
    #[serde(default)]
    pub de: f64,
    #[serde(default)]
    pub eg: f64,
    #[serde(default)]
    pub cf: f64,
    /// Outer-wing span member.
    #[serde(default)]
    pub mn: f64,
}

/// Link lengths (mm) and mounting offsets (rad) of the wing linkage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "LinkageParamsRepr", into = "LinkageParamsRepr")]
pub struct LinkageParams {
    /// Input crank.
    pub l1: f64,
    /// Coupler.
    pub l2: f64,
    /// Rocker, carries the inner wing.
    pub l3: f64,
    /// Ground.
    pub l4: f64,
    /// Mount offset of the inner wing.
    pub epsilon: f64,
    /// Constant offset of the outer-wing carrier.
    pub xi: f64,
    pub aux: AuxLengths,
}

impl LinkageParams {
    /// The prototype linkage: 26.2 / 45.6 / 46.9 / 52.2 mm, epsilon 21.24 deg,
    /// xi 60 deg.
    pub fn prototype() -> Self {
        LinkageParams {
            l1: 26.2,
            l2: 45.6,
            l3: 46.9,
            l4: 52.2,
            epsilon: rad(21.24),
            xi: rad(60.0),
            aux: AuxLengths {
                de: 14.2,
                eg: 265.6,
                cf: 220.6,
                mn: 178.2,
            },
        }
    }

    /// Same offsets and auxiliary members with different primary lengths.
    pub fn with_lengths(&self, l1: f64, l2: f64, l3: f64, l4: f64) -> Self {
        LinkageParams {
            l1,
            l2,
            l3,
            l4,
            ..*self
        }
    }

    pub fn lengths(&self) -> [f64; 4] {
        [self.l1, self.l2, self.l3, self.l4]
    }

    /// Uniformly scaled copy (primary lengths only).
    pub fn scaled(&self, c: f64) -> Self {
        self.with_lengths(self.l1 * c, self.l2 * c, self.l3 * c, self.l4 * c)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkageParamsRepr {
    l1: f64,
    l2: f64,
    l3: f64,
    l4: f64,
    epsilon_deg: f64,
    xi_deg: f64,
    #[serde(default)]
    aux: AuxLengths,
}

impl From<LinkageParamsRepr> for LinkageParams {
    fn from(r: LinkageParamsRepr) -> Self {
        LinkageParams {
            l1: r.l1,
            l2: r.l2,
            l3: r.l3,
            l4: r.l4,
            epsilon: rad(r.epsilon_deg),
            xi: rad(r.xi_deg),
            aux: r.aux,
        }
    }
}

impl From<LinkageParams> for LinkageParamsRepr {
    fn from(p: LinkageParams) -> Self {
        LinkageParamsRepr {
            l1: p.l1,
            l2: p.l2,
            l3: p.l3,
            l4: p.l4,
            epsilon_deg: deg(p.epsilon),
            xi_deg: deg(p.xi),
            aux: p.aux,
        }
    }
}

/// Checks lengths, offsets and that at least one crank angle closes the loop.
///
/// The crank-tip to rocker-pivot distance ranges over `[|l4 - l1|, l4 + l1]`;
/// the coupler and rocker can span `[|l2 - l3|, l2 + l3]`. The linkage
/// assembles somewhere iff the two intervals overlap.
pub fn validate_params(p: LinkageParams) -> Result<LinkageParams, LinkageError> {
    for (name, value) in [("l1", p.l1), ("l2", p.l2), ("l3", p.l3), ("l4", p.l4)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(LinkageError::NonPositiveLength { name, value });
        }
    }
    for (name, value) in [
        ("de", p.aux.de),
        ("eg", p.aux.eg),
        ("cf", p.aux.cf),
        ("mn", p.aux.mn),
    ] {
        // zero means "not given"
        if !(value.is_finite() && value >= 0.0) {
            return Err(LinkageError::NonPositiveLength { name, value });
        }
    }
    for (name, value) in [("epsilon", p.epsilon), ("xi", p.xi)] {
        let d = deg(value);
        if !(d.is_finite() && d > -180.0 && d <= 180.0) {
            return Err(LinkageError::InvalidOffsetAngle { name, value_deg: d });
        }
    }
    let reach_min = (p.l4 - p.l1).abs();
    let reach_max = p.l4 + p.l1;
    let span_min = (p.l2 - p.l3).abs();
    let span_max = p.l2 + p.l3;
    if reach_min > span_max || span_min > reach_max {
        return Err(LinkageError::NeverAssemblable {
            l1: p.l1,
            l2: p.l2,
            l3: p.l3,
            l4: p.l4,
        });
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prototype_is_valid() {
        let p = LinkageParams::prototype();
        assert_eq!(validate_params(p), Ok(p));
    }

    #[test]
    fn zero_coupler_rejected() {
        let p = LinkageParams::prototype().with_lengths(26.2, 0.0, 46.9, 52.2);
        assert!(matches!(
            validate_params(p),
            Err(LinkageError::NonPositiveLength { name: "l2", .. })
        ));
    }

    #[test]
    fn short_coupler_and_rocker_never_assemble() {
        let p = LinkageParams::prototype().with_lengths(10.0, 10.0, 10.0, 50.0);
        assert!(matches!(
            validate_params(p),
            Err(LinkageError::NeverAssemblable { .. })
        ));
    }

    #[test]
    fn offsets_outside_half_open_range_rejected() {
        let mut p = LinkageParams::prototype();
        p.xi = rad(-180.0);
        assert!(matches!(
            validate_params(p),
            Err(LinkageError::InvalidOffsetAngle { name: "xi", .. })
        ));
        p.xi = std::f64::consts::PI;
        assert!(validate_params(p).is_ok());
    }

    #[test]
    fn json_uses_degrees() {
        let p = LinkageParams::prototype();
        let v = serde_json::to_value(p).unwrap();
        assert!((v["epsilon_deg"].as_f64().unwrap() - 21.24).abs() < 1e-12);
        let back: LinkageParams = serde_json::from_value(v).unwrap();
        assert!((back.epsilon - p.epsilon).abs() < 1e-15);
    }
}
