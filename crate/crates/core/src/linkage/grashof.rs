use serde::{Deserialize, Serialize};
use std::fmt;

use super::{validate_params, LinkageError, LinkageParams};

/// Mobility class of a four-bar with the crank `l1` as input and `l4` as ground.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrashofClass {
    /// Shortest link is the input crank: the crank turns fully, the rocker oscillates.
    CrankRocker,
    /// Shortest link is the output rocker: it turns fully while the input crank oscillates.
    RockerCrank,
    /// Shortest link is the ground: both side links turn fully.
    DoubleCrank,
    /// Shortest link is the coupler: neither side link turns fully.
    DoubleRocker,
    /// `s + l = p + q`: the mechanism passes through a flattened configuration.
    ChangePoint,
    /// Non-Grashof: `s + l > p + q`, no link turns fully relative to another.
    TripleRocker,
}

impl GrashofClass {
    /// Whether the input crank can make a full revolution without a dead point.
    pub fn input_fully_rotates(self) -> bool {
        matches!(self, GrashofClass::CrankRocker | GrashofClass::DoubleCrank)
    }

    pub fn name(self) -> &'static str {
        match self {
            GrashofClass::CrankRocker => "crank-rocker",
            GrashofClass::RockerCrank => "rocker-crank",
            GrashofClass::DoubleCrank => "double-crank",
            GrashofClass::DoubleRocker => "double-rocker",
            GrashofClass::ChangePoint => "change-point",
            GrashofClass::TripleRocker => "triple-rocker",
        }
    }
}

impl fmt::Display for GrashofClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Relative tolerance for the `s + l = p + q` equality.
const CHANGE_POINT_TOL: f64 = 1e-12;

pub fn grashof_classify(p: LinkageParams) -> Result<GrashofClass, LinkageError> {
    let p = validate_params(p)?;
    let links = p.lengths();
    let (mut shortest_idx, mut s, mut l) = (0, links[0], links[0]);
    for (i, &v) in links.iter().enumerate().skip(1) {
        if v < s {
            s = v;
            shortest_idx = i;
        }
        l = l.max(v);
    }
    let total: f64 = links.iter().sum();
    let sl = s + l;
    let pq = total - sl;
    if (sl - pq).abs() <= CHANGE_POINT_TOL * total {
        return Ok(GrashofClass::ChangePoint);
    }
    if sl > pq {
        return Ok(GrashofClass::TripleRocker);
    }
    Ok(match shortest_idx {
        0 => GrashofClass::CrankRocker,
        1 => GrashofClass::DoubleRocker,
        2 => GrashofClass::RockerCrank,
        _ => GrashofClass::DoubleCrank,
    })
}
