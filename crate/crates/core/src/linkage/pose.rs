use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{LinkageError, LinkageParams};
use crate::angle::{deg, wrap_pi};

/// Assembly branch. Elbow-up places the floating joint to the left of the
/// line from the crank tip to the rocker pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    #[default]
    ElbowUp,
    ElbowDown,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::ElbowUp => 1.0,
            Branch::ElbowDown => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::ElbowUp => "elbow-up",
            Branch::ElbowDown => "elbow-down",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }
}

/// Solved configuration at one crank angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkagePose {
    pub crank_angle: f64,
    pub rocker_angle: f64,
    pub coupler_angle: f64,
    /// Crank pivot, crank tip, floating joint, rocker pivot.
    pub joints: [Point; 4],
    pub branch: Branch,
    /// Angle between coupler and rocker at the floating joint, in `(0, PI)`.
    pub transmission_angle: f64,
}

impl LinkagePose {
    pub fn crank_pivot(&self) -> Point {
        self.joints[0]
    }

    pub fn crank_tip(&self) -> Point {
        self.joints[1]
    }

    pub fn floating_joint(&self) -> Point {
        self.joints[2]
    }

    pub fn rocker_pivot(&self) -> Point {
        self.joints[3]
    }

    /// Norm of `l1 e^{i crank} + l2 e^{i coupler} - l4 - l3 e^{i rocker}`.
    pub fn closure_residual(&self, p: &LinkageParams) -> f64 {
        let x = p.l1 * self.crank_angle.cos() + p.l2 * self.coupler_angle.cos()
            - p.l4
            - p.l3 * self.rocker_angle.cos();
        let y = p.l1 * self.crank_angle.sin() + p.l2 * self.coupler_angle.sin()
            - p.l3 * self.rocker_angle.sin();
        x.hypot(y)
    }
}

/// Freudenstein coefficients of the closure
/// `K2 cos(rocker) - K1 cos(crank) + K3 = cos(crank - rocker)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Freudenstein {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl Freudenstein {
    pub fn of(p: &LinkageParams) -> Self {
        Freudenstein {
            k1: p.l4 / p.l3,
            k2: p.l4 / p.l1,
            k3: (p.l1 * p.l1 - p.l2 * p.l2 + p.l3 * p.l3 + p.l4 * p.l4) / (2.0 * p.l1 * p.l3),
        }
    }
}

/// Closure arguments within this of +-1 are treated as the collinear limit.
const SINGULAR_TOL: f64 = 1e-12;

/// Rocker angle from the Freudenstein closure, written as
/// `P cos(rocker) + Q sin(rocker) = -R`.
///
/// `(P, Q)` is parallel to the vector from the crank tip to the rocker pivot,
/// so adding the arccos places the floating joint on the elbow-up side.
pub(crate) fn rocker_angle(
    p: &LinkageParams,
    crank_angle: f64,
    branch: Branch,
) -> Result<f64, LinkageError> {
    let k = Freudenstein::of(p);
    let (s, c) = crank_angle.sin_cos();
    let pp = k.k2 - c;
    let qq = -s;
    let rr = k.k3 - k.k1 * c;
    let rho = pp.hypot(qq);
    if rho <= f64::EPSILON * k.k2 {
        // crank tip on the rocker pivot: rocker direction undetermined
        return Err(LinkageError::Singular {
            crank_angle_deg: deg(crank_angle),
        });
    }
    let arg = -rr / rho;
    if arg.abs() > 1.0 + SINGULAR_TOL {
        return Err(LinkageError::Unassemblable {
            crank_angle_deg: deg(crank_angle),
        });
    }
    if arg.abs() >= 1.0 - SINGULAR_TOL {
        return Err(LinkageError::Singular {
            crank_angle_deg: deg(crank_angle),
        });
    }
    Ok(wrap_pi(qq.atan2(pp) + branch.sign() * arg.acos()))
}

/// Forward position solution at one crank angle on the requested branch.
pub fn solve_fourbar(
    p: &LinkageParams,
    crank_angle: f64,
    branch: Branch,
) -> Result<LinkagePose, LinkageError> {
    let rocker = rocker_angle(p, crank_angle, branch)?;
    let a = Point::new(0.0, 0.0);
    let b = Point::new(p.l1 * crank_angle.cos(), p.l1 * crank_angle.sin());
    let d = Point::new(p.l4, 0.0);
    let c = Point::new(d.x + p.l3 * rocker.cos(), d.y + p.l3 * rocker.sin());
    let coupler = c.sub(b);
    let rocker_vec = c.sub(d);
    let to_b = b.sub(c);
    let to_d = d.sub(c);
    let mu = to_b.cross(to_d).abs().atan2(to_b.dot(to_d));
    debug_assert!(
        (coupler.cross(rocker_vec) > 0.0) == (branch == Branch::ElbowUp)
            || coupler.cross(rocker_vec).abs() < 1e-9 * p.l2 * p.l3
    );
    Ok(LinkagePose {
        crank_angle,
        rocker_angle: rocker,
        coupler_angle: coupler.y.atan2(coupler.x),
        joints: [a, b, c, d],
        branch,
        transmission_angle: mu,
    })
}

/// Closed-form transmission angle
/// `mu = acos((l2^2 + l3^2 - g^2) / (2 l2 l3))`, with `g` the distance from the
/// crank tip to the rocker pivot. Branch independent.
pub fn transmission_angle(p: &LinkageParams, crank_angle: f64) -> Result<f64, LinkageError> {
    let g2 = p.l1 * p.l1 + p.l4 * p.l4 - 2.0 * p.l1 * p.l4 * crank_angle.cos();
    let cos_mu = (p.l2 * p.l2 + p.l3 * p.l3 - g2) / (2.0 * p.l2 * p.l3);
    if cos_mu.abs() > 1.0 + SINGULAR_TOL {
        return Err(LinkageError::Unassemblable {
            crank_angle_deg: deg(crank_angle),
        });
    }
    if cos_mu.abs() >= 1.0 - SINGULAR_TOL {
        return Err(LinkageError::Singular {
            crank_angle_deg: deg(crank_angle),
        });
    }
    Ok(cos_mu.acos())
}

/// Deviation-from-collinear score used for quality ranking: `min(mu, PI - mu)`.
pub fn transmission_quality(mu: f64) -> f64 {
    mu.min(PI - mu)
}
