//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use morphwing::linkage::{Branch, LinkageParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Rocker-pin position from intersecting the circle of radius `l2` about the
/// crank pin with the circle of radius `l3` about the rocker pivot.
///
/// Returns `(x, y, h)` where `h` is the half-chord of the intersection
/// (a conditioning measure), or `None` when the circles do not meet.
pub fn circle_intersection(
    p: &LinkageParams,
    crank: f64,
    branch: Branch,
) -> Option<(f64, f64, f64)> {
    let (bx, by) = (p.l1 * crank.cos(), p.l1 * crank.sin());
    let (dx, dy) = (p.l4 - bx, -by);
    let d = dx.hypot(dy);
    let a = (p.l2 * p.l2 - p.l3 * p.l3 + d * d) / (2.0 * d);
    let h2 = p.l2 * p.l2 - a * a;
    if h2 < 0.0 {
        return None;
    }
    let h = h2.sqrt();
    let (ux, uy) = (dx / d, dy / d);
    let (px, py) = (bx + a * ux, by + a * uy);
    for s in [1.0, -1.0] {
        let (cx, cy) = (px - s * h * uy, py + s * h * ux);
        // coupler B->C crossed with rocker D->C
        let cross = (cx - bx) * (cy - 0.0) - (cy - by) * (cx - p.l4);
        let up = cross > 0.0;
        if up == (branch == Branch::ElbowUp) {
            return Some((cx, cy, h));
        }
    }
    None
}

/// Oracle rocker angle, counterclockwise from the ground line.
pub fn oracle_rocker_angle(p: &LinkageParams, crank: f64, branch: Branch) -> Option<(f64, f64)> {
    circle_intersection(p, crank, branch).map(|(x, y, h)| (y.atan2(x - p.l4), h))
}

pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Deterministic random linkages with lengths in `[5, 100]` mm.
pub fn random_params(rng: &mut ChaCha8Rng) -> LinkageParams {
    let mut l = [0.0; 4];
    for v in &mut l {
        *v = rng.gen_range(5.0..100.0);
    }
    LinkageParams::prototype().with_lengths(l[0], l[1], l[2], l[3])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One well-conditioned feasible sample: `(params, crank, branch, oracle rocker angle)`.
/// Poses within a relative half-chord of 1e-3 of a singular configuration
/// are skipped, where the rocker angle itself is ill-conditioned.
pub fn feasible_sample(rng: &mut ChaCha8Rng) -> (LinkageParams, f64, Branch, f64) {
    loop {
        let p = random_params(rng);
        let crank = rng.gen_range(0.0..2.0 * PI);
        let branch = if rng.gen_bool(0.5) {
            Branch::ElbowUp
        } else {
            Branch::ElbowDown
        };
        if let Some((theta, h)) = oracle_rocker_angle(&p, crank, branch) {
            if h > 1e-3 * p.l2.min(p.l3) {
                return (p, crank, branch, theta);
            }
        }
    }
}
