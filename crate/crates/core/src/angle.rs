//! Angle helpers. Files carry degrees, computation uses radians.

use std::f64::consts::{PI, TAU};

#[inline]
pub fn deg(rad: f64) -> f64 {
    rad.to_degrees()
}

#[inline]
pub fn rad(deg: f64) -> f64 {
    deg.to_radians()
}

/// Wraps an angle into `(-PI, PI]`.
pub fn wrap_pi(a: f64) -> f64 {
    let mut w = a.rem_euclid(TAU);
    if w > PI {
        w -= TAU;
    }
    w
}

/// Wraps an angle into `[0, 2PI)`.
pub fn wrap_two_pi(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Wraps a difference in degrees into `(-180, 180]`.
pub fn wrap_deg_180(d: f64) -> f64 {
    let mut w = d.rem_euclid(360.0);
    if w > 180.0 {
        w -= 360.0;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapping() {
        assert!((wrap_pi(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_pi(PI), PI);
        assert_eq!(wrap_two_pi(-1e-20), 0.0);
        assert!((wrap_two_pi(-PI / 2.0) - 3.0 * PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_deg_180(190.0), -170.0);
        assert_eq!(wrap_deg_180(-180.0), 180.0);
    }
}
