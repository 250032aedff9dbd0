//! Small shared numeric helpers.

use std::f64::consts::PI;

/// Wrap an angle into `[-pi, pi]` as `((x + pi) mod 2pi) - pi`, with the
/// non-negative remainder convention.
pub fn wrap_angle(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

/// Heading of the vector `(dr, dc)` in radians.
pub fn heading(dr: f64, dc: f64) -> f64 {
    dr.atan2(dc)
}
