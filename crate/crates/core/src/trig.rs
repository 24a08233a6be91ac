//! `sin(πx)` and `cos(πx)` with exact zeros at integers and half-integers.

use std::f64::consts::PI;

/// Reduce `x` to `r ∈ [-1/4, 1/4]` and a quadrant so that `πx = πr + qπ/2`.
fn reduce(x: f64) -> (f64, i64) {
    let twice = 2.0 * x;
    let n = twice.round();
    let r = (twice - n) / 2.0;
    (r, (n as i64).rem_euclid(4))
}

pub fn sin_pi(x: f64) -> f64 {
    let (r, quadrant) = reduce(x);
    let (s, c) = (PI * r).sin_cos();
    match quadrant {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

pub fn cos_pi(x: f64) -> f64 {
    let (r, quadrant) = reduce(x);
    let (s, c) = (PI * r).sin_cos();
    match quadrant {
        0 => c,
        1 => -s,
        2 => -c,
        _ => s,
    }
}
