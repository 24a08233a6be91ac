//! Jacobi theta functions from their q-series, with `q = exp(-π² t)`:
//!
//! ```text
//! θ1(u,t) = 2 Σ_{n≥0} (-1)^n q^{(n+½)²} sin((2n+1)πu)
//! θ2(u,t) = 2 Σ_{n≥0}        q^{(n+½)²} cos((2n+1)πu)
//! θ3(u,t) = 1 + 2 Σ_{n≥1}        q^{n²} cos(2nπu)
//! θ4(u,t) = 1 + 2 Σ_{n≥1} (-1)^n q^{n²} cos(2nπu)
//! ```
//!
//! Every term is `A_n · trig(ω_n u) · exp(-c_n π² t)`, so u- and
//! t-derivatives are taken term-wise and exactly: the m-th t-derivative
//! multiplies a term by `(-c_n π²)^m`. These sums are the reference every
//! other representation in the crate is checked against.

use std::f64::consts::PI;

use crate::config::MAX_JET_ORDER;
use crate::error::{Error, Result};
use crate::jet::{factorial, Jet};
use crate::trig::{cos_pi, sin_pi};
use crate::types::{check_t, EvalPoint, SeriesTruncation, ThetaIndex};

const PI2: f64 = PI * PI;

/// Nome `q = exp(-π² t)`. Underflows to 0 for large `t` without error.
pub fn nome(t: f64) -> Result<f64> {
    check_t("nome", t)?;
    Ok((-PI2 * t).exp())
}

pub fn theta(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    Ok(series_jet(j, p, 0, 0, false, trunc, "theta")?[0])
}

/// `∂θ_j/∂u`.
pub fn theta_du(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    Ok(series_jet(j, p, 1, 0, false, trunc, "theta_du")?[0])
}

/// `∂²θ_j/∂u²`, term-wise.
pub fn theta_duu(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    Ok(series_jet(j, p, 2, 0, false, trunc, "theta_duu")?[0])
}

/// Taylor jet of `t ↦ θ_j(u, t)` at `p.t`, exact to `order ≤ 12`.
pub fn theta_dt_jet(
    j: ThetaIndex,
    p: EvalPoint,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    check_order("theta_dt_jet", order)?;
    Jet::from_coeffs(
        p.t,
        series_jet(j, p, 0, order, false, trunc, "theta_dt_jet")?,
    )
}

/// Taylor jet of `t ↦ ∂θ_j/∂u (u, t)` at `p.t`.
pub fn theta_du_dt_jet(
    j: ThetaIndex,
    p: EvalPoint,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    check_order("theta_du_dt_jet", order)?;
    Jet::from_coeffs(
        p.t,
        series_jet(j, p, 1, order, false, trunc, "theta_du_dt_jet")?,
    )
}

/// Jet of `e^{π²t/4}·θ_j` for j = 1, 2 (of `θ_j` itself for j = 3, 4).
///
/// The factor `e^{−π²t/4}` common to every term of θ1 and θ2 is removed
/// exactly, so quotients and log-derivative differences of θ1 or θ2 keep
/// full relative accuracy when `t` is large.
pub fn scaled_theta_dt_jet(
    j: ThetaIndex,
    p: EvalPoint,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    check_order("scaled_theta_dt_jet", order)?;
    Jet::from_coeffs(
        p.t,
        series_jet(j, p, 0, order, true, trunc, "scaled_theta_dt_jet")?,
    )
}

/// Jet of `e^{π²t/4}·∂uθ_j` for j = 1, 2 (of `∂uθ_j` for j = 3, 4).
pub fn scaled_theta_du_dt_jet(
    j: ThetaIndex,
    p: EvalPoint,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    check_order("scaled_theta_du_dt_jet", order)?;
    Jet::from_coeffs(
        p.t,
        series_jet(j, p, 1, order, true, trunc, "scaled_theta_du_dt_jet")?,
    )
}

/// `θ2(0,t)⁴ + θ4(0,t)⁴ − θ3(0,t)⁴`, which vanishes identically.
pub fn jacobi_identity_residual(t: f64, trunc: SeriesTruncation) -> Result<f64> {
    let p = EvalPoint::new(0.0, t)?;
    let t2 = theta(ThetaIndex::Two, p, trunc)?;
    let t3 = theta(ThetaIndex::Three, p, trunc)?;
    let t4 = theta(ThetaIndex::Four, p, trunc)?;
    Ok(t2.powi(4) + t4.powi(4) - t3.powi(4))
}

fn check_order(op: &'static str, order: usize) -> Result<()> {
    if order > MAX_JET_ORDER {
        Err(Error::domain(
            op,
            format!("order {order} exceeds the limit {MAX_JET_ORDER}"),
        ))
    } else {
        Ok(())
    }
}

/// One term of a theta series, before the t-dependent exponential.
struct Term {
    /// Exponent weight: the term carries `exp(-c π² t)`.
    c: f64,
    /// Amplitude including the sign `(-1)^n` where present.
    amp: f64,
    /// Angular frequency divided by π: the trig argument is `π · freq · u`.
    freq: f64,
    /// `true` for `sin`, `false` for `cos`.
    sine: bool,
}

fn term(j: ThetaIndex, n: usize) -> Term {
    let alt = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    match j {
        ThetaIndex::One | ThetaIndex::Two => {
            let half = n as f64 + 0.5;
            Term {
                c: half * half,
                amp: if j == ThetaIndex::One { 2.0 * alt } else { 2.0 },
                freq: (2 * n + 1) as f64,
                sine: j == ThetaIndex::One,
            }
        }
        ThetaIndex::Three | ThetaIndex::Four => {
            let nf = n as f64;
            let amp = match (n, j) {
                (0, _) => 1.0,
                (_, ThetaIndex::Four) => 2.0 * alt,
                _ => 2.0,
            };
            Term {
                c: nf * nf,
                amp,
                freq: 2.0 * nf,
                sine: false,
            }
        }
    }
}

/// `d^du/du^du` of `sin(π f u)` or `cos(π f u)`, at reduced `u`.
fn trig_derivative(sine: bool, freq: f64, u: f64, du: u8) -> f64 {
    let s = sin_pi(freq * u);
    let c = cos_pi(freq * u);
    let w = PI * freq;
    // Derivative cycle of sin: sin, cos, -sin, -cos; of cos: cos, -sin, -cos, sin.
    let base = match (sine, du % 4) {
        (true, 0) => s,
        (true, 1) => c,
        (true, 2) => -s,
        (true, _) => -c,
        (false, 0) => c,
        (false, 1) => -s,
        (false, 2) => -c,
        (false, _) => s,
    };
    base * w.powi(du as i32)
}

/// Coefficients `c_m = (1/m!) ∂_t^m ∂_u^du θ_j(u, t)` for `m = 0..=order`.
///
/// `u` is reduced to `[0, 1)`; θ1 and θ2 pick up a sign for each unit shift.
/// Summation runs upward in `n` and stops at the first `n ≥ 3` whose term
/// bound (over every requested order) is below `tail_tol`. With `scaled`,
/// the leading exponent `c_0` is subtracted from every `c_n`.
fn series_jet(
    j: ThetaIndex,
    p: EvalPoint,
    du: u8,
    order: usize,
    scaled: bool,
    trunc: SeriesTruncation,
    op: &'static str,
) -> Result<Vec<f64>> {
    let shift = p.u.floor();
    let u = p.u - shift;
    let sign = if j.is_antiperiodic() && (shift as i64).rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    };
    let inv_fact: Vec<f64> = (0..=order).map(|m| 1.0 / factorial(m)).collect();

    let c0 = if scaled { term(j, 0).c } else { 0.0 };

    let mut out = vec![0.0; order + 1];
    for n in 0..trunc.max_terms {
        let tm = term(j, n);
        let rate = (tm.c - c0) * PI2;
        let decay = (-rate * p.t).exp();
        let trig = trig_derivative(tm.sine, tm.freq, u, du);
        let scale = tm.amp * decay;
        let bound_base = tm.amp.abs() * decay * (PI * tm.freq).powi(du as i32);

        let mut rate_pow = 1.0;
        let mut bound = 0.0f64;
        for (m, slot) in out.iter_mut().enumerate() {
            let mult = rate_pow * inv_fact[m];
            *slot += scale * trig * mult;
            bound = bound.max(bound_base * mult.abs());
            rate_pow *= -rate;
        }
        if n >= 3 && bound < trunc.tail_tol {
            return Ok(out.into_iter().map(|x| sign * x).collect());
        }
    }
    Err(Error::Convergence {
        op,
        terms: trunc.max_terms,
    })
}
