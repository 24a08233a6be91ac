//! Series for the logarithmic derivatives of `θ_j` in `t` and in `u`.
//!
//! In `t`, each function is written as a reference log-derivative at `u = 0`
//! minus a series of nonnegative terms
//!
//! ```text
//! term_k = 2 ν_k π² coth(ν_k π² t) · S / (sinh²(ν_k π² t) + S)
//! ```
//!
//! with `S = sin²πu` (j = 1, 4) or `cos²πu` (j = 2, 3), half-integer `ν_k`
//! for j = 3, 4 and integer `ν_k` for j = 1, 2. The reference is
//! `∂_t log θ4(0,t)` for j = 3, 4 and `∂_t log ∂uθ1(0,t)` for j = 1, 2.
//!
//! In `u`,
//!
//! ```text
//! ∂u log θ4 =        Σ_{k≥0} π sin 2πu / (sinh²((k+½)π²t) + sin²πu)
//! ∂u log θ3 =      − Σ_{k≥0} π sin 2πu / (sinh²((k+½)π²t) + cos²πu)
//! ∂u log θ1 =  π cot πu + Σ_{k≥1} π sin 2πu / (sinh²(kπ²t) + sin²πu)
//! ∂u log θ2 = −π tan πu − Σ_{k≥1} π sin 2πu / (sinh²(kπ²t) + cos²πu)
//! ```
//!
//! The `sinh² + S` denominators equal `(cosh 2a ∓ cos 2πu)/2` and avoid the
//! cancellation of that form for small `u`.

use std::f64::consts::PI;

use crate::config::POLE_TOL;
use crate::error::{Error, Result};
use crate::theta::{theta_dt_jet, theta_du_dt_jet};
use crate::trig::{cos_pi, sin_pi};
use crate::types::{EvalPoint, SeriesTruncation, ThetaIndex};

const PI2: f64 = PI * PI;

/// Which variable a log-derivative series is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    T,
    U,
}

/// The anchor subtracted in a t-log-derivative series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceTerm {
    /// `∂_t log θ4(0,t)`.
    Theta4AtZero,
    /// `∂_t log ∂uθ1(0,t)`.
    Theta1SlopeAtZero,
    /// No reference: the u-series stand alone.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogDerivSeries {
    pub j: ThetaIndex,
    pub variable: Variable,
    pub reference_term: ReferenceTerm,
}

impl LogDerivSeries {
    pub fn in_t(j: ThetaIndex) -> Self {
        let reference_term = match j {
            ThetaIndex::Three | ThetaIndex::Four => ReferenceTerm::Theta4AtZero,
            ThetaIndex::One | ThetaIndex::Two => ReferenceTerm::Theta1SlopeAtZero,
        };
        LogDerivSeries {
            j,
            variable: Variable::T,
            reference_term,
        }
    }

    pub fn in_u(j: ThetaIndex) -> Self {
        LogDerivSeries {
            j,
            variable: Variable::U,
            reference_term: ReferenceTerm::None,
        }
    }
}

/// `ν_k` for the k-th term (k counted from 0).
fn nu(j: ThetaIndex, index: usize) -> f64 {
    match j {
        ThetaIndex::Three | ThetaIndex::Four => index as f64 + 0.5,
        ThetaIndex::One | ThetaIndex::Two => index as f64 + 1.0,
    }
}

/// `S = sin²πu` for j = 1, 4 and `cos²πu` for j = 2, 3.
fn trig_weight(j: ThetaIndex, u: f64) -> f64 {
    match j {
        ThetaIndex::One | ThetaIndex::Four => sin_pi(u).powi(2),
        ThetaIndex::Two | ThetaIndex::Three => cos_pi(u).powi(2),
    }
}

/// Terms of `∂_t log θ_j(0,t)`-reference minus `∂_t log θ_j(u,t)`; all ≥ 0.
pub fn dt_difference_terms(
    j: ThetaIndex,
    p: EvalPoint,
    trunc: SeriesTruncation,
) -> Result<Vec<f64>> {
    let s = trig_weight(j, p.u);
    let mut terms = Vec::new();
    for index in 0..trunc.max_terms {
        let n = nu(j, index);
        let a = n * PI2 * p.t;
        let sh = a.sinh();
        let term = 2.0 * n * PI2 * s / (a.tanh() * (sh * sh + s));
        // sinh² overflows to ∞ for large a; the term is then exactly 0.
        let term = if term.is_nan() { 0.0 } else { term };
        terms.push(term);
        if index >= 2 && term.abs() < trunc.tail_tol {
            return Ok(terms);
        }
    }
    Err(Error::Convergence {
        op: "dlog_theta_dt",
        terms: trunc.max_terms,
    })
}

/// `∂_t log` of the reference anchor, from exact q-series jets.
pub fn dt_reference(reference: ReferenceTerm, t: f64, trunc: SeriesTruncation) -> Result<f64> {
    let origin = EvalPoint::new(0.0, t)?;
    let jet = match reference {
        ReferenceTerm::Theta4AtZero => theta_dt_jet(ThetaIndex::Four, origin, 1, trunc)?,
        ReferenceTerm::Theta1SlopeAtZero => theta_du_dt_jet(ThetaIndex::One, origin, 1, trunc)?,
        ReferenceTerm::None => return Ok(0.0),
    };
    Ok(jet.coeff(1) / jet.value())
}

/// `∂_t log θ_j(u,t)`: reference log-derivative minus the difference series.
pub fn dlog_theta_dt(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    let reference = dt_reference(LogDerivSeries::in_t(j).reference_term, p.t, trunc)?;
    let series: f64 = dt_difference_terms(j, p, trunc)?.iter().sum();
    Ok(reference - series)
}

/// `∂_u log θ_j(u,t)`. Fails within [`POLE_TOL`] of a zero of `θ_j`
/// (integer `u` for j = 1, half-integer `u` for j = 2).
pub fn dlog_theta_du(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    let (s, c) = (sin_pi(p.u), cos_pi(p.u));
    let leading = match j {
        ThetaIndex::One => {
            if s.abs() < POLE_TOL {
                return Err(Error::domain(
                    "dlog_theta_du",
                    format!("theta1 vanishes at u = {}", p.u),
                ));
            }
            PI * c / s
        }
        ThetaIndex::Two => {
            if c.abs() < POLE_TOL {
                return Err(Error::domain(
                    "dlog_theta_du",
                    format!("theta2 vanishes at u = {}", p.u),
                ));
            }
            -PI * s / c
        }
        ThetaIndex::Three | ThetaIndex::Four => 0.0,
    };
    let (weight, sign) = match j {
        ThetaIndex::One | ThetaIndex::Four => (s * s, 1.0),
        ThetaIndex::Two | ThetaIndex::Three => (c * c, -1.0),
    };
    let numerator = PI * 2.0 * s * c;

    let mut total = leading;
    for index in 0..trunc.max_terms {
        let a = nu(j, index) * PI2 * p.t;
        let sh = a.sinh();
        let term = sign * numerator / (sh * sh + weight);
        let term = if term.is_nan() { 0.0 } else { term };
        total += term;
        if index >= 2 && term.abs() < trunc.tail_tol {
            return Ok(total);
        }
    }
    Err(Error::Convergence {
        op: "dlog_theta_du",
        terms: trunc.max_terms,
    })
}
