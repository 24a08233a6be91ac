//! Printed-versus-corrected calibration of the closed-form expansions.
//!
//! Every catalogued formula is evaluated as printed and in its corrected
//! form, then compared with the q-series on a grid. The outcome is a ledger
//! of maximum deviations, one row per (formula, variant).
//!
//! Deviation metric:
//! - product expansions: `|value − θ| / |θ|` (absolute where `θ = 0`);
//!   complex intermediate forms contribute their imaginary part too;
//! - log-derivative series and the Zeta constant: `|value − oracle|`.
//!
//! Points where the oracle itself is undefined (zeros of `θ_j` for the
//! log-derivatives) are dropped from the grid.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{compare_t_values, compare_u_values};
use crate::elliptic::{elliptic_params, jacobi_zeta};
use crate::error::{Error, Result};
use crate::log_deriv::{dlog_theta_dt, dlog_theta_du, dt_difference_terms};
use crate::theta::{theta, theta_dt_jet, theta_du, theta_du_dt_jet};
use crate::trig::{cos_pi, sin_pi};
use crate::types::{EvalPoint, SeriesTruncation, ThetaIndex};

const PI2: f64 = PI * PI;

/// A catalogued closed-form formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Half-integer product expansion anchored at `θ4(0,t)`.
    Prop1(ThetaIndex),
    /// Integer product expansion anchored at `θ2(0,t)` or `π ∂uθ1(0,t)`.
    Prop2(ThetaIndex),
    /// Series for `∂t log θ_j`.
    Thm1(ThetaIndex),
    /// Series for `∂u log θ_j`.
    Thm2(ThetaIndex),
    /// Constant linking Jacobi Zeta to `∂u log θ4`.
    ZetaPrefactor,
}

impl Formula {
    pub fn all() -> Vec<Formula> {
        let mut out = Vec::with_capacity(17);
        for family in [Formula::Prop1, Formula::Prop2, Formula::Thm1, Formula::Thm2] {
            out.extend(ThetaIndex::ALL.iter().map(|&j| family(j)));
        }
        out.push(Formula::ZetaPrefactor);
        out
    }

    pub fn id(self) -> String {
        match self {
            Formula::Prop1(j) => format!("prop1-{j}"),
            Formula::Prop2(j) => format!("prop2-{j}"),
            Formula::Thm1(j) => format!("thm1-{j}"),
            Formula::Thm2(j) => format!("thm2-{j}"),
            Formula::ZetaPrefactor => "zeta-prefactor".to_string(),
        }
    }

    /// Variants evaluated for this formula, printed first.
    pub fn variants(self) -> &'static [Variant] {
        match self {
            Formula::Prop1(ThetaIndex::Two) | Formula::ZetaPrefactor => {
                &[Variant::Printed, Variant::PrintedAlt, Variant::Corrected]
            }
            _ => &[Variant::Printed, Variant::Corrected],
        }
    }

    /// Acceptance tolerance on the deviation metric.
    pub fn tolerance(self) -> f64 {
        match self {
            Formula::Prop1(_) | Formula::Prop2(_) => 1e-9,
            _ => 1e-8,
        }
    }

    fn relative(self) -> bool {
        matches!(self, Formula::Prop1(_) | Formula::Prop2(_))
    }

    /// Human-readable form of a variant.
    pub fn form(self, variant: Variant) -> &'static str {
        use ThetaIndex::*;
        use Variant::*;
        match (self, variant) {
            (Formula::Prop1(Four), _) => "θ4(0)·Π_{k≥0}(1 + sin²πu/sinh²((k+½)π²t))",
            (Formula::Prop1(Three), _) => "θ4(0)·Π_{k≥0}(1 + cos²πu/sinh²((k+½)π²t))",
            (Formula::Prop1(Two), Printed) => {
                "θ4(0)·e^{iπ(u−πt/4)}·Π_{k≥0}(1 + cosh²(iπu−π²t/2)/sinh²((k+½)π²))"
            }
            (Formula::Prop1(Two), PrintedAlt) => {
                "θ4(0)·e^{iπ(u−πt/4)}·Π_{k≥0}(1 + cosh²(iπu−π²t/2)/sinh²((k+½)π²t))"
            }
            (Formula::Prop1(Two), Corrected) => {
                "θ4(0)·e^{iπu−π²t/4}·Π_{k≥0}(1 + cosh²(iπu−π²t/2)/sinh²((k+½)π²t))"
            }
            (Formula::Prop1(One), Corrected) => {
                "θ4(0)·e^{iπ(u−½)−π²t/4}·Π_{k≥0}(1 − sinh²(iπu−π²t/2)/sinh²((k+½)π²t))"
            }
            (Formula::Prop1(One), _) => {
                "θ4(0)·e^{iπ(u−½)+π²t/4}·Π_{k≥0}(1 − sinh²(iπu−π²t/2)/sinh²((k+½)π²t))"
            }
            (Formula::Prop2(Two), Corrected) => "θ2(0)·cos πu·Π_{k≥1}(1 − sin²πu/cosh²(kπ²t))",
            (Formula::Prop2(Two), _) => "θ2(0)·cos πu·Π_{k≥1}(1 + sin²πu/sinh²(kπ²t))",
            (Formula::Prop2(One), Corrected) => {
                "π∂uθ1(0)·(sin πu/π²)·Π_{k≥1}(1 + sin²πu/sinh²(kπ²t))"
            }
            (Formula::Prop2(One), _) => "π∂uθ1(0)·sin πu·Π_{k≥1}(1 + cos²πu/sinh²(kπ²t))",
            (Formula::Prop2(Three), Corrected) => {
                "θ2(0)·e^{iπu−π²t/4}·cos w·Π_{k≥1}(1 − sin²w/cosh²(kπ²t)), w = πu + iπ²t/2"
            }
            (Formula::Prop2(Three), _) => {
                "θ2(0)·e^{iπu+iπ²t/4}·cos w·Π_{k≥1}(1 + sin²w/sinh²(kπ²t)), w = πu + iπ²t/2"
            }
            (Formula::Prop2(Four), Corrected) => {
                "−i(∂uθ1(0)/π)·e^{iπu−π²t/4}·sin w·Π_{k≥1}(1 + sin²w/sinh²(kπ²t)), w = πu + iπ²t/2"
            }
            (Formula::Prop2(Four), _) => {
                "θ2(0)·e^{iπu+iπ²t/4}·sin w·Π_{k≥1}(1 + cos²w/sinh²(kπ²t)), w = πu + iπ²t/2"
            }
            (Formula::Thm1(Four), _) => {
                "∂t log θ4(0) − Σ_{k≥0} 2νπ² coth(νπ²t) sin²πu/(sinh²(νπ²t) + sin²πu)"
            }
            (Formula::Thm1(Three), _) => {
                "∂t log θ4(0) − Σ_{k≥0} 2νπ² coth(νπ²t) cos²πu/(sinh²(νπ²t) + cos²πu)"
            }
            (Formula::Thm1(One), Corrected) => {
                "∂t log ∂uθ1(0) − Σ_{k≥1} 2kπ² coth(kπ²t) sin²πu/(sinh²(kπ²t) + sin²πu)"
            }
            (Formula::Thm1(One), _) => {
                "π·∂t∂uθ1(0)/∂uθ1(0) − Σ_{k≥1} 2kπ² coth(kπ²t) sin²πu/(sinh²(kπ²t) + sin²πu)"
            }
            (Formula::Thm1(Two), Corrected) => {
                "∂t log ∂uθ1(0) − Σ_{k≥1} 2kπ² coth(kπ²t) cos²πu/(sinh²(kπ²t) + cos²πu)"
            }
            (Formula::Thm1(Two), _) => {
                "∂t log θ2(0) − Σ_{k≥1} 2kπ² coth(kπ²t) cos²πu/(sinh²(kπ²t) + cos²πu)"
            }
            (Formula::Thm2(Four), Corrected) => "Σ_{k≥0} 2π sin 2πu/(cosh((2k+1)π²t) − cos 2πu)",
            (Formula::Thm2(Four), _) => "Σ_{k≥0} 2π sin 2πu/(cosh((2k+1)π²t) − cos πu)",
            (Formula::Thm2(Three), Corrected) => "−Σ_{k≥0} 2π sin 2πu/(cosh((2k+1)π²t) + cos 2πu)",
            (Formula::Thm2(Three), _) => "−Σ_{k≥0} 2π sin 2πu/(cosh((2k+1)π²t) + cos πu)",
            (Formula::Thm2(One), Corrected) => {
                "π cot πu + 2π Σ_{k≥1} sin 2πu/(cosh 2kπ²t − cos 2πu)"
            }
            (Formula::Thm2(One), _) => "cot πu + 2π Σ_{k≥1} sin 2πu/(cosh 2kπ²t − cos 2πu)",
            (Formula::Thm2(Two), Corrected) => {
                "−π tan πu − 2π Σ_{k≥1} sin 2πu/(cosh 2kπ²t + cos 2πu)"
            }
            (Formula::Thm2(Two), _) => "−tan πu − 2π Σ_{k≥1} sin 2πu/(cosh 2kπ²t + cos 2πu)",
            (Formula::ZetaPrefactor, Printed) => "(1/(2k))·d/dz log θ4(z/(2K)), k the modulus",
            (Formula::ZetaPrefactor, PrintedAlt) => "(1/(2k))·∂u log θ4(u), u = z/(2K)",
            (Formula::ZetaPrefactor, Corrected) => "(1/(2K))·∂u log θ4(u), u = z/(2K)",
        }
    }

    /// Default comparison grid. For the Zeta constant, `u` carries the
    /// fraction `z/(2K)`.
    pub fn default_grid(self) -> Vec<EvalPoint> {
        let (us, ts) = match self {
            Formula::ZetaPrefactor => (
                (1..=9).map(|i| i as f64 / 10.0).collect::<Vec<_>>(),
                vec![0.3, 0.7, 1.5],
            ),
            _ => (compare_u_values(), compare_t_values()),
        };
        let mut grid = Vec::with_capacity(us.len() * ts.len());
        for &u in &us {
            for &t in &ts {
                grid.push(EvalPoint { u, t });
            }
        }
        grid
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "zeta-prefactor" {
            return Ok(Formula::ZetaPrefactor);
        }
        let bad = || Error::domain("formula", format!("unknown formula id {s:?}"));
        let (family, rest) = s.split_once('-').ok_or_else(bad)?;
        let j = rest
            .strip_prefix("theta")
            .and_then(|d| d.parse::<u8>().ok())
            .ok_or_else(bad)?;
        let j = ThetaIndex::new(j).map_err(|_| bad())?;
        match family {
            "prop1" => Ok(Formula::Prop1(j)),
            "prop2" => Ok(Formula::Prop2(j)),
            "thm1" => Ok(Formula::Thm1(j)),
            "thm2" => Ok(Formula::Thm2(j)),
            _ => Err(bad()),
        }
    }
}

/// Which reading of a formula is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Exactly as printed.
    Printed,
    /// A second literal reading: `t` restored inside the product for
    /// `prop1-theta2`; the 1/(2k) factor applied to `∂u` for the Zeta constant.
    PrintedAlt,
    /// The form validated against the q-series.
    Corrected,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::PrintedAlt => "printed-alt",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Variant::Printed),
            "printed-alt" => Ok(Variant::PrintedAlt),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(Error::domain("variant", format!("unknown variant {s:?}"))),
        }
    }
}

/// `Π_k factor(k)` until `|factor − 1| < tail_tol` with `k ≥ 2`.
fn complex_product(
    op: &'static str,
    trunc: SeriesTruncation,
    factor: impl Fn(usize) -> Complex64,
) -> Result<Complex64> {
    let mut total = Complex64::new(1.0, 0.0);
    for index in 0..trunc.max_terms {
        let f = factor(index);
        total *= f;
        if index >= 2 && (f - 1.0).norm() < trunc.tail_tol {
            return Ok(total);
        }
    }
    Err(Error::Convergence {
        op,
        terms: trunc.max_terms,
    })
}

fn theta0(j: ThetaIndex, t: f64, trunc: SeriesTruncation) -> Result<f64> {
    theta(j, EvalPoint::new(0.0, t)?, trunc)
}

fn slope1(t: f64, trunc: SeriesTruncation) -> Result<f64> {
    theta_du(ThetaIndex::One, EvalPoint::new(0.0, t)?, trunc)
}

/// Product expansion value, possibly with a spurious imaginary part.
fn product_value(
    formula: Formula,
    variant: Variant,
    p: EvalPoint,
    trunc: SeriesTruncation,
) -> Result<Complex64> {
    use ThetaIndex::*;
    let (u, t) = (p.u, p.t);
    let i = Complex64::i();
    let real = |x: f64| Complex64::new(x, 0.0);
    let half = |k: usize| (k as f64 + 0.5) * PI2 * t;
    let whole = |k: usize| (k as f64 + 1.0) * PI2 * t;
    // iπu − π²t/2, and w = πu + iπ²t/2
    let shifted = Complex64::new(-PI2 * t / 2.0, PI * u);
    let w = Complex64::new(PI * u, PI2 * t / 2.0);
    let op = "calibration";

    match (formula, variant) {
        (Formula::Prop1(Four), _) => {
            let s2 = sin_pi(u).powi(2);
            let prod = complex_product(op, trunc, |k| real(1.0 + s2 / half(k).sinh().powi(2)))?;
            Ok(prod * theta0(Four, t, trunc)?)
        }
        (Formula::Prop1(Three), _) => {
            let c2 = cos_pi(u).powi(2);
            let prod = complex_product(op, trunc, |k| real(1.0 + c2 / half(k).sinh().powi(2)))?;
            Ok(prod * theta0(Four, t, trunc)?)
        }
        (Formula::Prop1(Two), v) => {
            let c = shifted.cosh();
            let c2 = c * c;
            let phase = match v {
                Variant::Corrected => (i * PI * u - PI2 * t / 4.0).exp(),
                _ => (i * PI * (u - PI * t / 4.0)).exp(),
            };
            let prod = complex_product(op, trunc, |k| {
                let den = match v {
                    Variant::Printed => ((k as f64 + 0.5) * PI2).sinh(),
                    _ => half(k).sinh(),
                };
                1.0 + c2 / (den * den)
            })?;
            Ok(phase * prod * theta0(Four, t, trunc)?)
        }
        (Formula::Prop1(One), v) => {
            let s = shifted.sinh();
            let s2 = s * s;
            let sign = if v == Variant::Corrected { -1.0 } else { 1.0 };
            let phase = (i * PI * (u - 0.5) + sign * PI2 * t / 4.0).exp();
            let prod = complex_product(op, trunc, |k| 1.0 - s2 / half(k).sinh().powi(2))?;
            Ok(phase * prod * theta0(Four, t, trunc)?)
        }
        (Formula::Prop2(Two), Variant::Corrected) => {
            let s2 = sin_pi(u).powi(2);
            let prod = complex_product(op, trunc, |k| real(1.0 - s2 / whole(k).cosh().powi(2)))?;
            Ok(prod * cos_pi(u) * theta0(Two, t, trunc)?)
        }
        (Formula::Prop2(Two), _) => {
            let s2 = sin_pi(u).powi(2);
            let prod = complex_product(op, trunc, |k| real(1.0 + s2 / whole(k).sinh().powi(2)))?;
            Ok(prod * cos_pi(u) * theta0(Two, t, trunc)?)
        }
        (Formula::Prop2(One), Variant::Corrected) => {
            let s2 = sin_pi(u).powi(2);
            let prod = complex_product(op, trunc, |k| real(1.0 + s2 / whole(k).sinh().powi(2)))?;
            Ok(prod * (sin_pi(u) / PI2) * PI * slope1(t, trunc)?)
        }
        (Formula::Prop2(One), _) => {
            let c2 = cos_pi(u).powi(2);
            let prod = complex_product(op, trunc, |k| real(1.0 + c2 / whole(k).sinh().powi(2)))?;
            Ok(prod * sin_pi(u) * PI * slope1(t, trunc)?)
        }
        (Formula::Prop2(Three), Variant::Corrected) => {
            let s2 = w.sin().powi(2);
            let phase = (i * PI * u - PI2 * t / 4.0).exp();
            let prod = complex_product(op, trunc, |k| 1.0 - s2 / whole(k).cosh().powi(2))?;
            Ok(phase * w.cos() * prod * theta0(Two, t, trunc)?)
        }
        (Formula::Prop2(Three), _) => {
            let s2 = w.sin().powi(2);
            let phase = (i * (PI * u + PI2 * t / 4.0)).exp();
            let prod = complex_product(op, trunc, |k| 1.0 + s2 / whole(k).sinh().powi(2))?;
            Ok(phase * w.cos() * prod * theta0(Two, t, trunc)?)
        }
        (Formula::Prop2(Four), Variant::Corrected) => {
            let s2 = w.sin().powi(2);
            let phase = -i * (i * PI * u - PI2 * t / 4.0).exp();
            let prod = complex_product(op, trunc, |k| 1.0 + s2 / whole(k).sinh().powi(2))?;
            Ok(phase * w.sin() * prod * (slope1(t, trunc)? / PI))
        }
        (Formula::Prop2(Four), _) => {
            let c2 = w.cos().powi(2);
            let phase = (i * (PI * u + PI2 * t / 4.0)).exp();
            let prod = complex_product(op, trunc, |k| 1.0 + c2 / whole(k).sinh().powi(2))?;
            Ok(phase * w.sin() * prod * theta0(Two, t, trunc)?)
        }
        _ => unreachable!("not a product expansion"),
    }
}

/// `∂t log` of the printed reference for the t-series.
fn thm1_printed_reference(j: ThetaIndex, t: f64, trunc: SeriesTruncation) -> Result<f64> {
    let origin = EvalPoint::new(0.0, t)?;
    let jet = match j {
        ThetaIndex::Three | ThetaIndex::Four => theta_dt_jet(ThetaIndex::Four, origin, 1, trunc)?,
        ThetaIndex::One => {
            let jet = theta_du_dt_jet(ThetaIndex::One, origin, 1, trunc)?;
            return Ok(PI * jet.coeff(1) / jet.value());
        }
        ThetaIndex::Two => theta_dt_jet(ThetaIndex::Two, origin, 1, trunc)?,
    };
    Ok(jet.coeff(1) / jet.value())
}

fn thm2_printed(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    let (u, t) = (p.u, p.t);
    let sin2 = sin_pi(2.0 * u);
    let (leading, cos_arg, sign, first) = match j {
        ThetaIndex::Four => (0.0, cos_pi(u), -1.0, 0.5),
        ThetaIndex::Three => (0.0, cos_pi(u), 1.0, 0.5),
        ThetaIndex::One => (cos_pi(u) / sin_pi(u), cos_pi(2.0 * u), -1.0, 1.0),
        ThetaIndex::Two => (-sin_pi(u) / cos_pi(u), cos_pi(2.0 * u), 1.0, 1.0),
    };
    let outer = match j {
        ThetaIndex::Four | ThetaIndex::One => 1.0,
        ThetaIndex::Three | ThetaIndex::Two => -1.0,
    };
    if !leading.is_finite() {
        return Err(Error::domain(
            "calibration",
            format!("{j} has a pole at u = {u}"),
        ));
    }
    let mut total = leading;
    for index in 0..trunc.max_terms {
        let arg = 2.0 * (index as f64 + first) * PI2 * t;
        let term = outer * 2.0 * PI * sin2 / (arg.cosh() + sign * cos_arg);
        total += term;
        if index >= 2 && term.abs() < trunc.tail_tol {
            return Ok(total);
        }
    }
    Err(Error::Convergence {
        op: "calibration",
        terms: trunc.max_terms,
    })
}

/// Value of `formula` under `variant` at `p` (real part for complex forms).
pub fn evaluate(
    formula: Formula,
    variant: Variant,
    p: EvalPoint,
    trunc: SeriesTruncation,
) -> Result<f64> {
    Ok(evaluate_complex(formula, variant, p, trunc)?.re)
}

fn evaluate_complex(
    formula: Formula,
    variant: Variant,
    p: EvalPoint,
    trunc: SeriesTruncation,
) -> Result<Complex64> {
    let real = |x: f64| Complex64::new(x, 0.0);
    match formula {
        Formula::Prop1(_) | Formula::Prop2(_) => product_value(formula, variant, p, trunc),
        Formula::Thm1(j) => match variant {
            Variant::Corrected => Ok(real(dlog_theta_dt(j, p, trunc)?)),
            _ => {
                let series: f64 = dt_difference_terms(j, p, trunc)?.iter().sum();
                Ok(real(thm1_printed_reference(j, p.t, trunc)? - series))
            }
        },
        Formula::Thm2(j) => match variant {
            Variant::Corrected => Ok(real(dlog_theta_du(j, p, trunc)?)),
            _ => Ok(real(thm2_printed(j, p, trunc)?)),
        },
        Formula::ZetaPrefactor => {
            let params = elliptic_params(p.t, trunc)?;
            let dlog = dlog_theta_du(ThetaIndex::Four, p, trunc)?;
            let scale = match variant {
                Variant::Printed => 1.0 / (2.0 * params.k_modulus * 2.0 * params.k_complete),
                Variant::PrintedAlt => 1.0 / (2.0 * params.k_modulus),
                Variant::Corrected => 1.0 / (2.0 * params.k_complete),
            };
            Ok(real(scale * dlog))
        }
    }
}

/// Ground truth for `formula` at `p`; `None` where it is undefined.
pub fn oracle(formula: Formula, p: EvalPoint, trunc: SeriesTruncation) -> Result<Option<f64>> {
    match formula {
        Formula::Prop1(j) | Formula::Prop2(j) => Ok(Some(theta(j, p, trunc)?)),
        Formula::Thm1(j) => {
            let jet = theta_dt_jet(j, p, 1, trunc)?;
            Ok((jet.value() != 0.0).then(|| jet.coeff(1) / jet.value()))
        }
        Formula::Thm2(j) => {
            let value = theta(j, p, trunc)?;
            if value == 0.0 {
                return Ok(None);
            }
            Ok(Some(theta_du(j, p, trunc)? / value))
        }
        Formula::ZetaPrefactor => {
            let big_k = elliptic_params(p.t, trunc)?.k_complete;
            Ok(Some(jacobi_zeta(2.0 * big_k * p.u, p.t, trunc)?))
        }
    }
}

/// One compared grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparePoint {
    pub u: f64,
    pub t: f64,
    pub value: f64,
    pub oracle: f64,
    pub deviation: f64,
}

/// Deviation of `formula`/`variant` from the oracle at `p`, or `None` where
/// the oracle is undefined.
pub fn compare_point(
    formula: Formula,
    variant: Variant,
    p: EvalPoint,
    trunc: SeriesTruncation,
) -> Result<Option<ComparePoint>> {
    let Some(truth) = oracle(formula, p, trunc)? else {
        return Ok(None);
    };
    let value = evaluate_complex(formula, variant, p, trunc)?;
    let diff = (value - truth).norm();
    let deviation = if formula.relative() && truth != 0.0 {
        diff / truth.abs()
    } else {
        diff
    };
    // overflowed printed forms count as infinitely far off
    let deviation = if deviation.is_nan() {
        f64::INFINITY
    } else {
        deviation
    };
    Ok(Some(ComparePoint {
        u: p.u,
        t: p.t,
        value: value.re,
        oracle: truth,
        deviation,
    }))
}

/// Compare over a grid in parallel; results keep grid order.
pub fn compare_grid(
    formula: Formula,
    variant: Variant,
    grid: &[EvalPoint],
    trunc: SeriesTruncation,
) -> Result<Vec<ComparePoint>> {
    let points: Vec<Option<ComparePoint>> = grid
        .par_iter()
        .map(|&p| compare_point(formula, variant, p, trunc))
        .collect::<Result<_>>()?;
    Ok(points.into_iter().flatten().collect())
}

/// One ledger row.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerRow {
    pub formula: Formula,
    pub variant: Variant,
    pub max_abs_deviation: f64,
    pub grid_size: usize,
}

impl LedgerRow {
    pub fn passes(&self) -> bool {
        self.max_abs_deviation <= self.formula.tolerance()
    }
}

/// Ledger rows for every variant of `formula` on its default grid.
pub fn calibrate(formula: Formula, trunc: SeriesTruncation) -> Result<Vec<LedgerRow>> {
    let grid = formula.default_grid();
    formula
        .variants()
        .iter()
        .map(|&variant| {
            let points = compare_grid(formula, variant, &grid, trunc)?;
            let max = points.iter().map(|c| c.deviation).fold(0.0, f64::max);
            Ok(LedgerRow {
                formula,
                variant,
                max_abs_deviation: max,
                grid_size: points.len(),
            })
        })
        .collect()
}

/// The full ledger, formulas in catalogue order.
pub fn calibration_ledger(trunc: SeriesTruncation) -> Result<Vec<LedgerRow>> {
    let mut rows = Vec::new();
    for formula in Formula::all() {
        rows.extend(calibrate(formula, trunc)?);
    }
    Ok(rows)
}

pub fn write_ledger_csv(rows: &[LedgerRow], mut out: impl Write) -> std::io::Result<()> {
    writeln!(
        out,
        "formula_id,printed_or_corrected,max_abs_deviation,grid_size"
    )?;
    for row in rows {
        writeln!(
            out,
            "{},{},{:.15e},{}",
            row.formula, row.variant, row.max_abs_deviation, row.grid_size
        )?;
    }
    Ok(())
}
