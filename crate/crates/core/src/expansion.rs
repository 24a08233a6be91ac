//! Product (trigonometric) representations of the theta functions.
//!
//! Each shipped form writes `θ_j(u,t)` as a reference value times a trig
//! prefactor times `Π_k (1 ± x_k²)`, with
//! `x_k = trig(πu) / hyp(ν_k π² t)`. The inner power series in `x_k²` is
//! summed in closed form by [`inner_sum_closed`]:
//!
//! | j | reference        | prefactor        | factor            | ν_k          |
//! |---|------------------|------------------|-------------------|--------------|
//! | 4 | θ4(0,t)          | 1                | 1 + sin²πu/sinh²  | k+½, k ≥ 0   |
//! | 3 | θ3(0,t)          | 1                | 1 − sin²πu/cosh²  | k+½, k ≥ 0   |
//! | 2 | θ2(0,t)          | cos πu           | 1 − sin²πu/cosh²  | k, k ≥ 1     |
//! | 1 | π·∂uθ1(0,t)      | sin πu / π²      | 1 + sin²πu/sinh²  | k, k ≥ 1     |
//!
//! Every row was checked against the q-series; see [`crate::calibration`]
//! for the printed variants that failed that check.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::theta::{theta, theta_du};
use crate::trig::{cos_pi, sin_pi};
use crate::types::{EvalPoint, SeriesTruncation, ThetaIndex};

/// Which family of product expansions a shipped form belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Half-integer frequencies, reference `θ4(0,t)`.
    Proposition1,
    /// Integer frequencies, reference `θ2(0,t)` or `π ∂uθ1(0,t)`.
    Proposition2,
}

/// Sign inside each product factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// `1 + x²`, from the alternating inner sum.
    OnePlus,
    /// `1 − x²`, from the non-alternating inner sum.
    OneMinus,
}

impl FactorKind {
    fn alternating(self) -> bool {
        self == FactorKind::OnePlus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frequency {
    /// `ν_k = k + ½`, `k ≥ 0`.
    HalfInteger,
    /// `ν_k = k`, `k ≥ 1`.
    Integer,
}

impl Frequency {
    fn nu(self, index: usize) -> f64 {
        match self {
            Frequency::HalfInteger => index as f64 + 0.5,
            Frequency::Integer => index as f64 + 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumeratorTrig {
    Sin,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenominatorHyp {
    Sinh,
    Cosh,
}

/// The shape of one product expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionForm {
    pub j: ThetaIndex,
    pub source: Source,
    pub factor_kind: FactorKind,
    pub frequency: Frequency,
    pub numerator: NumeratorTrig,
    pub denominator: DenominatorHyp,
}

impl ExpansionForm {
    /// The oracle-validated form shipped for `j`.
    pub fn shipped(j: ThetaIndex) -> Self {
        use DenominatorHyp::*;
        use FactorKind::*;
        match j {
            ThetaIndex::Four => ExpansionForm {
                j,
                source: Source::Proposition1,
                factor_kind: OnePlus,
                frequency: Frequency::HalfInteger,
                numerator: NumeratorTrig::Sin,
                denominator: Sinh,
            },
            ThetaIndex::Three => ExpansionForm {
                j,
                source: Source::Proposition1,
                factor_kind: OneMinus,
                frequency: Frequency::HalfInteger,
                numerator: NumeratorTrig::Sin,
                denominator: Cosh,
            },
            ThetaIndex::Two => ExpansionForm {
                j,
                source: Source::Proposition2,
                factor_kind: OneMinus,
                frequency: Frequency::Integer,
                numerator: NumeratorTrig::Sin,
                denominator: Cosh,
            },
            ThetaIndex::One => ExpansionForm {
                j,
                source: Source::Proposition2,
                factor_kind: OnePlus,
                frequency: Frequency::Integer,
                numerator: NumeratorTrig::Sin,
                denominator: Sinh,
            },
        }
    }

    /// `x_k` for the k-th factor (k counted from 0).
    fn x(&self, index: usize, u: f64, t: f64) -> f64 {
        let num = match self.numerator {
            NumeratorTrig::Sin => sin_pi(u),
            NumeratorTrig::Cos => cos_pi(u),
        };
        let arg = self.frequency.nu(index) * PI * PI * t;
        let den = match self.denominator {
            DenominatorHyp::Sinh => arg.sinh(),
            DenominatorHyp::Cosh => arg.cosh(),
        };
        num / den
    }

    /// `Σ_k log(1 ± x_k²)` and the individual factors.
    fn log_product(&self, p: EvalPoint, trunc: SeriesTruncation) -> Result<(f64, Vec<f64>)> {
        let alternating = self.factor_kind.alternating();
        let mut total = 0.0;
        let mut factors = Vec::new();
        for index in 0..trunc.max_terms {
            let x = self.x(index, p.u, p.t);
            // factor = exp(-inner) with inner = Σ_p (±1)^p x^{2p} / p
            let log_factor = -inner_sum_closed(x, alternating)?;
            total += log_factor;
            factors.push(log_factor.exp());
            if index >= 2 && log_factor.abs() < trunc.tail_tol {
                return Ok((total, factors));
            }
        }
        Err(Error::Convergence {
            op: "log_theta_ratio",
            terms: trunc.max_terms,
        })
    }
}

/// Closed form of the inner power sums:
/// `Σ_{p≥1} (-1)^p x^{2p}/p = -log(1+x²)` (any real `x`) and
/// `Σ_{p≥1} x^{2p}/p = -log(1-x²)` (`|x| < 1`).
pub fn inner_sum_closed(x: f64, alternating: bool) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(
            "inner_sum_closed",
            format!("x = {x} is not finite"),
        ));
    }
    let x2 = x * x;
    if alternating {
        Ok(-x2.ln_1p())
    } else if x.abs() < 1.0 {
        Ok(-(-x2).ln_1p())
    } else {
        Err(Error::domain(
            "inner_sum_closed",
            format!("|x| = {} >= 1: series diverges", x.abs()),
        ))
    }
}

/// Signed trig prefactor multiplying the product.
fn prefactor(j: ThetaIndex, u: f64) -> f64 {
    match j {
        ThetaIndex::One => sin_pi(u) / (PI * PI),
        ThetaIndex::Two => cos_pi(u),
        ThetaIndex::Three | ThetaIndex::Four => 1.0,
    }
}

/// Reference value: `θ_j(0,t)` for j = 2, 3, 4 and `π·∂uθ1(0,t)` for j = 1.
pub fn reference_value(j: ThetaIndex, t: f64, trunc: SeriesTruncation) -> Result<f64> {
    let origin = EvalPoint::new(0.0, t)?;
    match j {
        ThetaIndex::One => Ok(PI * theta_du(ThetaIndex::One, origin, trunc)?),
        _ => theta(j, origin, trunc),
    }
}

/// `log(θ_j(u,t)/θ_j(0,t))` for j = 2, 3, 4 and
/// `log(θ1(u,t)/(π ∂uθ1(0,t)))` for j = 1, from the product expansion.
///
/// Fails where the ratio is zero or negative (θ1 at integer `u`, θ2 for
/// `cos πu ≤ 0`).
pub fn log_theta_ratio(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    let pre = prefactor(j, p.u);
    if pre <= 0.0 {
        return Err(Error::domain(
            "log_theta_ratio",
            format!("{j}({}, t) / reference is {pre:e}: log undefined", p.u),
        ));
    }
    let (log_prod, _) = ExpansionForm::shipped(j).log_product(p, trunc)?;
    Ok(pre.ln() + log_prod)
}

/// `θ_j(u,t)` rebuilt as `reference · prefactor · Π_k factor_k`.
///
/// Returns exactly 0 where the prefactor vanishes (θ1 at integer `u`,
/// θ2 at half-integer `u`).
pub fn theta_via_expansion(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<f64> {
    let pre = prefactor(j, p.u);
    if pre == 0.0 {
        return Ok(0.0);
    }
    let (log_prod, _) = ExpansionForm::shipped(j).log_product(p, trunc)?;
    Ok(reference_value(j, p.t, trunc)? * pre * log_prod.exp())
}

/// The product factors `1 ± x_k²`, k = 0, 1, … up to truncation.
pub fn expansion_factors(j: ThetaIndex, p: EvalPoint, trunc: SeriesTruncation) -> Result<Vec<f64>> {
    Ok(ExpansionForm::shipped(j).log_product(p, trunc)?.1)
}
