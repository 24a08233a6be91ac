//! Sign scans for the monotonicity claims on theta functions and their
//! quotients.
//!
//! All t-derivatives come from exact q-series jets combined in jet
//! arithmetic. The quotient is
//!
//! ```text
//! S_j(u, v, t) = θ_j(u/2, t) / θ_j(v/2, t),   0 ≤ u < v < 1.
//! ```
//!
//! Ratios of θ1 or θ2 are built from scaled jets (the common `e^{−π²t/4}`
//! removed), which leaves every ratio unchanged but keeps its t-derivatives
//! accurate when they are exponentially small.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scan::{
    cm_scan, lcm_scan, scan_jets, ExpectedSign, ScanGrid, SignPattern, SignScanReport,
};
use crate::theta::{scaled_theta_dt_jet, scaled_theta_du_dt_jet, theta_dt_jet, theta_du_dt_jet};
use crate::trig::{cos_pi, sin_pi};
use crate::types::{EvalPoint, SeriesTruncation, ThetaIndex};

/// Functions of t whose CM and LCM properties are scanned directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lemma1Fn {
    Coth,
    /// `1/sinh t`.
    Csch,
    /// `a/(cosh t − b)` with `a > 0`, `0 ≤ b ≤ 1`.
    CoshShift {
        a: f64,
        b: f64,
    },
}

impl Lemma1Fn {
    pub fn cosh_shift(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite() && (0.0..=1.0).contains(&b)) {
            return Err(Error::domain(
                "Lemma1Fn",
                format!("need a > 0 and 0 <= b <= 1, got a = {a}, b = {b}"),
            ));
        }
        Ok(Lemma1Fn::CoshShift { a, b })
    }

    pub fn id(self) -> String {
        match self {
            Lemma1Fn::Coth => "coth".into(),
            Lemma1Fn::Csch => "csch".into(),
            Lemma1Fn::CoshShift { a, b } => format!("{a}/(cosh-{b})"),
        }
    }

    pub fn jet(self, t: f64, order: usize) -> Result<Jet> {
        let x = Jet::variable(t, order);
        match self {
            Lemma1Fn::Coth => x.coth(),
            Lemma1Fn::Csch => x.sinh().recip(),
            Lemma1Fn::CoshShift { a, b } => Ok(x.cosh().offset(-b).recip()?.scale(a)),
        }
    }
}

/// `[cm, lcm]` scans of one of the elementary test functions.
pub fn lemma1_scans(f: Lemma1Fn, grid: &ScanGrid) -> [SignScanReport; 2] {
    [
        cm_scan(format!("lemma1-cm-{}", f.id()), |t, k| f.jet(t, k), grid),
        lcm_scan(format!("lemma1-lcm-{}", f.id()), |t, k| f.jet(t, k), grid),
    ]
}

fn at(u: f64, t: f64) -> Result<EvalPoint> {
    EvalPoint::new(u, t)
}

fn check_u(op: &'static str, u: f64) -> Result<()> {
    if !(u.is_finite() && (0.0..=1.0).contains(&u)) {
        return Err(Error::domain(op, format!("u = {u} not in [0, 1]")));
    }
    Ok(())
}

/// Reject `u` at a zero of `θ_j`: integers for j = 1, half-integers for j = 2.
fn check_not_zero_of(op: &'static str, j: ThetaIndex, u: f64) -> Result<()> {
    let vanishes = match j {
        ThetaIndex::One => sin_pi(u) == 0.0,
        ThetaIndex::Two => cos_pi(u) == 0.0,
        _ => false,
    };
    if vanishes {
        return Err(Error::domain(op, format!("{j} vanishes at u = {u}")));
    }
    Ok(())
}

/// Jet of `θ_j(u,·)/θ_j(0,·)` (j = 2, 3, 4) or `θ1(u,·)/(π ∂uθ1(0,·))`.
pub fn theta_ratio_jet(
    j: ThetaIndex,
    u: f64,
    t: f64,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    let num = scaled_theta_dt_jet(j, at(u, t)?, order, trunc)?;
    let den = match j {
        ThetaIndex::One => {
            scaled_theta_du_dt_jet(ThetaIndex::One, at(0.0, t)?, order, trunc)?.scale(PI)
        }
        _ => scaled_theta_dt_jet(j, at(0.0, t)?, order, trunc)?,
    };
    num.checked_div(&den)
}

/// LCM scan of the normalized ratio in t.
pub fn theorem3_scan(
    j: ThetaIndex,
    u: f64,
    grid: &ScanGrid,
    trunc: SeriesTruncation,
) -> Result<SignScanReport> {
    check_u("theorem3_scan", u)?;
    check_not_zero_of("theorem3_scan", j, u)?;
    Ok(lcm_scan(
        format!("theorem3-{j}-u{u}"),
        |t, k| theta_ratio_jet(j, u, t, k, trunc),
        grid,
    ))
}

/// `+1` for j = 1, 4 and `−1` for j = 2, 3.
pub fn theorem4_sign(j: ThetaIndex) -> f64 {
    match j {
        ThetaIndex::One | ThetaIndex::Four => 1.0,
        ThetaIndex::Two | ThetaIndex::Three => -1.0,
    }
}

/// Jet of `s·∂uθ_j/θ_j` in t.
pub fn signed_dlog_du_jet(
    j: ThetaIndex,
    u: f64,
    t: f64,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    let p = at(u, t)?;
    let du = scaled_theta_du_dt_jet(j, p, order, trunc)?;
    let value = scaled_theta_dt_jet(j, p, order, trunc)?;
    Ok(du.checked_div(&value)?.scale(theorem4_sign(j)))
}

/// CM scan of `s·∂uθ_j/θ_j` in t.
pub fn theorem4_scan(
    j: ThetaIndex,
    u: f64,
    grid: &ScanGrid,
    trunc: SeriesTruncation,
) -> Result<SignScanReport> {
    check_u("theorem4_scan", u)?;
    check_not_zero_of("theorem4_scan", j, u)?;
    Ok(cm_scan(
        format!("theorem4-{j}-u{u}"),
        |t, k| signed_dlog_du_jet(j, u, t, k, trunc),
        grid,
    ))
}

/// `∂t^k (∂tθ/θ)` at `p`.
fn dt_k_of_dlog_dt(j: ThetaIndex, p: EvalPoint, k: usize, trunc: SeriesTruncation) -> Result<f64> {
    let jet = theta_dt_jet(j, p, k + 1, trunc)?;
    Ok(jet
        .differentiate()
        .checked_div(&jet.truncate(k))?
        .derivative(k))
}

/// Both sides of the mixed-partial identity
/// `∂u ∂t^k (∂tθ/θ) = ∂t^{k+1} (∂uθ/θ)`: the left by a central difference
/// in u with step `h_u`, the right from exact jets.
pub fn lemma2_sides(
    j: ThetaIndex,
    p: EvalPoint,
    k_order: usize,
    h_u: f64,
    trunc: SeriesTruncation,
) -> Result<(f64, f64)> {
    if k_order > 4 {
        return Err(Error::domain(
            "lemma2_residual",
            format!("k = {k_order} exceeds 4"),
        ));
    }
    if !(1e-5..=1e-3).contains(&h_u) {
        return Err(Error::domain(
            "lemma2_residual",
            format!("h_u = {h_u} not in [1e-5, 1e-3]"),
        ));
    }
    let plus = dt_k_of_dlog_dt(j, p.with_u(p.u + h_u)?, k_order, trunc)?;
    let minus = dt_k_of_dlog_dt(j, p.with_u(p.u - h_u)?, k_order, trunc)?;
    let left = (plus - minus) / (2.0 * h_u);

    let du = theta_du_dt_jet(j, p, k_order + 1, trunc)?;
    let value = theta_dt_jet(j, p, k_order + 1, trunc)?;
    let right = du.checked_div(&value)?.derivative(k_order + 1);
    Ok((left, right))
}

/// `|left − right|` of [`lemma2_sides`].
pub fn lemma2_residual(
    j: ThetaIndex,
    p: EvalPoint,
    k_order: usize,
    h_u: f64,
    trunc: SeriesTruncation,
) -> Result<f64> {
    let (left, right) = lemma2_sides(j, p, k_order, h_u, trunc)?;
    Ok((left - right).abs())
}

/// `(j, u, v)` with `0 ≤ u < v < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientSpec {
    j: ThetaIndex,
    u: f64,
    v: f64,
}

impl QuotientSpec {
    pub fn new(j: ThetaIndex, u: f64, v: f64) -> Result<Self> {
        if !(u.is_finite() && v.is_finite() && 0.0 <= u && u < v && v < 1.0) {
            return Err(Error::domain(
                "QuotientSpec",
                format!("need 0 <= u < v < 1, got u = {u}, v = {v}"),
            ));
        }
        Ok(QuotientSpec { j, u, v })
    }

    pub fn j(&self) -> ThetaIndex {
        self.j
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn id(&self) -> String {
        format!("{}-u{}-v{}", self.j, self.u, self.v)
    }
}

/// Jet of `S_j(u, v, ·)` at `t`.
pub fn quotient_jet(
    spec: &QuotientSpec,
    t: f64,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    let num = scaled_theta_dt_jet(spec.j, at(spec.u / 2.0, t)?, order, trunc)?;
    let den = scaled_theta_dt_jet(spec.j, at(spec.v / 2.0, t)?, order, trunc)?;
    num.checked_div(&den)
}

/// Jet of `∂tS_j/S_j`. For j = 1 at `u = 0` the numerator is replaced by its
/// limit `∂uθ1(0, ·)`, which has the same t-log-derivative.
pub fn quotient_dlog_jet(
    spec: &QuotientSpec,
    t: f64,
    order: usize,
    trunc: SeriesTruncation,
) -> Result<Jet> {
    let num = if spec.j == ThetaIndex::One && spec.u == 0.0 {
        scaled_theta_du_dt_jet(ThetaIndex::One, at(0.0, t)?, order + 1, trunc)?
    } else {
        scaled_theta_dt_jet(spec.j, at(spec.u / 2.0, t)?, order + 1, trunc)?
    };
    let den = scaled_theta_dt_jet(spec.j, at(spec.v / 2.0, t)?, order + 1, trunc)?;
    let log_num = num.differentiate().checked_div(&num.truncate(order))?;
    let log_den = den.differentiate().checked_div(&den.truncate(order))?;
    log_num.checked_sub(&log_den)
}

/// Strict sign pattern of `∂tS_j/S_j`: `(−1)^k f^(k) > 0` for j = 1, 4 and
/// `< 0` for j = 2, 3.
pub fn theorem5_pattern(j: ThetaIndex) -> SignPattern {
    match j {
        ThetaIndex::One | ThetaIndex::Four => SignPattern::StrictCm,
        ThetaIndex::Two | ThetaIndex::Three => SignPattern::StrictAntiCm,
    }
}

pub fn theorem5_scan(
    spec: &QuotientSpec,
    grid: &ScanGrid,
    trunc: SeriesTruncation,
) -> SignScanReport {
    scan_jets(
        format!("theorem5-{}", spec.id()),
        grid,
        theorem5_pattern(spec.j),
        0..=grid.max_order(),
        |t, k| quotient_dlog_jet(spec, t, k, trunc),
    )
}

/// One report per sign claim on `S_j`:
/// - `cor5-positive`: `S > 0`;
/// - `cor5-monotone`: `∂tS > 0` (j = 1, 4) or `< 0` (j = 2, 3);
/// - `cor6-convexity`: `∂t²S < 0` (j = 1, 4) or `> 0` (j = 2, 3);
/// - `cor7-third` (j = 2, 3 only): `∂t³S ≤ 0`;
/// - `cor8-dlog-convexity` (j = 4 only): `∂t²(∂tS/S) ≥ 0`.
pub fn corollary_scans(
    spec: &QuotientSpec,
    grid: &ScanGrid,
    trunc: SeriesTruncation,
) -> Vec<SignScanReport> {
    use ExpectedSign::*;
    let increasing = matches!(spec.j, ThetaIndex::One | ThetaIndex::Four);
    let s = |t: f64, k: usize| quotient_jet(spec, t, k.max(3), trunc);
    let fixed = |name: &str, sign: ExpectedSign, order: usize| {
        scan_jets(
            format!("{name}-{}", spec.id()),
            grid,
            SignPattern::Fixed(sign),
            order..=order,
            s,
        )
    };

    let mut reports = vec![
        fixed("cor5-positive", Positive, 0),
        fixed(
            "cor5-monotone",
            if increasing { Positive } else { Negative },
            1,
        ),
        fixed(
            "cor6-convexity",
            if increasing { Negative } else { Positive },
            2,
        ),
    ];
    match spec.j {
        ThetaIndex::Two | ThetaIndex::Three => reports.push(fixed("cor7-third", NonPositive, 3)),
        ThetaIndex::Four => reports.push(scan_jets(
            format!("cor8-dlog-convexity-{}", spec.id()),
            grid,
            SignPattern::Fixed(NonNegative),
            2..=2,
            |t, k| quotient_dlog_jet(spec, t, k, trunc),
        )),
        ThetaIndex::One => {}
    }
    reports
}

/// Raw derivatives `∂tS`, `∂t²S`, `∂t³S` at one t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawSignRow {
    pub t: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// Uninterpreted signs of the first three t-derivatives of `S_j`, for
/// claims whose intended sign is ambiguous.
pub fn raw_sign_table(
    spec: &QuotientSpec,
    grid: &ScanGrid,
    trunc: SeriesTruncation,
) -> Result<Vec<RawSignRow>> {
    grid.t_values()
        .iter()
        .map(|&t| {
            let jet = quotient_jet(spec, t, 3, trunc)?;
            Ok(RawSignRow {
                t,
                d1: jet.derivative(1),
                d2: jet.derivative(2),
                d3: jet.derivative(3),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::theta;

    fn tr() -> SeriesTruncation {
        SeriesTruncation::default()
    }

    fn grid() -> ScanGrid {
        ScanGrid::default()
    }

    #[test]
    fn lemma1_functions_with_a_pole_pass() {
        for f in [
            Lemma1Fn::Coth,
            Lemma1Fn::Csch,
            Lemma1Fn::cosh_shift(1.0, 1.0).unwrap(),
        ] {
            for r in lemma1_scans(f, &grid()) {
                assert!(r.passed(), "{}", r.summary_line());
            }
        }
        assert!(Lemma1Fn::cosh_shift(1.0, 1.5).is_err());
        assert!(Lemma1Fn::cosh_shift(0.0, 0.5).is_err());
    }

    #[test]
    fn even_cosh_shift_is_not_cm_near_zero() {
        // b < 1 leaves a/(cosh t − b) even and regular at 0, so f''(0) < 0;
        // (log sech)'' = −sech² < 0 for every t
        let [cm, lcm] = lemma1_scans(Lemma1Fn::cosh_shift(1.0, 0.0).unwrap(), &grid());
        assert!(!cm.passed() && !lcm.passed());
        assert!(lcm.entries.iter().filter(|e| e.order == 2).all(|e| !e.ok));
        let first = cm.entries.iter().find(|e| e.order == 2).unwrap();
        assert!(first.value < 0.0);
    }

    #[test]
    fn theorem3_examples() {
        let g = grid();
        assert!(theorem3_scan(ThetaIndex::Four, 0.3, &g, tr())
            .unwrap()
            .passed());
        assert!(theorem3_scan(ThetaIndex::One, 0.5, &g, tr())
            .unwrap()
            .passed());
        // θ3(u)/θ3(0) < 1 rises to 1: its log-derivative is positive
        let rising = theorem3_scan(ThetaIndex::Three, 0.25, &g, tr()).unwrap();
        assert!(!rising.passed());
        assert!(rising
            .entries
            .iter()
            .filter(|e| e.order == 1)
            .all(|e| e.value > 0.0));
        let flat = theorem3_scan(ThetaIndex::Four, 0.0, &g, tr()).unwrap();
        assert!(flat.passed());
        assert!(flat.entries.iter().all(|e| e.value == 0.0));
        assert!(theorem3_scan(ThetaIndex::Two, 0.5, &g, tr()).is_err());
    }

    #[test]
    fn theorem4_examples() {
        let g = grid();
        assert!(theorem4_scan(ThetaIndex::Four, 0.3, &g, tr())
            .unwrap()
            .passed());
        assert!(theorem4_scan(ThetaIndex::Two, 0.3, &g, tr())
            .unwrap()
            .passed());
        let zero = theorem4_scan(ThetaIndex::Three, 0.5, &g, tr()).unwrap();
        assert!(zero.passed());
        assert!(zero.entries.iter().all(|e| e.value == 0.0));
        assert!(theorem4_scan(ThetaIndex::One, 1.0, &g, tr()).is_err());
        // ∂u log θ4 is odd about u = ½, so the sign flips past ½
        let flipped = theorem4_scan(ThetaIndex::Four, 0.75, &g, tr()).unwrap();
        assert!(flipped
            .entries
            .iter()
            .filter(|e| e.order == 0)
            .all(|e| e.value < 0.0));
    }

    #[test]
    fn lemma2_examples() {
        let p = EvalPoint::new(0.3, 0.7).unwrap();
        assert!(lemma2_residual(ThetaIndex::Four, p, 0, 1e-4, tr()).unwrap() <= 1e-6);
        let p = EvalPoint::new(0.5, 0.9).unwrap();
        for k in 0..=4 {
            assert!(lemma2_residual(ThetaIndex::Three, p, k, 1e-4, tr()).unwrap() <= 1e-10);
        }
        let p = EvalPoint::new(0.2, 1.0).unwrap();
        assert!(lemma2_residual(ThetaIndex::Two, p, 2, 1e-4, tr()).unwrap() <= 1e-5);
        assert!(lemma2_residual(ThetaIndex::Two, p, 5, 1e-4, tr()).is_err());
        assert!(lemma2_residual(ThetaIndex::Two, p, 1, 1e-2, tr()).is_err());
    }

    #[test]
    fn quotient_spec_ordering() {
        assert!(QuotientSpec::new(ThetaIndex::Four, 0.6, 0.2).is_err());
        assert!(QuotientSpec::new(ThetaIndex::Four, 0.2, 0.2).is_err());
        assert!(QuotientSpec::new(ThetaIndex::Four, 0.2, 1.0).is_err());
        assert!(QuotientSpec::new(ThetaIndex::Four, 0.0, 0.5).is_ok());
    }

    #[test]
    fn quotient_value_matches_theta() {
        let spec = QuotientSpec::new(ThetaIndex::Four, 0.2, 0.6).unwrap();
        let jet = quotient_jet(&spec, 0.5, 2, tr()).unwrap();
        let oracle = theta(ThetaIndex::Four, EvalPoint::new(0.1, 0.5).unwrap(), tr()).unwrap()
            / theta(ThetaIndex::Four, EvalPoint::new(0.3, 0.5).unwrap(), tr()).unwrap();
        assert!((jet.value() - oracle).abs() < 1e-14);

        let spec = QuotientSpec::new(ThetaIndex::Two, 0.0, 0.5).unwrap();
        assert!(quotient_jet(&spec, 1.0, 0, tr()).unwrap().value() > 1.0);
    }

    #[test]
    fn theorem5_examples() {
        let g = grid();
        for (j, u, v) in [
            (ThetaIndex::Four, 0.2, 0.6),
            (ThetaIndex::Two, 0.2, 0.6),
            (ThetaIndex::Three, 0.1, 0.9),
            (ThetaIndex::One, 0.0, 0.5),
        ] {
            let r = theorem5_scan(&QuotientSpec::new(j, u, v).unwrap(), &g, tr());
            assert!(r.passed(), "{}", r.summary_line());
        }
    }

    #[test]
    fn corollary_examples() {
        let g = grid();
        let spec = QuotientSpec::new(ThetaIndex::One, 0.2, 0.6).unwrap();
        let reports = corollary_scans(&spec, &g, tr());
        assert_eq!(reports.len(), 3);
        assert!(reports[0].passed() && reports[1].passed());

        let spec = QuotientSpec::new(ThetaIndex::Three, 0.2, 0.6).unwrap();
        assert!(corollary_scans(&spec, &g, tr())[2].passed());

        let spec = QuotientSpec::new(ThetaIndex::Two, 0.2, 0.6).unwrap();
        let reports = corollary_scans(&spec, &g, tr());
        assert!(reports[3].target_id.starts_with("cor7-third"));
        assert!(reports[3].passed());
    }

    #[test]
    fn raw_table_for_theta4() {
        let spec = QuotientSpec::new(ThetaIndex::Four, 0.2, 0.6).unwrap();
        let rows = raw_sign_table(&spec, &grid(), tr()).unwrap();
        assert_eq!(rows.len(), 40);
        // S4 increases in t
        assert!(rows.iter().all(|r| r.d1 > 0.0));
    }
}
