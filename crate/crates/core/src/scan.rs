//! Sign scans of t-derivatives over a grid.
//!
//! A scan evaluates a jet at every grid point, reads off the derivatives
//! `f^(m)(t) = m!·c_m` for a range of orders and checks each against an
//! expected sign. A pass is numerical evidence on the grid, not a proof of
//! complete monotonicity.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::config::{
    logspace, SCAN_MARGIN, SCAN_MAX_ORDER, SCAN_STRICT_FLOOR, SCAN_T_COUNT, SCAN_T_START,
    SCAN_T_STOP,
};
use crate::error::{Error, Result};
use crate::jet::Jet;

/// Grid of t values with the scan's order and tolerance settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    t_values: Vec<f64>,
    max_order: usize,
    margin: f64,
    strict_floor: f64,
}

impl ScanGrid {
    pub fn new(t_values: Vec<f64>, max_order: usize, margin: f64) -> Result<Self> {
        if t_values.is_empty() {
            return Err(Error::domain("ScanGrid", "empty t grid"));
        }
        if t_values.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::domain(
                "ScanGrid",
                "t values must be finite and positive",
            ));
        }
        if t_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(
                "ScanGrid",
                "t values must be strictly increasing",
            ));
        }
        if max_order > SCAN_MAX_ORDER {
            return Err(Error::domain(
                "ScanGrid",
                format!("max_order {max_order} exceeds {SCAN_MAX_ORDER}"),
            ));
        }
        if !(margin.is_finite() && margin >= 0.0) {
            return Err(Error::domain(
                "ScanGrid",
                format!("margin {margin} must be >= 0"),
            ));
        }
        Ok(ScanGrid {
            t_values,
            max_order,
            margin,
            strict_floor: SCAN_STRICT_FLOOR,
        })
    }

    /// Threshold a strictly signed value must exceed in magnitude.
    pub fn with_strict_floor(mut self, floor: f64) -> Result<Self> {
        if !(floor.is_finite() && floor >= 0.0) {
            return Err(Error::domain(
                "ScanGrid",
                format!("strict floor {floor} must be >= 0"),
            ));
        }
        self.strict_floor = floor;
        Ok(self)
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn strict_floor(&self) -> f64 {
        self.strict_floor
    }

    /// Short description used in report headers.
    pub fn describe(&self) -> String {
        format!(
            "{} points in [{:e}, {:e}]",
            self.t_values.len(),
            self.t_values[0],
            self.t_values[self.t_values.len() - 1]
        )
    }
}

impl Default for ScanGrid {
    /// `logspace(0.05, 5, 40)`, orders up to 6, margin 1e-10.
    fn default() -> Self {
        ScanGrid::new(
            logspace(SCAN_T_START, SCAN_T_STOP, SCAN_T_COUNT),
            SCAN_MAX_ORDER,
            SCAN_MARGIN,
        )
        .expect("default grid is valid")
    }
}

/// Expected sign of one derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedSign {
    NonNegative,
    Positive,
    NonPositive,
    Negative,
}

impl ExpectedSign {
    pub fn symbol(self) -> &'static str {
        match self {
            ExpectedSign::NonNegative => ">=0",
            ExpectedSign::Positive => ">0",
            ExpectedSign::NonPositive => "<=0",
            ExpectedSign::Negative => "<0",
        }
    }

    fn flipped(self) -> Self {
        match self {
            ExpectedSign::NonNegative => ExpectedSign::NonPositive,
            ExpectedSign::Positive => ExpectedSign::Negative,
            ExpectedSign::NonPositive => ExpectedSign::NonNegative,
            ExpectedSign::Negative => ExpectedSign::Positive,
        }
    }

    /// Value oriented so that the claim reads `oriented ≥ 0` or `> 0`.
    fn oriented(self, value: f64) -> f64 {
        match self {
            ExpectedSign::NonNegative | ExpectedSign::Positive => value,
            ExpectedSign::NonPositive | ExpectedSign::Negative => -value,
        }
    }

    fn strict(self) -> bool {
        matches!(self, ExpectedSign::Positive | ExpectedSign::Negative)
    }

    /// Non-strict signs tolerate `margin`; strict signs must clear `floor`.
    pub fn holds(self, value: f64, margin: f64, floor: f64) -> bool {
        let v = self.oriented(value);
        if self.strict() {
            v > floor
        } else {
            v >= -margin
        }
    }
}

impl fmt::Display for ExpectedSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Sign expected at each derivative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    /// `(−1)^m f^(m) ≥ 0`.
    Cm,
    /// `(−1)^m f^(m) ≤ 0`.
    AntiCm,
    /// `(−1)^m f^(m) > 0`.
    StrictCm,
    /// `(−1)^m f^(m) < 0`.
    StrictAntiCm,
    /// The same sign at every order.
    Fixed(ExpectedSign),
}

impl SignPattern {
    pub fn expected(self, order: usize) -> ExpectedSign {
        let base = match self {
            SignPattern::Cm => ExpectedSign::NonNegative,
            SignPattern::AntiCm => ExpectedSign::NonPositive,
            SignPattern::StrictCm => ExpectedSign::Positive,
            SignPattern::StrictAntiCm => ExpectedSign::Negative,
            SignPattern::Fixed(sign) => return sign,
        };
        if order % 2 == 1 {
            base.flipped()
        } else {
            base
        }
    }

    pub fn name(self) -> String {
        match self {
            SignPattern::Cm => "cm".into(),
            SignPattern::AntiCm => "anti-cm".into(),
            SignPattern::StrictCm => "strict-cm".into(),
            SignPattern::StrictAntiCm => "strict-anti-cm".into(),
            SignPattern::Fixed(sign) => format!("fixed{sign}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// One checked derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanEntry {
    pub t: f64,
    pub order: usize,
    /// `f^(order)(t)`.
    pub value: f64,
    pub expected: ExpectedSign,
    pub ok: bool,
}

/// A grid point where the scanned function could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanError {
    pub t: f64,
    pub message: String,
}

/// Outcome of a sign scan. `verdict` is `Pass` iff every entry is ok and
/// no grid point failed to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct SignScanReport {
    pub target_id: String,
    pub pattern: SignPattern,
    pub grid_description: String,
    pub margin: f64,
    pub strict_floor: f64,
    pub entries: Vec<ScanEntry>,
    pub errors: Vec<ScanError>,
    pub verdict: Verdict,
}

impl SignScanReport {
    fn judged(mut self) -> Self {
        for e in &mut self.entries {
            e.ok = e.expected.holds(e.value, self.margin, self.strict_floor);
        }
        self.verdict = if self.errors.is_empty() && self.entries.iter().all(|e| e.ok) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The entry closest to (or furthest into) violating its expected sign.
    pub fn worst_violation(&self) -> Option<&ScanEntry> {
        self.entries.iter().min_by(|a, b| {
            a.expected
                .oriented(a.value)
                .total_cmp(&b.expected.oriented(b.value))
        })
    }

    /// Re-judge the same values under a different margin.
    pub fn rejudge(&self, margin: f64) -> SignScanReport {
        SignScanReport {
            margin,
            ..self.clone()
        }
        .judged()
    }

    /// `target, verdict, worst (t, order, value)`, labelled as numerical
    /// evidence.
    pub fn summary_line(&self) -> String {
        let worst = match self.worst_violation() {
            Some(e) => format!("t={:.6e} order={} value={:.6e}", e.t, e.order, e.value),
            None => "none".to_string(),
        };
        let errors = if self.errors.is_empty() {
            String::new()
        } else {
            format!(" errors={}", self.errors.len())
        };
        format!(
            "{} {} [numerical evidence on grid] pattern={} worst: {}{}",
            self.target_id,
            self.verdict,
            self.pattern.name(),
            worst,
            errors
        )
    }

    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(
            out,
            "# theta-mono v1, target={}, grid={}, margin={:e}",
            self.target_id, self.grid_description, self.margin
        )?;
        writeln!(out, "t,order,value,expected_sign,ok")?;
        for e in &self.entries {
            writeln!(
                out,
                "{:.15e},{},{:.15e},{},{}",
                e.t, e.order, e.value, e.expected, e.ok
            )?;
        }
        for e in &self.errors {
            writeln!(out, "# error at t={:.15e}: {}", e.t, e.message)?;
        }
        Ok(())
    }
}

/// Scan derivatives of the jets produced by `f` over `orders`.
///
/// `f(t, order)` must return a jet of at least `order`. Grid points are
/// evaluated in parallel; entries keep grid order.
pub fn scan_jets<F>(
    target_id: impl Into<String>,
    grid: &ScanGrid,
    pattern: SignPattern,
    orders: RangeInclusive<usize>,
    f: F,
) -> SignScanReport
where
    F: Fn(f64, usize) -> Result<Jet> + Sync,
{
    let top = *orders.end();
    let results: Vec<(f64, Result<Jet>)> =
        grid.t_values.par_iter().map(|&t| (t, f(t, top))).collect();

    let mut entries = Vec::with_capacity(results.len() * (top + 1));
    let mut errors = Vec::new();
    for (t, jet) in results {
        match jet {
            Ok(jet) if jet.order() >= top => {
                for m in orders.clone() {
                    entries.push(ScanEntry {
                        t,
                        order: m,
                        value: jet.derivative(m),
                        expected: pattern.expected(m),
                        ok: false,
                    });
                }
            }
            Ok(jet) => errors.push(ScanError {
                t,
                message: format!("jet of order {} is shorter than {top}", jet.order()),
            }),
            Err(e) => errors.push(ScanError {
                t,
                message: e.to_string(),
            }),
        }
    }
    SignScanReport {
        target_id: target_id.into(),
        pattern,
        grid_description: grid.describe(),
        margin: grid.margin,
        strict_floor: grid.strict_floor,
        entries,
        errors,
        verdict: Verdict::Fail,
    }
    .judged()
}

/// `(−1)^m f^(m) ≥ −margin` for `m = 0..=max_order`.
pub fn cm_scan<F>(target_id: impl Into<String>, f: F, grid: &ScanGrid) -> SignScanReport
where
    F: Fn(f64, usize) -> Result<Jet> + Sync,
{
    scan_jets(target_id, grid, SignPattern::Cm, 0..=grid.max_order, f)
}

/// `(−1)^m (log f)^(m) ≥ −margin` for `m = 1..=max_order`; `f ≤ 0` at a grid
/// point is recorded as an error.
pub fn lcm_scan<F>(target_id: impl Into<String>, f: F, grid: &ScanGrid) -> SignScanReport
where
    F: Fn(f64, usize) -> Result<Jet> + Sync,
{
    let top = grid.max_order.max(1);
    scan_jets(target_id, grid, SignPattern::Cm, 1..=top, |t, order| {
        let jet = f(t, order)?;
        if jet.value().is_nan() || jet.value() <= 0.0 {
            return Err(Error::domain(
                "lcm_scan",
                format!("function value {:e} is not positive", jet.value()),
            ));
        }
        jet.ln()
    })
}
