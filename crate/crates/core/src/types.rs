//! Small domain types shared by all modules.

use std::fmt;

use crate::error::{Error, Result};

/// Which of the four Jacobi theta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaIndex {
    One,
    Two,
    Three,
    Four,
}

impl ThetaIndex {
    pub const ALL: [ThetaIndex; 4] = [
        ThetaIndex::One,
        ThetaIndex::Two,
        ThetaIndex::Three,
        ThetaIndex::Four,
    ];

    pub fn new(j: u8) -> Result<Self> {
        match j {
            1 => Ok(ThetaIndex::One),
            2 => Ok(ThetaIndex::Two),
            3 => Ok(ThetaIndex::Three),
            4 => Ok(ThetaIndex::Four),
            _ => Err(Error::domain("ThetaIndex", format!("j = {j} not in 1..=4"))),
        }
    }

    pub fn get(self) -> u8 {
        match self {
            ThetaIndex::One => 1,
            ThetaIndex::Two => 2,
            ThetaIndex::Three => 3,
            ThetaIndex::Four => 4,
        }
    }

    /// θ1 and θ2 flip sign under u → u + 1; θ3 and θ4 are 1-periodic.
    pub fn is_antiperiodic(self) -> bool {
        matches!(self, ThetaIndex::One | ThetaIndex::Two)
    }
}

impl fmt::Display for ThetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta{}", self.get())
    }
}

/// A real evaluation coordinate `(u, t)` with `t > 0`. The nome is
/// `q = exp(-π² t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    pub u: f64,
    pub t: f64,
}

impl EvalPoint {
    pub fn new(u: f64, t: f64) -> Result<Self> {
        if !u.is_finite() {
            return Err(Error::domain("EvalPoint", format!("u = {u} is not finite")));
        }
        check_t("EvalPoint", t)?;
        Ok(EvalPoint { u, t })
    }

    pub fn with_u(self, u: f64) -> Result<Self> {
        EvalPoint::new(u, self.t)
    }
}

pub(crate) fn check_t(op: &'static str, t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("t = {t} must be finite and > 0")))
    }
}

/// Stopping policy for every infinite sum in the crate.
///
/// A series stops once a term's magnitude drops below `tail_tol` (after a
/// small minimum number of terms); hitting `max_terms` first is a
/// convergence error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    pub tail_tol: f64,
    pub max_terms: usize,
}

impl SeriesTruncation {
    pub fn new(tail_tol: f64, max_terms: usize) -> Result<Self> {
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::domain(
                "SeriesTruncation",
                format!("tail_tol = {tail_tol} not in (0, 1)"),
            ));
        }
        if max_terms < 4 {
            return Err(Error::domain(
                "SeriesTruncation",
                format!("max_terms = {max_terms} < 4"),
            ));
        }
        Ok(SeriesTruncation {
            tail_tol,
            max_terms,
        })
    }
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        SeriesTruncation {
            tail_tol: crate::config::DEFAULT_TAIL_TOL,
            max_terms: crate::config::DEFAULT_MAX_TERMS,
        }
    }
}
