//! Jacobi theta functions on the imaginary axis `τ = iπt`, two independent
//! ways to evaluate them, their logarithmic derivatives, and a sign-scan
//! engine that collects numerical evidence for complete monotonicity.
//!
//! * [`theta`]: q-series ground truth with exact term-wise derivatives.
//! * [`expansion`]: product (trigonometric) representations of
//!   `θ_j(u,t)/θ_j(0,t)`, and [`calibration`] which checks the printed
//!   variants of those formulas against the q-series.
//! * [`log_deriv`]: series for `∂_t log θ_j` and `∂_u log θ_j`.
//! * [`elliptic`]: modulus, complete elliptic integral and Jacobi Zeta.
//! * [`jet`]: truncated Taylor arithmetic used for every t-derivative.
//! * [`scan`] and [`monotonicity`]: sign scans over t-grids.

pub mod calibration;
pub mod config;
pub mod elliptic;
pub mod error;
pub mod expansion;
pub mod jet;
pub mod log_deriv;
pub mod monotonicity;
pub mod scan;
pub mod theta;
mod trig;
pub mod types;

pub use error::{Error, Result};
pub use jet::{jet_arith, jet_fn, Jet, JetFn, JetOp};
pub use scan::{ScanGrid, SignPattern, SignScanReport, Verdict};
pub use theta::{
    jacobi_identity_residual, nome, scaled_theta_dt_jet, scaled_theta_du_dt_jet, theta,
    theta_dt_jet, theta_du, theta_du_dt_jet, theta_duu,
};
pub use trig::{cos_pi, sin_pi};
pub use types::{EvalPoint, SeriesTruncation, ThetaIndex};
