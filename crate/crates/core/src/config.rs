//! Every default tolerance and grid used by the library and the CLI.
//!
//! Flags on the command line override these; nothing else hard-codes them.

/// Series stop threshold on a single term's magnitude.
pub const DEFAULT_TAIL_TOL: f64 = 1e-16;
/// Hard cap on terms in any series.
pub const DEFAULT_MAX_TERMS: usize = 64;

/// Highest t-order a theta jet may be requested at.
pub const MAX_JET_ORDER: usize = 12;

/// Default scan grid: `logspace(0.05, 5, 40)`.
pub const SCAN_T_START: f64 = 0.05;
pub const SCAN_T_STOP: f64 = 5.0;
pub const SCAN_T_COUNT: usize = 40;
/// Highest derivative order a sign scan may inspect.
pub const SCAN_MAX_ORDER: usize = 6;
/// Tolerated numerical violation of a non-strict sign claim.
pub const SCAN_MARGIN: f64 = 1e-10;
/// Threshold a strict sign claim must exceed.
pub const SCAN_STRICT_FLOOR: f64 = 0.0;

/// Cross-representation grid: `u ∈ {0.05, 0.10, …, 0.95}`, `t ∈ logspace(0.05, 5, 25)`.
pub const COMPARE_T_COUNT: usize = 25;
pub const COMPARE_U_STEP: f64 = 0.05;
pub const COMPARE_U_COUNT: usize = 19;

/// AGM stop: `|a - b| <= AGM_REL_TOL * a`.
pub const AGM_REL_TOL: f64 = 1e-15;
pub const AGM_MAX_ITER: usize = 40;

/// Distance of a trig factor from zero below which a pole is declared.
pub const POLE_TOL: f64 = 1e-12;

/// `count` log-spaced points from `start` to `stop` inclusive.
pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let (a, b) = (start.ln(), stop.ln());
            let step = (b - a) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        stop
                    } else {
                        (a + step * i as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count).map(|i| start + step * i as f64).collect()
        }
    }
}

/// The u-values of the cross-representation grid, computed as `i/20` to
/// avoid accumulated rounding.
pub fn compare_u_values() -> Vec<f64> {
    (1..=COMPARE_U_COUNT).map(|i| i as f64 / 20.0).collect()
}

pub fn compare_t_values() -> Vec<f64> {
    logspace(SCAN_T_START, SCAN_T_STOP, COMPARE_T_COUNT)
}
