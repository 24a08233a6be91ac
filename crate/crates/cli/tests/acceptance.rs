//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion line reports whether the claim holds on every sub-case.
//! Some sub-cases are genuine counterexamples to the claim being scanned;
//! they are listed in `KNOWN_COUNTEREXAMPLES` and must keep failing. The
//! target exits nonzero if any other sub-case fails or a listed one passes.

use std::collections::BTreeSet;
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use theta_mono::calibration::{self, Formula, Variant};
use theta_mono::config::{compare_t_values, compare_u_values, logspace};
use theta_mono::elliptic::{elliptic_params, jacobi_zeta, jacobi_zeta_from_theta};
use theta_mono::expansion::theta_via_expansion;
use theta_mono::monotonicity::{
    corollary_scans, lemma1_scans, lemma2_residual, theorem3_scan, theorem4_scan, theorem5_scan,
    Lemma1Fn, QuotientSpec,
};
use theta_mono::{
    jacobi_identity_residual, jet_arith, jet_fn, theta, theta_dt_jet, EvalPoint, Jet, JetFn, JetOp,
    ScanGrid, SeriesTruncation, SignScanReport, ThetaIndex,
};

/// Sub-cases that fail for mathematical reasons, with the reason.
const KNOWN_COUNTEREXAMPLES: &[(&str, &str)] = &[
    (
        "lemma1-cm-1/(cosh-0)",
        "even and regular at 0, so f'(0) = 0 and f''(0) < 0",
    ),
    ("lemma1-lcm-1/(cosh-0)", "(log sech)'' = -sech^2 < 0"),
    ("lemma1-cm-2/(cosh-0.5)", "regular at 0 with f''(0) < 0"),
    (
        "lemma1-lcm-2/(cosh-0.5)",
        "regular at 0 with (log f)''(0) < 0",
    ),
    (
        "theorem3-theta2-u0.1",
        "theta2(u)/theta2(0) increases in t for |u| < 1/2",
    ),
    (
        "theorem3-theta2-u0.25",
        "theta2(u)/theta2(0) increases in t for |u| < 1/2",
    ),
    (
        "theorem3-theta2-u0.75",
        "theta2 < 0 there, so the log is undefined",
    ),
    (
        "theorem3-theta2-u0.9",
        "theta2 < 0 there, so the log is undefined",
    ),
    ("theorem3-theta3-u0.1", "theta3(u)/theta3(0) increases in t"),
    (
        "theorem3-theta3-u0.25",
        "theta3(u)/theta3(0) increases in t",
    ),
    ("theorem3-theta3-u0.5", "theta3(u)/theta3(0) increases in t"),
    (
        "theorem3-theta3-u0.75",
        "theta3(u)/theta3(0) increases in t",
    ),
    ("theorem3-theta3-u0.9", "theta3(u)/theta3(0) increases in t"),
    (
        "theorem4-theta1-u0.75",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta1-u0.9",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta2-u0.75",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta2-u0.9",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta3-u0.75",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta3-u0.9",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta4-u0.75",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta4-u0.9",
        "d/du log theta is odd about u = 1/2, so the sign flips",
    ),
    (
        "theorem4-theta3-u0.1",
        "orders 5-6 change sign near t = 0.33 (-9.5931e4 at order 5)",
    ),
    (
        "theorem5-theta3-u0-v0.5",
        "order 6 is +1.551e5 near t = 0.37",
    ),
    (
        "cor5-positive-theta1-u0-v0.5",
        "theta1(0) = 0, so S vanishes identically",
    ),
    (
        "cor5-monotone-theta1-u0-v0.5",
        "theta1(0) = 0, so S vanishes identically",
    ),
    (
        "cor6-convexity-theta1-u0-v0.5",
        "theta1(0) = 0, so S vanishes identically",
    ),
    (
        "cor6-convexity-theta1-u0.2-v0.6",
        "S ~ exp(-D/t) is convex for small t (+16.16 at t = 0.05)",
    ),
    (
        "cor6-convexity-theta1-u0.1-v0.9",
        "S ~ exp(-D/t) is convex for small t (+34.81 at t = 0.05)",
    ),
    (
        "cor6-convexity-theta4-u0-v0.5",
        "S ~ exp(-D/t) is convex for small t (+123.3 at t = 0.05)",
    ),
    (
        "cor6-convexity-theta4-u0.2-v0.6",
        "S ~ exp(-D/t) is convex for small t (+53.51 at t = 0.05)",
    ),
    (
        "cor6-convexity-theta4-u0.1-v0.9",
        "S ~ exp(-D/t) is convex for small t (+82.41 at t = 0.05)",
    ),
];

const LEMMA1_CASES: &[(f64, f64)] = &[(1.0, 0.0), (2.0, 0.5), (1.0, 1.0)];
const U_SET: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
const PAIRS: [(f64, f64); 3] = [(0.0, 0.5), (0.2, 0.6), (0.1, 0.9)];

fn tr() -> SeriesTruncation {
    SeriesTruncation::default()
}

fn pt(u: f64, t: f64) -> EvalPoint {
    EvalPoint::new(u, t).unwrap()
}

/// Outcome of one criterion.
#[derive(Default)]
struct Criterion {
    holds: bool,
    detail: String,
    /// Sub-case results that disagree with the documented analysis.
    surprises: Vec<String>,
}

impl Criterion {
    fn measured(holds: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        let surprises = if holds {
            Vec::new()
        } else {
            vec![detail.clone()]
        };
        Criterion {
            holds,
            detail,
            surprises,
        }
    }

    /// Judge a batch of sign-scan reports against the documented failures.
    fn from_reports(reports: &[(String, bool, String)]) -> Self {
        let known: BTreeSet<&str> = KNOWN_COUNTEREXAMPLES.iter().map(|(id, _)| *id).collect();
        let failed: Vec<&str> = reports
            .iter()
            .filter(|(_, ok, _)| !ok)
            .map(|(id, _, _)| id.as_str())
            .collect();
        let mut surprises = Vec::new();
        for (id, ok, summary) in reports {
            match (ok, known.contains(id.as_str())) {
                (false, false) => surprises.push(format!("unexpected failure: {summary}")),
                (true, true) => {
                    surprises.push(format!("documented counterexample now passes: {id}"))
                }
                _ => {}
            }
        }
        let detail = if failed.is_empty() {
            format!("{} scans pass", reports.len())
        } else {
            format!(
                "{}/{} scans fail, all documented: {}",
                failed.len(),
                reports.len(),
                failed.join(" ")
            )
        };
        Criterion {
            holds: failed.is_empty(),
            detail,
            surprises,
        }
    }
}

/// Plain scalar counterpart of a jet, for finite differences.
type Scalar = Box<dyn Fn(f64) -> f64>;

type Check = fn() -> Criterion;

fn row(report: &SignScanReport) -> (String, bool, String) {
    (
        report.target_id.clone(),
        report.passed(),
        report.summary_line(),
    )
}

fn scan_grid() -> ScanGrid {
    ScanGrid::new(logspace(0.05, 5.0, 40), 6, 1e-10).unwrap()
}

fn compare_points() -> Vec<EvalPoint> {
    compare_t_values()
        .iter()
        .flat_map(|&t| compare_u_values().into_iter().map(move |u| pt(u, t)))
        .collect()
}

fn max_deviation(formula: Formula) -> f64 {
    calibration::compare_grid(formula, Variant::Corrected, &compare_points(), tr())
        .unwrap()
        .iter()
        .map(|c| c.deviation)
        .fold(0.0, f64::max)
}

fn c1_cross_representation() -> Criterion {
    let mut worst: f64 = 0.0;
    for j in ThetaIndex::ALL {
        for p in compare_points() {
            let exact = theta(j, p, tr()).unwrap();
            let via = theta_via_expansion(j, p, tr()).unwrap();
            let dev = if exact == 0.0 {
                via.abs()
            } else {
                ((via - exact) / exact).abs()
            };
            worst = worst.max(dev);
        }
    }
    let complex = [Formula::Prop1, Formula::Prop2]
        .iter()
        .flat_map(|f| ThetaIndex::ALL.map(f))
        .map(max_deviation)
        .fold(0.0, f64::max);
    // every formula whose printed form misses must be listed with its deviation
    let ledger = calibration::calibration_ledger(tr()).unwrap();
    let corrected: Vec<String> = ledger
        .iter()
        .filter(|r| r.variant == Variant::Printed && !r.passes())
        .map(|r| format!("{}({:.1e})", r.formula, r.max_abs_deviation))
        .collect();
    let holds = worst <= 1e-9 && complex <= 1e-9;
    Criterion::measured(
        holds,
        format!(
            "product form {worst:.2e}, complex forms {complex:.2e} (tol 1e-9); corrected: {}",
            corrected.join(" ")
        ),
    )
}

fn c2_series_vs_q_series() -> Criterion {
    let worst = [Formula::Thm1, Formula::Thm2]
        .iter()
        .flat_map(|f| ThetaIndex::ALL.map(f))
        .map(max_deviation)
        .fold(0.0, f64::max);
    Criterion::measured(
        worst <= 1e-8,
        format!("max deviation {worst:.2e} (tol 1e-8)"),
    )
}

fn c3_identities() -> Criterion {
    let ts = logspace(0.05, 5.0, 20);
    let us = [0.0, 0.13, 0.37, 0.5, 0.81];
    let (mut period, mut shift, mut jacobi, mut heat): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let h = 1e-4;
    for &t in &ts {
        jacobi = jacobi.max(jacobi_identity_residual(t, tr()).unwrap().abs());
        for &u in &us {
            for j in ThetaIndex::ALL {
                let f = |du: f64| theta(j, pt(u + du, t), tr()).unwrap();
                let sign = if j.is_antiperiodic() { -1.0 } else { 1.0 };
                period = period.max((f(1.0) - sign * f(0.0)).abs());

                let d2 = (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h))
                    / (12.0 * h * h);
                let dt = theta_dt_jet(j, pt(u, t), 1, tr()).unwrap().coeff(1);
                heat = heat.max((d2 - 4.0 * dt).abs());
            }
            let th = |j, u| theta(j, pt(u, t), tr()).unwrap();
            shift = shift
                .max((th(ThetaIndex::Three, u + 0.5) - th(ThetaIndex::Four, u)).abs())
                .max((th(ThetaIndex::One, u + 0.5) - th(ThetaIndex::Two, u)).abs());
        }
    }
    let holds = period <= 1e-11 && shift <= 1e-11 && jacobi <= 1e-11 && heat <= 1e-6;
    Criterion::measured(
        holds,
        format!(
            "periodicity {period:.1e}, half-shift {shift:.1e}, Jacobi {jacobi:.1e}, heat {heat:.1e}"
        ),
    )
}

fn c4_lemma1() -> Criterion {
    let grid = scan_grid();
    let mut fns = vec![Lemma1Fn::Coth, Lemma1Fn::Csch];
    fns.extend(
        LEMMA1_CASES
            .iter()
            .map(|&(a, b)| Lemma1Fn::cosh_shift(a, b).unwrap()),
    );
    let rows: Vec<_> = fns
        .into_iter()
        .flat_map(|f| lemma1_scans(f, &grid))
        .map(|r| row(&r))
        .collect();
    Criterion::from_reports(&rows)
}

/// θ1 vanishes at integer u, θ2 at half-integer u.
fn is_zero_of(j: ThetaIndex, u: f64) -> bool {
    match j {
        ThetaIndex::One => u.fract() == 0.0,
        ThetaIndex::Two => (u - 0.5).fract() == 0.0,
        _ => false,
    }
}

fn c5_theorem3() -> Criterion {
    let grid = scan_grid();
    let mut rows = Vec::new();
    for j in ThetaIndex::ALL {
        for u in U_SET.into_iter().filter(|&u| !is_zero_of(j, u)) {
            rows.push(row(&theorem3_scan(j, u, &grid, tr()).unwrap()));
        }
    }
    Criterion::from_reports(&rows)
}

fn c6_theorem4() -> Criterion {
    let grid = scan_grid();
    let mut rows = Vec::new();
    for j in ThetaIndex::ALL {
        for u in U_SET.into_iter().filter(|&u| !is_zero_of(j, u)) {
            rows.push(row(&theorem4_scan(j, u, &grid, tr()).unwrap()));
        }
    }
    Criterion::from_reports(&rows)
}

fn c7_lemma2() -> Criterion {
    let points = [(0.1, 0.3), (0.2, 1.0), (0.3, 0.7), (0.6, 0.5), (0.85, 2.0)];
    let (mut worst, mut ratios, mut measured): (f64, Vec<f64>, usize) = (0.0, Vec::new(), 0);
    for j in ThetaIndex::ALL {
        for k in 0..=2 {
            for &(u, t) in &points {
                let p = pt(u, t);
                worst = worst.max(lemma2_residual(j, p, k, 1e-5, tr()).unwrap());
                let coarse = lemma2_residual(j, p, k, 1e-3, tr()).unwrap();
                let fine = lemma2_residual(j, p, k, 5e-4, tr()).unwrap();
                if fine > 1e-9 {
                    measured += 1;
                    ratios.push(coarse / fine);
                }
            }
        }
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
            (lo.min(r), hi.max(r))
        });
    let holds = worst <= 1e-5 && ratios.iter().all(|r| (3.5..=4.5).contains(r));
    Criterion::measured(
        holds,
        format!(
            "max residual {worst:.2e} at h=1e-5; refinement ratio in [{lo:.3}, {hi:.3}] over {measured} measurable cases"
        ),
    )
}

fn c8_theorem5() -> Criterion {
    let grid = scan_grid();
    let mut rows = Vec::new();
    for j in ThetaIndex::ALL {
        for (u, v) in PAIRS {
            rows.push(row(&theorem5_scan(
                &QuotientSpec::new(j, u, v).unwrap(),
                &grid,
                tr(),
            )));
        }
    }
    Criterion::from_reports(&rows)
}

fn c9_corollaries() -> Criterion {
    let grid = ScanGrid::default();
    let mut rows = Vec::new();
    for j in ThetaIndex::ALL {
        for (u, v) in PAIRS {
            let spec = QuotientSpec::new(j, u, v).unwrap();
            rows.extend(corollary_scans(&spec, &grid, tr()).iter().map(row));
        }
    }
    Criterion::from_reports(&rows)
}

/// Central difference for the m-th derivative with step h, Richardson
/// extrapolated twice to sixth order.
fn fd_derivative(f: &dyn Fn(f64) -> f64, x: f64, m: usize, h: f64) -> f64 {
    let raw = |h: f64| -> f64 {
        // Σ_i (-1)^i C(m,i) f(x + (m/2 − i)h) / h^m
        let mut total = 0.0;
        let mut binom = 1.0;
        for i in 0..=m {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * binom * f(x + (m as f64 / 2.0 - i as f64) * h);
            binom = binom * (m - i) as f64 / (i + 1) as f64;
        }
        total / h.powi(m as i32)
    };
    let (d1, d2, d3) = (raw(h), raw(h / 2.0), raw(h / 4.0));
    let (r1, r2) = ((4.0 * d2 - d1) / 3.0, (4.0 * d3 - d2) / 3.0);
    (16.0 * r2 - r1) / 15.0
}

fn c10_jets() -> Criterion {
    // per-order steps balancing truncation against cancellation, shrunk
    // near the pole of log, coth and 1/x at 0
    const STEPS: [f64; 5] = [0.0, 2e-3, 8e-3, 2e-2, 4e-2];
    let mut rng = StdRng::seed_from_u64(0x7e7a);
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for _ in 0..100 {
        let x: f64 = rng.random_range(0.3..3.0);
        let var = Jet::variable(x, 4);
        let mut cases: Vec<(Jet, Scalar)> = JetFn::ALL
            .iter()
            .map(|&f| -> (Jet, Scalar) { (jet_fn(&var, f).unwrap(), Box::new(move |y| f.eval(y))) })
            .collect();
        let other = var.cosh();
        for op in [JetOp::Add, JetOp::Sub, JetOp::Mul, JetOp::Div] {
            let scalar = move |y: f64| match op {
                JetOp::Add => y + y.cosh(),
                JetOp::Sub => y - y.cosh(),
                JetOp::Mul => y * y.cosh(),
                JetOp::Div => y / y.cosh(),
            };
            cases.push((jet_arith(&var, &other, op).unwrap(), Box::new(scalar)));
        }
        for (jet, f) in &cases {
            for (m, step) in STEPS.iter().enumerate().skip(1) {
                let exact = jet.derivative(m);
                let fd = fd_derivative(f.as_ref(), x, m, step * x.min(1.0).sqrt());
                worst = worst.max((exact - fd).abs() / exact.abs().max(1.0));
                checks += 1;
            }
        }
    }
    Criterion::measured(
        worst <= 1e-5,
        format!("{checks} derivative checks, worst relative deviation {worst:.2e}"),
    )
}

fn c11_zeta() -> Criterion {
    let mut worst: f64 = 0.0;
    for t in [0.3, 0.7, 1.5] {
        let big_k = elliptic_params(t, tr()).unwrap().k_complete;
        for i in 1..=9 {
            let z = i as f64 / 10.0 * 2.0 * big_k;
            let a = jacobi_zeta(z, t, tr()).unwrap();
            let b = jacobi_zeta_from_theta(z, t, tr()).unwrap();
            worst = worst.max((a - b).abs());
        }
    }
    let calibrated = calibration::calibrate(Formula::ZetaPrefactor, tr()).unwrap();
    let chosen = calibrated
        .iter()
        .filter(|r| r.passes())
        .map(|r| r.variant.label())
        .collect::<Vec<_>>();
    let holds = worst <= 1e-8 && chosen == ["corrected"];
    Criterion::measured(
        holds,
        format!("max |Fourier - log-derivative| {worst:.2e}; passing prefactor: {chosen:?}"),
    )
}

fn c12_cli() -> Criterion {
    let bin = env!("CARGO_BIN_EXE_theta-mono");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("THETA_MONO_OUT_DIR")
            .output()
            .unwrap()
    };
    let pass = run(&["compare", "--target", "prop1-theta4", "--tol", "1e-9"]);
    let fail = run(&["compare", "--target", "prop1-theta4", "--tol", "0"]);
    let usage = run(&[
        "scan", "--target", "theorem5", "--j", "4", "--u", "0.6", "--v", "0.2",
    ]);
    let codes = [pass.status.code(), fail.status.code(), usage.status.code()];

    let scan = [
        "scan", "--target", "theorem5", "--j", "4", "--u", "0.2", "--v", "0.6",
    ];
    let (first, second) = (run(&scan), run(&scan));
    let identical = first.stdout == second.stdout && !first.stdout.is_empty();

    Criterion::measured(
        codes == [Some(0), Some(1), Some(2)] && identical,
        format!(
            "exit codes pass/fail/usage = {:?}; repeated scan CSV byte-identical: {identical}",
            codes.map(|c| c.unwrap_or(-1))
        ),
    )
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("cross-representation agreement", c1_cross_representation),
        ("log-derivative series vs q-series", c2_series_vs_q_series),
        ("identity suite", c3_identities),
        ("CM and LCM of coth, csch, a/(cosh - b)", c4_lemma1),
        ("LCM of theta_j(u,t)/theta_j(0,t)", c5_theorem3),
        ("CM of signed d/du log theta_j", c6_theorem4),
        ("mixed partials of log-derivatives", c7_lemma2),
        ("strict sign patterns of d/dt log S_j", c8_theorem5),
        ("sign claims on S_j", c9_corollaries),
        ("jet engine vs finite differences", c10_jets),
        ("Jacobi Zeta bridge", c11_zeta),
        ("CLI exit codes and determinism", c12_cli),
    ];

    let mut surprises = Vec::new();
    for (n, (name, check)) in criteria.iter().enumerate() {
        let c = check();
        println!(
            "criterion {:>2} {} {name}: {}",
            n + 1,
            if c.holds { "PASS" } else { "FAIL" },
            c.detail
        );
        surprises.extend(
            c.surprises
                .into_iter()
                .map(|s| format!("criterion {}: {s}", n + 1)),
        );
    }

    println!();
    for (id, why) in KNOWN_COUNTEREXAMPLES {
        println!("documented counterexample {id}: {why}");
    }
    if !surprises.is_empty() {
        println!();
        for s in &surprises {
            println!("{s}");
        }
        std::process::exit(1);
    }
}
