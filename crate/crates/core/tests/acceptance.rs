//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary so the lines are always shown by `cargo test`.
//! Exits non-zero if any criterion fails.

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hhf_core::convexity::{
    check_ga_convex, ga_concave_derivative, random_asymmetric_weight, random_ga_convex, random_interval,
    random_symmetric_weight, SamplingPlan,
};
use hhf_core::expr::FnWrap;
use hhf_core::fractional::{hadamard_left, hadamard_right, FractionalOrder};
use hhf_core::inequalities::{corollary1_verify, corollary2_closed_forms, CVariant};
use hhf_core::numerics::{power_difference, Interval, QuadratureConfig};
use hhf_core::suite::{run_suite, write_jsonl, SuiteConfig, SuiteKind, SuiteRecord};
use hhf_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn suite(kind: SuiteKind, trials: usize, seed: u64) -> Vec<SuiteRecord> {
    run_suite(&SuiteConfig { suite: kind, trials, seed, ..SuiteConfig::default() }).expect("valid suite config")
}

/// Γ at the orders used below, from an arbitrary-precision reference.
fn gamma_reference(x: f64) -> f64 {
    match x {
        v if v == 1.3 => 0.897_470_696_306_277_2,
        v if v == 1.5 => 0.886_226_925_452_758,
        v if v == 2.0 => 1.0,
        v if v == 2.7 => 1.544_685_845_850_594_5,
        v if v == 3.0 => 2.0,
        _ => panic!("no reference value for Γ({x})"),
    }
}

/// Composite Simpson rule, independent of the library quadrature.
fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        s += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let recs = suite(SuiteKind::Identity, 100, 42);
    let elapsed = start.elapsed();
    let worst = recs.iter().map(|r| r.report.lhs).fold(0f64, |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v) });
    let ok = recs.len() == 100 && worst <= 1e-7 && elapsed < Duration::from_secs(60);
    outcome(ok, format!("100 cases, max residual {worst:.3e} (<= 1e-7), {:.1?} (< 60 s)", elapsed))
}

fn operator_sanity() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_const = 0f64;
    for _ in 0..20 {
        let iv = random_interval(&mut rng, (0.5, 5.0), (0.1, 3.0));
        for al in [0.3, 0.5, 1.0, 1.7, 2.0] {
            let one = FnWrap(|_: f64| Ok(1.0));
            let j = hadamard_left(&one, &iv, FractionalOrder::new(al).unwrap(), iv.b(), &cfg).unwrap().value;
            let exact = (iv.b() / iv.a()).ln().powf(al) / gamma_reference(al + 1.0);
            worst_const = worst_const.max((j - exact).abs());
        }
    }
    let mut worst_transport = 0f64;
    for k in 0..20 {
        let iv = random_interval(&mut rng, (0.5, 5.0), (0.1, 3.0));
        let g = random_symmetric_weight(100 + k, &iv);
        let al = FractionalOrder::new(rng.gen_range(0.2..2.0)).unwrap();
        let l = hadamard_left(&g, &iv, al, iv.b(), &cfg).unwrap().value;
        let r = hadamard_right(&g, &iv, al, iv.a(), &cfg).unwrap().value;
        worst_transport = worst_transport.max((l - r).abs());
    }
    outcome(
        worst_const <= 1e-10 && worst_transport <= 1e-9,
        format!(
            "J 1 vs closed form max error {worst_const:.3e} (<= 1e-10); symmetric transport max gap {worst_transport:.3e} (<= 1e-9)"
        ),
    )
}

fn closed_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0f64;
    for _ in 0..50 {
        let iv = random_interval(&mut rng, (0.5, 5.0), (0.1, 5.0));
        let c = corollary2_closed_forms(&iv).unwrap();
        let l = |t: f64| iv.lower_point(t);
        let u = |t: f64| iv.upper_point(t);
        let oracle = [
            simpson(|t| t * t * l(t), 0.0, 1.0, 4000),
            simpson(|t| t * (1.0 - t) * (l(t) + u(t)), 0.0, 1.0, 4000),
            simpson(|t| t * t * u(t), 0.0, 1.0, 4000),
        ];
        for k in 0..3 {
            worst = worst.max((c[k] - oracle[k]).abs() / oracle[k]);
        }
    }
    let quad = suite(SuiteKind::Constants, 50, 3);
    let worst_quad = quad.iter().map(|r| r.report.lhs).fold(0f64, f64::max);
    let all_quad = quad.iter().all(|r| r.report.pass);
    let c2 = corollary2_closed_forms(&Interval::new(1.0, E * E).unwrap()).unwrap()[1];
    let c2_oracle = 2.0 * E * (1.0 + 1f64.cosh() - 2.0 * 1f64.sinh());
    let c2_err = (c2 - c2_oracle).abs();
    outcome(
        worst <= 1e-9 && all_quad && worst_quad <= 1e-9 && c2_err <= 1e-9,
        format!(
            "50 intervals: vs Simpson {worst:.3e}, vs library quadrature {worst_quad:.3e} (<= 1e-9 rel); C2(1) on [1, e^2] = {c2:.12} (error {c2_err:.1e})"
        ),
    )
}

fn power_subadditivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = 0;
    for _ in 0..100_000 {
        let b = 100.0 * (1.0 - rng.gen::<f64>());
        let a = b * (1.0 - rng.gen::<f64>());
        let theta = 1.0 - rng.gen::<f64>();
        let (lhs, rhs) = power_difference(a, b, theta).unwrap();
        // One rounding of each power and of the difference.
        if lhs > rhs + 4.0 * f64::EPSILON * b.powf(theta) {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("100000 samples, {violations} violations"))
}

fn bound_suites() -> Outcome {
    let start = Instant::now();
    let plan = [
        (SuiteKind::Theorem5, 500),
        (SuiteKind::Corollary1, 1000),
        (SuiteKind::Corollary2, 500),
        (SuiteKind::Corollary3, 500),
        (SuiteKind::Corollary4, 500),
        (SuiteKind::Theorem6, 500),
        (SuiteKind::HhGa, 500),
        (SuiteKind::Zhang, 500),
    ];
    let mut parts = Vec::new();
    let mut failures = 0;
    for (kind, n) in plan {
        let recs = suite(kind, n, 5);
        let failed: Vec<&SuiteRecord> = recs.iter().filter(|r| !r.report.pass).collect();
        for r in failed.iter().take(3) {
            eprintln!("  {} case {} failed: {:?}", kind, r.case_index, r.report);
        }
        failures += failed.len();
        parts.push(format!("{kind} {}/{}", recs.len() - failed.len(), recs.len()));
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && elapsed < Duration::from_secs(300),
        format!("{}; {:.1?} (< 300 s)", parts.join(", "), elapsed),
    )
}

fn relaxation_ordering() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    for k in 0..200 {
        let iv = random_interval(&mut rng, (0.5, 5.0), (0.1, 3.0));
        let f = random_ga_convex(rng.gen(), &iv, rng.gen());
        let g = random_symmetric_weight(1000 + k, &iv);
        let al = FractionalOrder::new(1.0 - rng.gen::<f64>()).unwrap();
        let exact = corollary1_verify(&f, &g, &iv, al, CVariant::Exact, &cfg).unwrap();
        let relaxed = corollary1_verify(&f, &g, &iv, al, CVariant::Relaxed, &cfg).unwrap();
        if exact.rhs > relaxed.rhs + exact.error_budget + relaxed.error_budget {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("200 trials, {violations} cases with exact RHS above relaxed RHS"))
}

fn negative_controls() -> Outcome {
    let cfg = QuadratureConfig::default();
    let plan = SamplingPlan::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut concave_found, mut asym_found) = (0, 0);
    for k in 0..50 {
        let iv = random_interval(&mut rng, (0.5, 5.0), (0.5, 3.0));
        let f = ga_concave_derivative(k, &iv);
        let d = FnWrap(|x: f64| Ok(f.derivative(x)?.abs()));
        if check_ga_convex(&d, &iv, &plan).unwrap().witness().is_some() {
            concave_found += 1;
        }
        let g = random_asymmetric_weight(k, &iv);
        let h = random_ga_convex(k, &iv, 0.5);
        let al = FractionalOrder::new(rng.gen_range(0.1..2.0)).unwrap();
        if let Err(Error::Precondition(_)) = corollary1_verify(&h, &g, &iv, al, CVariant::Exact, &cfg) {
            asym_found += 1;
        }
    }
    outcome(
        concave_found == 50 && asym_found == 50,
        format!("GA-concave |f'| witnessed {concave_found}/50; asymmetric g rejected {asym_found}/50"),
    )
}

fn determinism() -> Outcome {
    let bytes = |execution| {
        let cfg = SuiteConfig { suite: SuiteKind::All, trials: 6, seed: 8, execution, ..SuiteConfig::default() };
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &run_suite(&cfg).unwrap()).unwrap();
        buf
    };
    let first = bytes(Default::default());
    let second = bytes(Default::default());
    let sequential = bytes(hhf_core::par::Execution::Sequential);
    outcome(
        first == second && first == sequential,
        format!("suite all x6 twice and sequentially: {} bytes, identical = {}", first.len(), first == second && first == sequential),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 identity suite", identity_suite),
        ("2 operator sanity", operator_sanity),
        ("3 closed-form constants", closed_forms),
        ("4 power subadditivity", power_subadditivity),
        ("5 bound suites", bound_suites),
        ("6 relaxation ordering", relaxation_ordering),
        ("7 negative controls", negative_controls),
        ("8 determinism", determinism),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let o = run();
        all &= o.pass;
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
