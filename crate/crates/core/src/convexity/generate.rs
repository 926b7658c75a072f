//! Seeded random generators for test functions with known convexity
//! properties. All generators are deterministic in their seed and return
//! expressions whose printed form parses back to the same tree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Expr, FunctionSpec, Func};
use crate::numerics::Interval;

fn ln_x() -> Expr {
    Expr::call(Func::Ln, Expr::Var)
}

/// `ln(x) - centre`, the log coordinate measured from the geometric midpoint.
fn centred_log(centre: f64) -> Expr {
    Expr::sub(ln_x(), Expr::num(centre))
}

fn log_centre(interval: &Interval) -> f64 {
    0.5 * (interval.a().ln() + interval.b().ln())
}

/// Interval with `a` log-uniform in `a_range` and log-width uniform in
/// `width_range`.
pub fn random_interval(rng: &mut impl Rng, a_range: (f64, f64), width_range: (f64, f64)) -> Interval {
    let a = rng.gen_range(a_range.0.ln()..=a_range.1.ln()).exp();
    let w = rng.gen_range(width_range.0..=width_range.1);
    Interval::new(a, a * w.exp()).expect("random interval is valid")
}

/// `c0 + c1 ln x + Σ w_k exp(β_k (ln x - m))` with `w_k > 0` and all slopes
/// `c1, β_k` of one sign.
///
/// In the log coordinate `u = ln x` this is convex, so `f` is GA-convex. Its
/// derivative `f'(x) = φ'(u) e^(-u)` has constant sign and `ln|f'|` is convex
/// in `u`, so `|f'|^q` is GA-convex for every `q >= 1`.
///
/// `roughness` in `[0, 1]` controls the number and steepness of the
/// exponential terms; zero gives a GA-affine function.
pub fn random_ga_convex(seed: u64, interval: &Interval, roughness: f64) -> FunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FunctionSpec::new(ga_convex_expr(&mut rng, interval, roughness))
}

fn ga_convex_expr(rng: &mut ChaCha8Rng, interval: &Interval, roughness: f64) -> Expr {
    let r = if roughness.is_nan() { 0.0 } else { roughness.clamp(0.0, 1.0) };
    let sigma = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let width = interval.logwidth();
    let centre = log_centre(interval);
    let c0 = rng.gen_range(-2.0..=2.0);
    let c1 = sigma * rng.gen_range(0.0..=2.0);
    let terms = if r == 0.0 { 0 } else { 1 + (3.0 * r).floor() as usize };
    let mut e = Expr::add(Expr::num(c0), Expr::mul(Expr::num(c1), ln_x()));
    for _ in 0..terms {
        let w = rng.gen_range(0.1..=1.5);
        let beta = sigma * rng.gen_range(0.2..=0.2 + 2.8 * r) * 2.0 / width;
        let bump = Expr::call(Func::Exp, Expr::mul(Expr::num(beta), centred_log(centre)));
        e = Expr::add(e, Expr::mul(Expr::num(w), bump));
    }
    e
}

/// A GA-convex function from [`random_ga_convex`] shifted to be strictly
/// positive on the interval. Nonnegative GA-convex functions are also
/// s-GA-convex for every `s ∈ (0, 1]`.
pub fn random_ga_convex_nonnegative(seed: u64, interval: &Interval, roughness: f64) -> FunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = ga_convex_expr(&mut rng, interval, roughness);
    let at = |x: f64| e.eval(x).expect("generated function evaluates");
    // Monotone by construction, so the minimum is at an endpoint.
    let low = at(interval.a()).min(at(interval.b()));
    let shift = -low + rng.gen_range(0.05..=1.0);
    FunctionSpec::new(Expr::add(e, Expr::num(shift)))
}

/// `Σ_{k<=degree} c_k (ln x - m)^k` with `c_k ∈ [-1, 1]`.
pub fn random_log_polynomial(seed: u64, interval: &Interval, degree: usize) -> FunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centre = log_centre(interval);
    let mut e = Expr::num(rng.gen_range(-1.0..=1.0));
    for k in 1..=degree {
        let c = rng.gen_range(-1.0..=1.0);
        let power = Expr::pow(centred_log(centre), Expr::num(k as f64));
        e = Expr::add(e, Expr::mul(Expr::num(c), power));
    }
    FunctionSpec::new(e)
}

fn symmetric_bumps(rng: &mut ChaCha8Rng, interval: &Interval) -> Expr {
    let width = interval.logwidth();
    let centre = log_centre(interval);
    let mut e = Expr::num(rng.gen_range(0.2..=2.0));
    let bumps = rng.gen_range(0..=3);
    for _ in 0..bumps {
        let c = rng.gen_range(0.0..=1.5);
        let mu = rng.gen_range(0.0..=0.5 * width);
        let w = rng.gen_range(0.1 * width..=width);
        let gauss = |shift: f64| {
            let z = Expr::div(Expr::sub(centred_log(centre), Expr::num(shift)), Expr::num(w));
            Expr::call(Func::Exp, Expr::neg(Expr::pow(z, Expr::num(2.0))))
        };
        e = Expr::add(e, Expr::mul(Expr::num(c), Expr::add(gauss(mu), gauss(-mu))));
    }
    e
}

/// A positive weight with `g(ab/x) = g(x)`: a constant plus mirrored pairs of
/// Gaussian bumps in the centred log coordinate.
pub fn random_symmetric_weight(seed: u64, interval: &Interval) -> FunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FunctionSpec::new(symmetric_bumps(&mut rng, interval))
}

/// A positive weight that is far from geometrically symmetric: a symmetric
/// weight plus a linear term in the centred log coordinate.
pub fn random_asymmetric_weight(seed: u64, interval: &Interval) -> FunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = interval.logwidth();
    let sym = symmetric_bumps(&mut rng, interval);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let slope = sign * rng.gen_range(0.5..=2.0) / width;
    let lift = 0.5 * slope.abs() * width + rng.gen_range(0.1..=1.0);
    let tilt = Expr::add(Expr::num(lift), Expr::mul(Expr::num(slope), centred_log(log_centre(interval))));
    FunctionSpec::new(Expr::add(sym, tilt))
}

/// `f(x) = K x - c x (v^2 - 2v + 2)` with `v = ln x - m`, so that
/// `f'(x) = K - c v^2` is positive and strictly GA-concave. Used as a
/// negative control for bounds that require `|f'|` to be GA-convex.
pub fn ga_concave_derivative(seed: u64, interval: &Interval) -> FunctionSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = interval.logwidth();
    let c = rng.gen_range(0.2..=2.0);
    let k = c * (0.5 * width).powi(2) + rng.gen_range(0.1..=1.0);
    let v = || centred_log(log_centre(interval));
    let quad = Expr::add(
        Expr::sub(Expr::pow(v(), Expr::num(2.0)), Expr::mul(Expr::num(2.0), v())),
        Expr::num(2.0),
    );
    let e = Expr::sub(Expr::mul(Expr::num(k), Expr::Var), Expr::mul(Expr::mul(Expr::num(c), Expr::Var), quad));
    FunctionSpec::new(e)
}
