//! Bounds on the Hadamard fractional Hermite–Hadamard gap
//!
//! ```text
//! | (f(a)+f(b))/2 [J_{a+}^α g(b) + J_{b-}^α g(a)] - [J_{a+}^α (fg)(b) + J_{b-}^α (fg)(a)] |
//! ```
//!
//! for weights `g` that are symmetric about `√(ab)` in the geometric sense,
//! and their specialisations to `g ≡ 1`.

use std::fmt;
use std::str::FromStr;

use super::constants::{c_constants_alpha, c_constants_alpha_q, corollary2_defining_integrals, CVariant};
use super::identity::{dot, endpoint_slopes};
use super::{base_params, put_function, value_at, Estimate, InequalityReport, Param, Params};
use crate::convexity::{check_geo_symmetric, find_negative, SamplingPlan};
use crate::error::{Error, Result};
use crate::expr::{FunctionSpec, RealFn};
use crate::fractional::{hadamard_pair, FractionalOrder};
use crate::numerics::{gamma, try_integrate, Interval, QuadratureConfig, GAMMA_REL_ACCURACY};

/// Log-uniform samples used for the supremum norm.
const SUP_SAMPLES: usize = 4096;
/// Number of best samples refined by golden-section search.
const SUP_REFINED: usize = 3;
const GOLDEN_ITERS: usize = 80;

/// `sup |g|` on the interval: a dense log-uniform scan followed by
/// golden-section refinement in the log coordinate around the largest
/// samples.
pub fn sup_norm<F: RealFn + ?Sized>(g: &F, interval: &Interval) -> Result<f64> {
    let xs = interval.log_mesh(SUP_SAMPLES);
    let vals: Vec<f64> = xs.iter().map(|&x| g.eval(x).map(f64::abs)).collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
    let mut best = vals[order[0]];
    let absg = |u: f64| -> Result<f64> { Ok(g.eval(u.exp().clamp(interval.a(), interval.b()))?.abs()) };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for &i in order.iter().take(SUP_REFINED) {
        let mut lo = xs[i.saturating_sub(1)].ln();
        let mut hi = xs[(i + 1).min(xs.len() - 1)].ln();
        let mut c = hi - inv_phi * (hi - lo);
        let mut d = lo + inv_phi * (hi - lo);
        let (mut fc, mut fd) = (absg(c)?, absg(d)?);
        for _ in 0..GOLDEN_ITERS {
            if fc > fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = absg(c)?;
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = absg(d)?;
            }
        }
        best = best.max(fc).max(fd);
    }
    Ok(best)
}

fn gamma_est(x: f64) -> Result<Estimate> {
    let v = gamma(x)?;
    Ok(Estimate::new(v, GAMMA_REL_ACCURACY * v))
}

/// Rejects weights that are negative somewhere or not geometrically
/// symmetric, naming the witness.
fn require_symmetric_weight(g: &FunctionSpec, interval: &Interval) -> Result<()> {
    let plan = SamplingPlan::default();
    if let Some(x) = find_negative(g, interval, &plan)? {
        return Err(Error::Precondition(format!(
            "weight g must be nonnegative: g({x}) = {} < 0",
            g.value(x)?
        )));
    }
    let cert = check_geo_symmetric(g, interval, &plan)?;
    if let Some(w) = cert.witness() {
        return Err(Error::Precondition(format!(
            "weight g is not geometrically symmetric about √(ab): g({}) = {} but g(ab/x) = g({}) = {} (difference {:e})",
            w.x,
            g.value(w.x)?,
            w.y,
            g.value(w.y)?,
            w.defect
        )));
    }
    Ok(())
}

/// The left side shared by the weighted fractional bounds.
fn weighted_gap(
    f: &FunctionSpec,
    g: &FunctionSpec,
    interval: &Interval,
    alpha: FractionalOrder,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let pg: Estimate = hadamard_pair(g, interval, alpha, cfg)?.into();
    let pfg: Estimate = hadamard_pair(&f.product(g), interval, alpha, cfg)?.into();
    let mid = (value_at(f, interval.a())? + value_at(f, interval.b())?).scale(0.5);
    Ok((mid * pg - pfg).abs())
}

fn weighted_params(
    f: &FunctionSpec,
    g: &FunctionSpec,
    interval: &Interval,
    alpha: FractionalOrder,
    cfg: &QuadratureConfig,
) -> Params {
    let mut p = base_params(interval, cfg);
    put_function(&mut p, "f", f);
    put_function(&mut p, "g", g);
    p.insert("alpha".into(), Param::Num(alpha.alpha()));
    p
}

/// Weighted fractional bound with the exact or relaxed constants:
///
/// ```text
/// exact:   ℓ^(α+1) / (2^(α+1) Γ(α+1)) ‖g‖∞ [C₁|f'(a)| + C₂|f'(G)| + C₃|f'(b)|]
/// relaxed: ℓ^(α+1) / (2 Γ(α+1))       ‖g‖∞ [same with relaxed C's]
/// ```
///
/// `g` must be nonnegative and geometrically symmetric; violations are a
/// precondition error.
pub fn corollary1_verify(
    f: &FunctionSpec,
    g: &FunctionSpec,
    interval: &Interval,
    alpha: FractionalOrder,
    variant: CVariant,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    require_symmetric_weight(g, interval)?;
    let al = alpha.alpha();
    let c = c_constants_alpha(interval, alpha, variant, cfg)?;
    let lhs = weighted_gap(f, g, interval, alpha, cfg)?;
    let norm = sup_norm(g, interval)?;
    let denom = match variant {
        CVariant::Exact => 2f64.powf(al + 1.0),
        CVariant::Relaxed => 2.0,
    };
    let pref = interval.logwidth().powf(al + 1.0) * norm / denom;
    let rhs = dot(&c, &endpoint_slopes(f, interval)?).scale(pref) * reciprocal(gamma_est(al + 1.0)?);
    let mut p = weighted_params(f, g, interval, alpha, cfg);
    p.insert("variant".into(), Param::Text(variant.name().into()));
    Ok(InequalityReport::bound("cor1", p, lhs, rhs))
}

fn reciprocal(e: Estimate) -> Estimate {
    Estimate::new(1.0 / e.value, e.error / (e.value * e.value))
}

/// The two unweighted specialisations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cor2Form {
    /// General order with the exact constants and prefactor `ℓ/2^(α+2)`.
    Eq217,
    /// Order one with the unit constants and prefactor `ℓ/4`.
    Eq218,
}

impl Cor2Form {
    pub fn name(self) -> &'static str {
        match self {
            Cor2Form::Eq217 => "eq217",
            Cor2Form::Eq218 => "eq218",
        }
    }
}

impl fmt::Display for Cor2Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Cor2Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq217" => Ok(Cor2Form::Eq217),
            "eq218" => Ok(Cor2Form::Eq218),
            other => Err(Error::domain(format!("unknown form `{other}` (expected eq217 or eq218)"))),
        }
    }
}

/// `|(f(a)+f(b))/2 - Γ(α+1)/(2ℓ^α) [J_{a+}^α f(b) + J_{b-}^α f(a)]|` against
/// `ℓ/2^(α+2) Σ C_i(α)|f'(·)|` (`Eq217`) or, at `α = 1`,
/// `ℓ/4 Σ C_i(1)|f'(·)|` (`Eq218`, which ignores `alpha`).
pub fn corollary2_variants(
    f: &FunctionSpec,
    interval: &Interval,
    alpha: FractionalOrder,
    which: Cor2Form,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let alpha = match which {
        Cor2Form::Eq217 => alpha,
        Cor2Form::Eq218 => FractionalOrder::new(1.0)?,
    };
    let al = alpha.alpha();
    let l = interval.logwidth();
    let pf: Estimate = hadamard_pair(f, interval, alpha, cfg)?.into();
    let mid = (value_at(f, interval.a())? + value_at(f, interval.b())?).scale(0.5);
    let mean = pf * gamma_est(al + 1.0)?.scale(0.5 / l.powf(al));
    let lhs = (mid - mean).abs();
    let slopes = endpoint_slopes(f, interval)?;
    let rhs = match which {
        Cor2Form::Eq217 => {
            let c = c_constants_alpha(interval, alpha, CVariant::Exact, cfg)?;
            dot(&c, &slopes).scale(l / 2f64.powf(al + 2.0))
        }
        Cor2Form::Eq218 => dot(&corollary2_defining_integrals(interval, cfg)?, &slopes).scale(l / 4.0),
    };
    let mut p = base_params(interval, cfg);
    put_function(&mut p, "f", f);
    p.insert("alpha".into(), Param::Num(al));
    p.insert("variant".into(), Param::Text(which.name().into()));
    Ok(InequalityReport::bound("cor2", p, lhs, rhs))
}

/// `|f'|^q` at `a`, `G`, `b`.
fn slope_powers(f: &FunctionSpec, interval: &Interval, q: f64) -> Result<[Estimate; 3]> {
    let [a, g, b] = endpoint_slopes(f, interval)?;
    Ok([a.powf(q), g.powf(q), b.powf(q)])
}

fn check_q(q: f64) -> Result<()> {
    if q > 1.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("this bound needs q > 1, got q = {q}")))
    }
}

/// Power-mean form of the weighted bound, valid when `|f'|^q` is GA-convex:
///
/// ```text
/// ℓ^(α+1) ‖g‖∞ / (2^(α+1) Γ(α+1)) ((2^(α+2) - 4)/(α+1))^(1-1/q)
///     [C₁(α,q)|f'(a)|^q + C₂(α,q)|f'(G)|^q + C₃(α,q)|f'(b)|^q]^(1/q)
/// ```
pub fn corollary3_verify(
    f: &FunctionSpec,
    g: &FunctionSpec,
    interval: &Interval,
    alpha: FractionalOrder,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    check_q(q)?;
    require_symmetric_weight(g, interval)?;
    let al = alpha.alpha();
    let c = c_constants_alpha_q(interval, alpha, q, cfg)?;
    let lhs = weighted_gap(f, g, interval, alpha, cfg)?;
    let norm = sup_norm(g, interval)?;
    let mass = ((2f64.powf(al + 2.0) - 4.0) / (al + 1.0)).powf(1.0 - 1.0 / q);
    let pref = interval.logwidth().powf(al + 1.0) * norm / 2f64.powf(al + 1.0) * mass;
    let rhs = dot(&c, &slope_powers(f, interval, q)?).powf(1.0 / q).scale(pref) * reciprocal(gamma_est(al + 1.0)?);
    let mut p = weighted_params(f, g, interval, alpha, cfg);
    p.insert("q".into(), Param::Num(q));
    Ok(InequalityReport::bound("cor3", p, lhs, rhs))
}

/// `|(f(a)+f(b))/2 - (1/ℓ)∫ f(x)/x dx| <= ℓ/2^(1+1/q) [Σ C_i(1,q)|f'(·)|^q]^(1/q)`.
///
/// As `q → 1` this prefactor tends to `ℓ/4` times twice the unit constants,
/// i.e. twice the `Eq218` bound; the report carries that ratio as `eq218_ratio`.
pub fn corollary4_verify(
    f: &FunctionSpec,
    interval: &Interval,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    check_q(q)?;
    let l = interval.logwidth();
    let c = c_constants_alpha_q(interval, FractionalOrder::new(1.0)?, q, cfg)?;
    let lhs = log_mean_gap(f, interval, cfg)?;
    let rhs = dot(&c, &slope_powers(f, interval, q)?).powf(1.0 / q).scale(l / 2f64.powf(1.0 + 1.0 / q));
    let mut p = base_params(interval, cfg);
    put_function(&mut p, "f", f);
    p.insert("q".into(), Param::Num(q));
    p.insert("eq218_ratio".into(), Param::Num(2.0 * 4.0 / 2f64.powf(1.0 + 1.0 / q)));
    Ok(InequalityReport::bound("cor4", p, lhs, rhs))
}

/// `(1/ℓ) ∫_a^b f(x)/x dx`, evaluated as the mean of `f(e^u)` over
/// `[ln a, ln b]`.
pub(crate) fn log_average(f: &FunctionSpec, interval: &Interval, cfg: &QuadratureConfig) -> Result<Estimate> {
    let (lo, hi) = (interval.a().ln(), interval.b().ln());
    let r = try_integrate::<_, Error>(
        |u: f64| Ok(f.value(u.exp().clamp(interval.a(), interval.b()))?),
        lo,
        hi,
        cfg,
    )?;
    Ok(Estimate::from(r).scale(1.0 / interval.logwidth()))
}

fn log_mean_gap(f: &FunctionSpec, interval: &Interval, cfg: &QuadratureConfig) -> Result<Estimate> {
    let mid = (value_at(f, interval.a())? + value_at(f, interval.b())?).scale(0.5);
    Ok((mid - log_average(f, interval, cfg)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn f(text: &str) -> FunctionSpec {
        FunctionSpec::parse(text).unwrap()
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn sup_norm_refines_interior_peak() {
        let i = iv(1.0, 4.0);
        // Peak of 3 - (ln x - 0.5)^2 at x = e^0.5, not on the mesh.
        let s = sup_norm(&f("3 - (ln(x) - 0.5)^2"), &i).unwrap();
        assert!((s - 3.0).abs() < 1e-14);
        assert_eq!(sup_norm(&f("x"), &i).unwrap(), 4.0);
        assert_eq!(sup_norm(&f("-2"), &i).unwrap(), 2.0);
    }

    #[test]
    fn corollary1_examples() {
        let r = corollary1_verify(&f("5"), &f("1"), &iv(1.0, 4.0), order(0.5), CVariant::Exact, &cfg()).unwrap();
        assert!(r.pass && r.rhs == 0.0);
        let i = iv(1.0, E * E);
        for v in [CVariant::Exact, CVariant::Relaxed] {
            let r = corollary1_verify(&f("ln(x)"), &f("1"), &i, order(1.0), v, &cfg()).unwrap();
            assert!(r.pass && r.lhs < 1e-12 && r.rhs > 0.0);
        }
        let g = f("2 + abs(ln(x) - ln(2))");
        for v in [CVariant::Exact, CVariant::Relaxed] {
            let r = corollary1_verify(&f("x"), &g, &iv(1.0, 4.0), order(0.5), v, &cfg()).unwrap();
            assert!(r.pass && r.slack > 0.0, "{v}");
        }
    }

    #[test]
    fn corollary1_rejects_asymmetric_weight() {
        let e = corollary1_verify(&f("x"), &f("x"), &iv(1.0, 4.0), order(1.0), CVariant::Exact, &cfg()).unwrap_err();
        match e {
            Error::Precondition(msg) => assert!(msg.contains("g(1)") && msg.contains("g(4)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let e = corollary1_verify(&f("x"), &f("-1"), &iv(1.0, 4.0), order(1.0), CVariant::Exact, &cfg()).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
    }

    #[test]
    fn relaxed_rhs_dominates_exact() {
        let i = iv(0.9, 7.0);
        let (fx, g) = (f("x^2"), f("1 + exp(-(ln(x) - 0.5*ln(6.3))^2)"));
        for al in [0.1, 0.5, 0.9, 1.0] {
            let e = corollary1_verify(&fx, &g, &i, order(al), CVariant::Exact, &cfg()).unwrap();
            let r = corollary1_verify(&fx, &g, &i, order(al), CVariant::Relaxed, &cfg()).unwrap();
            assert!(e.rhs <= r.rhs + e.error_budget + r.error_budget, "α = {al}");
            assert_eq!(e.lhs, r.lhs);
        }
    }

    #[test]
    fn corollary2_examples() {
        let i = iv(1.0, E * E);
        let r = corollary2_variants(&f("3"), &i, order(0.7), Cor2Form::Eq217, &cfg()).unwrap();
        assert!(r.pass);
        let r = corollary2_variants(&f("ln(x)"), &i, order(1.0), Cor2Form::Eq217, &cfg()).unwrap();
        assert!(r.pass && r.lhs < 1e-12);
        let r = corollary2_variants(&f("x"), &iv(1.0, 4.0), order(0.5), Cor2Form::Eq217, &cfg()).unwrap();
        assert!(r.pass && r.slack > 0.0);
    }

    #[test]
    fn eq217_at_one_equals_eq218() {
        let i = iv(0.6, 8.0);
        let fx = f("x^3 - 2*x");
        let a = corollary2_variants(&fx, &i, order(1.0), Cor2Form::Eq217, &cfg()).unwrap();
        let b = corollary2_variants(&fx, &i, order(0.3), Cor2Form::Eq218, &cfg()).unwrap();
        assert_eq!(a.lhs, b.lhs);
        assert!((a.rhs - b.rhs).abs() <= 1e-9 * b.rhs);
    }

    #[test]
    fn corollary3_examples() {
        let r = corollary3_verify(&f("1.5"), &f("1"), &iv(1.0, 4.0), order(0.5), 2.0, &cfg()).unwrap();
        assert!(r.pass);
        let r = corollary3_verify(&f("x"), &f("1"), &iv(1.0, 4.0), order(0.5), 2.0, &cfg()).unwrap();
        assert!(r.pass && r.slack > 0.0);
        assert!(corollary3_verify(&f("x"), &f("1"), &iv(1.0, 4.0), order(0.5), 1.0, &cfg()).is_err());
    }

    #[test]
    fn corollary4_examples() {
        for (a, b) in [(1.0, 4.0), (0.3, 9.0)] {
            let r = corollary4_verify(&f("ln(x)"), &iv(a, b), 2.0, &cfg()).unwrap();
            assert!(r.pass && r.lhs < 1e-12);
        }
        let r = corollary4_verify(&f("4"), &iv(1.0, 4.0), 2.0, &cfg()).unwrap();
        assert!(r.pass);
        let r = corollary4_verify(&f("x"), &iv(1.0, 4.0), 2.0, &cfg()).unwrap();
        assert!(r.pass && r.slack > 0.0);
        // (1/ln 4) ∫_1^4 dx = 3/ln 4.
        assert!((r.lhs - (2.5 - 3.0 / 4f64.ln())).abs() < 1e-12);
    }
}
