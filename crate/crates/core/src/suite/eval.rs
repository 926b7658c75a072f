//! Single evaluations addressed by inequality name and a parameter map.
//!
//! The parameter map stored in every report is exactly what [`run_eval`]
//! consumes, so any report can be re-evaluated from its own record.

use crate::convexity::{check_ga_convex, check_s_ga_convex, ConvexityCertificate, SamplingPlan};
use crate::error::{Error, Result};
use crate::expr::{parse, FnWrap, FunctionSpec};
use crate::fractional::FractionalOrder;
use crate::inequalities::{
    corollary1_verify, corollary2_closed_forms, corollary2_defining_integrals, corollary2_variants,
    corollary3_verify, corollary4_verify, hh_ga_verify, lemma1_report, theorem5_verify, theorem6_verify,
    zhang_bounds, CVariant, Cor2Form, HolderExponents, InequalityReport, Param, Params, ZhangTheorem,
    FINITE_DIFFERENCE_MARKER,
};
use crate::numerics::{Interval, QuadratureConfig};

/// Names accepted by [`run_eval`].
pub const INEQUALITIES: [&str; 12] = [
    "lemma1", "thm5", "cor1", "cor2", "thm6", "cor3", "cor4", "hh_ga", "zhang1", "zhang2", "zhang3", "constants",
];

/// Maximum relative closed-form/quadrature disagreement accepted by the
/// `constants` check.
pub const CONSTANTS_REL_TOL: f64 = 1e-9;

fn num(p: &Params, key: &str) -> Result<Option<f64>> {
    match p.get(key) {
        None => Ok(None),
        Some(Param::Num(v)) => Ok(Some(*v)),
        Some(Param::Text(t)) => t
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| Error::domain(format!("parameter `{key}` must be a number, got `{t}`"))),
    }
}

fn req_num(p: &Params, key: &str, ineq: &str) -> Result<f64> {
    num(p, key)?.ok_or_else(|| Error::domain(format!("{ineq} needs parameter `{key}`")))
}

fn text<'a>(p: &'a Params, key: &str) -> Option<&'a str> {
    match p.get(key) {
        Some(Param::Text(t)) => Some(t.as_str()),
        _ => None,
    }
}

/// Builds the function stored under `key`, honouring an explicit derivative
/// under `{key}prime`.
pub fn function_param(p: &Params, key: &str, ineq: &str) -> Result<FunctionSpec> {
    let src = text(p, key).ok_or_else(|| Error::domain(format!("{ineq} needs function `{key}`")))?;
    let value = parse(src)?;
    match text(p, &format!("{key}prime")) {
        None => Ok(FunctionSpec::new(value)),
        Some(m) if m == FINITE_DIFFERENCE_MARKER => Ok(FunctionSpec::finite_difference(value)),
        Some(d) => Ok(FunctionSpec::with_derivative(value, parse(d)?)),
    }
}

/// Interval and quadrature settings common to every evaluation.
pub fn interval_and_cfg(p: &Params, ineq: &str) -> Result<(Interval, QuadratureConfig)> {
    let interval = Interval::new(req_num(p, "a", ineq)?, req_num(p, "b", ineq)?)?;
    let cfg = match num(p, "tol")? {
        Some(t) => QuadratureConfig::with_tol(t)?,
        None => QuadratureConfig::default(),
    };
    Ok((interval, cfg))
}

fn alpha(p: &Params, ineq: &str) -> Result<FractionalOrder> {
    FractionalOrder::new(req_num(p, "alpha", ineq)?)
}

/// Evaluates the named inequality on the given parameters.
pub fn run_eval(inequality: &str, p: &Params) -> Result<InequalityReport> {
    let ineq = inequality;
    let (interval, cfg) = interval_and_cfg(p, ineq)?;
    let f = || function_param(p, "f", ineq);
    match ineq {
        "lemma1" => lemma1_report(&f()?, &function_param(p, "h", ineq)?, &interval, &cfg),
        "thm5" => theorem5_verify(&f()?, &function_param(p, "h", ineq)?, &interval, &cfg),
        "thm6" => {
            let exps = HolderExponents::from_q(req_num(p, "q", ineq)?)?;
            theorem6_verify(&f()?, &function_param(p, "h", ineq)?, &interval, exps, &cfg)
        }
        "cor1" => {
            let variant = text(p, "variant").unwrap_or("exact").parse::<CVariant>()?;
            corollary1_verify(&f()?, &function_param(p, "g", ineq)?, &interval, alpha(p, ineq)?, variant, &cfg)
        }
        "cor2" => {
            let form = text(p, "variant").unwrap_or("eq217").parse::<Cor2Form>()?;
            let al = match form {
                Cor2Form::Eq217 => alpha(p, ineq)?,
                Cor2Form::Eq218 => FractionalOrder::new(1.0)?,
            };
            corollary2_variants(&f()?, &interval, al, form, &cfg)
        }
        "cor3" => corollary3_verify(
            &f()?,
            &function_param(p, "g", ineq)?,
            &interval,
            alpha(p, ineq)?,
            req_num(p, "q", ineq)?,
            &cfg,
        ),
        "cor4" => corollary4_verify(&f()?, &interval, req_num(p, "q", ineq)?, &cfg),
        "hh_ga" => hh_ga_verify(&f()?, &interval, num(p, "s")?, &cfg),
        "zhang1" => zhang_bounds(&f()?, &interval, ZhangTheorem::Thm1 { q: num(p, "q")?.unwrap_or(1.0) }, &cfg),
        "zhang2" => zhang_bounds(&f()?, &interval, ZhangTheorem::Thm2 { q: req_num(p, "q", ineq)? }, &cfg),
        "zhang3" => {
            let which = ZhangTheorem::Thm3 { p: req_num(p, "p", ineq)?, q: req_num(p, "q", ineq)? };
            zhang_bounds(&f()?, &interval, which, &cfg)
        }
        "constants" => constants_report(&interval, &cfg),
        other => Err(Error::domain(format!(
            "unknown inequality `{other}` (expected one of {})",
            INEQUALITIES.join(", ")
        ))),
    }
}

/// Closed forms of the unit constants against their defining integrals:
/// `lhs` is the largest relative disagreement and `rhs` the threshold.
pub fn constants_report(interval: &Interval, cfg: &QuadratureConfig) -> Result<InequalityReport> {
    let closed = corollary2_closed_forms(interval)?;
    let quad = corollary2_defining_integrals(interval, cfg)?;
    let mut p = Params::new();
    p.insert("a".into(), Param::Num(interval.a()));
    p.insert("b".into(), Param::Num(interval.b()));
    p.insert("tol".into(), Param::Num(cfg.abs_tol));
    let mut worst = 0f64;
    for (k, (c, q)) in closed.iter().zip(&quad).enumerate() {
        p.insert(format!("c{}_closed", k + 1), Param::Num(*c));
        p.insert(format!("c{}_quadrature", k + 1), Param::Num(q.value));
        worst = worst.max((c - q.value).abs() / q.value.abs());
    }
    Ok(InequalityReport::with_budget("constants", p, worst, CONSTANTS_REL_TOL, 0.0))
}

/// The GA-type hypothesis of the named inequality, checked by sampling.
/// Returns a precondition error naming the witness when it fails, and does
/// nothing for inequalities without such a hypothesis.
pub fn precheck(inequality: &str, p: &Params) -> Result<()> {
    let (interval, _) = interval_and_cfg(p, inequality)?;
    let plan = SamplingPlan::default();
    let q = match inequality {
        "thm5" | "cor1" | "cor2" => 1.0,
        "thm6" | "cor3" | "cor4" | "zhang1" | "zhang2" | "zhang3" => num(p, "q")?.unwrap_or(1.0),
        "hh_ga" => {
            let f = function_param(p, "f", inequality)?;
            let cert = match num(p, "s")? {
                Some(s) => check_s_ga_convex(&f, s, &interval, &plan)?,
                None => check_ga_convex(&f, &interval, &plan)?,
            };
            return witness_error(&cert, "f is not (s-)GA-convex");
        }
        _ => return Ok(()),
    };
    let f = function_param(p, "f", inequality)?;
    let dq = FnWrap(|x: f64| Ok(f.derivative(x)?.abs().powf(q)));
    let cert = check_ga_convex(&dq, &interval, &plan)?;
    witness_error(&cert, &format!("|f'|^{q} is not GA-convex"))
}

fn witness_error(cert: &ConvexityCertificate, what: &str) -> Result<()> {
    match cert.witness() {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "{what}: at x = {}, y = {}, λ = {} the defect is {:e}",
            w.x,
            w.y,
            w.lambda.unwrap_or(f64::NAN),
            w.defect
        ))),
    }
}
