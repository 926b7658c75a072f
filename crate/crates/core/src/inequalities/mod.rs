//! Left- and right-hand sides of the Hermite–Hadamard type identity and
//! bounds for GA-convex functions, and the constant families they use.
//!
//! Every verifier returns an [`InequalityReport`]. Quadrature error estimates
//! are propagated to first order through each side, and a bound passes when
//! `rhs - lhs >= -error_budget`.

mod classical;
mod constants;
mod estimate;
mod fractional_bounds;
mod identity;

use std::collections::BTreeMap;
use std::fmt;

pub use classical::{hh_ga_verify, zhang_bounds, zhang_thm2_printed_rhs, ZhangTheorem};
pub use constants::{
    c_constants_alpha, c_constants_alpha_q, corollary2_closed_forms, corollary2_defining_integrals, CVariant,
    MIN_CLOSED_FORM_LOGWIDTH,
};
pub use estimate::Estimate;
pub use fractional_bounds::{
    corollary1_verify, corollary2_variants, corollary3_verify, corollary4_verify, sup_norm, Cor2Form,
};
pub use identity::{lemma1_report, lemma1_residual, theorem5_verify, theorem6_verify, zeta_constants};

use crate::error::{Error, Result};
use crate::expr::{DerivativeMode, FunctionSpec};
use crate::numerics::{Interval, QuadratureConfig};

/// Multiplier applied to propagated quadrature error estimates.
pub const BUDGET_FACTOR: f64 = 10.0;
/// Relative rounding allowance added to every error budget.
pub const BUDGET_ROUNDING: f64 = 1e-12;
/// Acceptance threshold for identity residuals.
pub const IDENTITY_TOL: f64 = 1e-7;

/// A named report parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Num(f64),
    Text(String),
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Num(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Num(v) => write!(f, "{v:e}"),
            Param::Text(s) => f.write_str(s),
        }
    }
}

pub type Params = BTreeMap<String, Param>;

/// Outcome of one evaluation of an identity or bound.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub name: String,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub pass: bool,
    pub error_budget: f64,
}

impl InequalityReport {
    /// Report for `lhs <= rhs` with a budget built from the propagated error
    /// estimates of both sides.
    pub fn bound(name: &str, params: Params, lhs: Estimate, rhs: Estimate) -> Self {
        let budget = BUDGET_FACTOR * (lhs.error + rhs.error) + BUDGET_ROUNDING * (lhs.value.abs() + rhs.value.abs());
        Self::with_budget(name, params, lhs.value, rhs.value, budget)
    }

    /// Report with an explicit budget; `pass` iff `rhs - lhs >= -budget`.
    pub fn with_budget(name: &str, params: Params, lhs: f64, rhs: f64, error_budget: f64) -> Self {
        let slack = rhs - lhs;
        InequalityReport {
            name: name.to_string(),
            params,
            lhs,
            rhs,
            slack,
            pass: slack >= -error_budget,
            error_budget,
        }
    }

    pub fn param(&self, key: &str) -> Option<&Param> {
        self.params.get(key)
    }
}

/// Conjugate exponents with `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderExponents {
    q: f64,
    p: f64,
}

impl HolderExponents {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        if !(q > 1.0 && p > 1.0 && q.is_finite() && p.is_finite()) {
            return Err(Error::domain(format!("Hölder exponents must exceed 1, got q = {q}, p = {p}")));
        }
        if (1.0 / p + 1.0 / q - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("Hölder exponents need 1/p + 1/q = 1, got q = {q}, p = {p}")));
        }
        Ok(HolderExponents { q, p })
    }

    /// The conjugate pair for a given `q > 1`.
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q > 1.0 && q.is_finite()) {
            return Err(Error::domain(format!("Hölder exponent q must exceed 1, got {q}")));
        }
        Ok(HolderExponents { q, p: q / (q - 1.0) })
    }

    pub fn q(self) -> f64 {
        self.q
    }

    pub fn p(self) -> f64 {
        self.p
    }
}

/// Interval endpoints and quadrature tolerance, the parameters every report
/// carries.
pub(crate) fn base_params(interval: &Interval, cfg: &QuadratureConfig) -> Params {
    let mut p = Params::new();
    p.insert("a".into(), Param::Num(interval.a()));
    p.insert("b".into(), Param::Num(interval.b()));
    p.insert("tol".into(), Param::Num(cfg.abs_tol));
    p
}

/// Records a function under `key`, with its derivative under `{key}prime`
/// (or a marker when the derivative is a finite difference).
pub fn put_function(p: &mut Params, key: &str, f: &FunctionSpec) {
    p.insert(key.into(), Param::Text(f.text()));
    match f.mode() {
        DerivativeMode::Symbolic => {
            if let Some(d) = f.derivative_text() {
                p.insert(format!("{key}prime"), Param::Text(d));
            }
        }
        DerivativeMode::FiniteDifference => {
            p.insert(format!("{key}prime"), Param::Text(FINITE_DIFFERENCE_MARKER.into()));
        }
        DerivativeMode::None => {}
    }
}

/// Value recorded in place of a derivative expression when finite
/// differences are used.
pub const FINITE_DIFFERENCE_MARKER: &str = "finite_difference";

/// `f(x)` with the rounding error of one evaluation.
pub(crate) fn value_at(f: &FunctionSpec, x: f64) -> Result<Estimate> {
    Ok(Estimate::evaluated(f.value(x)?))
}

/// `f'(x)`, with an error allowance for finite differences.
pub(crate) fn derivative_at(f: &FunctionSpec, x: f64) -> Result<Estimate> {
    let d = f.derivative(x)?;
    Ok(match f.mode() {
        DerivativeMode::FiniteDifference => {
            let scale = f.value(x)?.abs().max(d.abs()).max(1.0);
            Estimate::new(d, FD_REL * scale)
        }
        _ => Estimate::evaluated(d),
    })
}

/// Error allowance for a central difference relative to the function scale.
const FD_REL: f64 = 1e-8;
