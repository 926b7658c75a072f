use std::sync::Arc;

use super::ast::{BinOp, EvalError, Expr, Func};
use super::diff::differentiate;
use super::parser::parse;
use crate::error::{Error, Result};

/// A real function of one variable that may fail to evaluate.
pub trait RealFn: Sync {
    fn eval(&self, x: f64) -> Result<f64>;
}

impl RealFn for Expr {
    fn eval(&self, x: f64) -> Result<f64> {
        Expr::eval(self, x).map_err(Error::from)
    }
}

/// Adapts a closure into a [`RealFn`].
pub struct FnWrap<F>(pub F);

impl<F> RealFn for FnWrap<F>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    fn eval(&self, x: f64) -> Result<f64> {
        (self.0)(x)
    }
}

impl<T: RealFn + ?Sized> RealFn for &T {
    fn eval(&self, x: f64) -> Result<f64> {
        (**self).eval(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    /// Exact derivative expression, either supplied or produced by
    /// [`differentiate`].
    Symbolic,
    /// Central difference with step `h = eps^(1/3) max(1, |x|)`.
    FiniteDifference,
    /// No derivative; operations needing one fail.
    None,
}

/// A function together with (a way to get) its first derivative.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    value: Arc<Expr>,
    derivative: Option<Arc<Expr>>,
    mode: DerivativeMode,
}

impl FunctionSpec {
    /// Symbolic mode; the derivative is computed and stored.
    pub fn new(value: Expr) -> Self {
        let derivative = differentiate(&value);
        FunctionSpec { value: Arc::new(value), derivative: Some(Arc::new(derivative)), mode: DerivativeMode::Symbolic }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(FunctionSpec::new(parse(text)?))
    }

    /// Symbolic mode with a caller-supplied derivative.
    pub fn with_derivative(value: Expr, derivative: Expr) -> Self {
        FunctionSpec { value: Arc::new(value), derivative: Some(Arc::new(derivative)), mode: DerivativeMode::Symbolic }
    }

    pub fn finite_difference(value: Expr) -> Self {
        FunctionSpec { value: Arc::new(value), derivative: None, mode: DerivativeMode::FiniteDifference }
    }

    pub fn value_only(value: Expr) -> Self {
        FunctionSpec { value: Arc::new(value), derivative: None, mode: DerivativeMode::None }
    }

    pub fn constant(c: f64) -> Self {
        FunctionSpec::new(Expr::num(c))
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn expr(&self) -> &Expr {
        &self.value
    }

    pub fn derivative_expr(&self) -> Option<&Expr> {
        self.derivative.as_deref()
    }

    /// Canonical text of the function; parses back to the same tree.
    pub fn text(&self) -> String {
        self.value.to_string()
    }

    pub fn derivative_text(&self) -> Option<String> {
        self.derivative.as_ref().map(|d| d.to_string())
    }

    pub fn value(&self, x: f64) -> std::result::Result<f64, EvalError> {
        self.value.eval(x)
    }

    /// The finite-difference step used at `x`.
    pub fn fd_step(x: f64) -> f64 {
        f64::EPSILON.cbrt() * x.abs().max(1.0)
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        match self.mode {
            DerivativeMode::Symbolic => {
                let d = self.derivative.as_ref().expect("symbolic mode stores a derivative");
                Ok(d.eval(x)?)
            }
            DerivativeMode::FiniteDifference => {
                let h = Self::fd_step(x);
                let (xp, xm) = (x + h, x - h);
                Ok((self.value.eval(xp)? - self.value.eval(xm)?) / (xp - xm))
            }
            DerivativeMode::None => Err(Error::MissingDerivative(format!(
                "no derivative available for `{}`",
                self.value
            ))),
        }
    }

    /// `self * other`, symbolic if both are symbolic.
    pub fn product(&self, other: &FunctionSpec) -> FunctionSpec {
        let expr = Expr::Binary(BinOp::Mul, Box::new((*self.value).clone()), Box::new((*other.value).clone()));
        self.derived(expr)
    }

    /// `|f'|^q` as a function in its own right. Requires a derivative.
    pub fn abs_derivative_pow(&self, q: f64) -> Result<FunctionSpec> {
        let d = match self.mode {
            DerivativeMode::Symbolic => (**self.derivative.as_ref().expect("stored")).clone(),
            _ => {
                return Err(Error::MissingDerivative(format!(
                    "|f'|^q needs a symbolic derivative of `{}`",
                    self.value
                )))
            }
        };
        let abs = Expr::call(Func::Abs, d);
        let e = if q == 1.0 { abs } else { Expr::Binary(BinOp::Pow, Box::new(abs), Box::new(Expr::num(q))) };
        Ok(FunctionSpec::value_only(e))
    }

    fn derived(&self, expr: Expr) -> FunctionSpec {
        match self.mode {
            DerivativeMode::Symbolic => FunctionSpec::new(expr),
            DerivativeMode::FiniteDifference => FunctionSpec::finite_difference(expr),
            DerivativeMode::None => FunctionSpec::value_only(expr),
        }
    }
}

impl RealFn for FunctionSpec {
    fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.value(x)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_derivative_is_stored() {
        let f = FunctionSpec::parse("x^3").unwrap();
        assert_eq!(f.mode(), DerivativeMode::Symbolic);
        assert!(f.derivative_expr().is_some());
        assert_eq!(f.derivative(2.0).unwrap(), 12.0);
    }

    #[test]
    fn finite_difference_agrees() {
        let f = FunctionSpec::finite_difference(parse("exp(2*x)").unwrap());
        let d = f.derivative(0.5).unwrap();
        assert!((d - 2.0 * std::f64::consts::E).abs() < 1e-8);
        assert_eq!(FunctionSpec::fd_step(0.5), f64::EPSILON.cbrt());
        assert_eq!(FunctionSpec::fd_step(-4.0), 4.0 * f64::EPSILON.cbrt());
    }

    #[test]
    fn missing_derivative_errors() {
        let f = FunctionSpec::value_only(parse("x").unwrap());
        assert!(matches!(f.derivative(1.0), Err(Error::MissingDerivative(_))));
    }

    #[test]
    fn text_round_trips() {
        let f = FunctionSpec::parse("2*exp(-x) + pi").unwrap();
        let g = FunctionSpec::parse(&f.text()).unwrap();
        assert_eq!(f.expr(), g.expr());
    }

    #[test]
    fn abs_derivative_power() {
        let f = FunctionSpec::parse("-x^2").unwrap();
        let g = f.abs_derivative_pow(2.0).unwrap();
        assert_eq!(g.value(3.0).unwrap(), 36.0);
    }
}
