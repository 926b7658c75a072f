use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Sin,
    Cos,
    Abs,
    /// `sign(u)`; undefined at `u = 0`, which is how the kink of `abs` shows
    /// up in derivatives.
    Sign,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
            Func::Sign => "sign",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "abs" => Func::Abs,
            "sign" => Func::Sign,
            _ => return None,
        })
    }
}

/// Expression tree in the single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFault {
    /// Argument outside the mathematical domain (ln of a non-positive value,
    /// division by zero, ...).
    Domain,
    /// Evaluation at the kink of a piecewise definition.
    Kink,
    /// Overflow to a non-finite value.
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{} in `{subexpr}` at x = {x}", match .fault {
    EvalFault::Domain => "domain fault",
    EvalFault::Kink => "undefined at kink",
    EvalFault::NonFinite => "non-finite value",
})]
pub struct EvalError {
    pub fault: EvalFault,
    pub subexpr: String,
    pub x: f64,
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Expr::Num(v) => Some(*v),
            _ => None,
        }
    }


    pub fn depends_on_x(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.depends_on_x(),
            Expr::Binary(_, l, r) => l.depends_on_x() || r.depends_on_x(),
        }
    }

    /// True if the tree contains a `sign` node, i.e. is undefined somewhere.
    pub fn has_kink(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Var => false,
            Expr::Call(Func::Sign, _) => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.has_kink(),
            Expr::Binary(_, l, r) => l.has_kink() || r.has_kink(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var => 1,
            Expr::Neg(e) | Expr::Call(_, e) => 1 + e.node_count(),
            Expr::Binary(_, l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    // Simplifying constructors. They fold constants and drop neutral
    // elements; nothing else.

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Expr {
        match e {
            Expr::Num(v) => Expr::Num(-v),
            Expr::Neg(inner) => *inner,
            e => Expr::Neg(Box::new(e)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: Expr, r: Expr) -> Expr {
        match (l.as_num(), r.as_num()) {
            (Some(a), Some(b)) => Expr::Num(a + b),
            (Some(a), _) if a == 0.0 => r,
            (_, Some(b)) if b == 0.0 => l,
            _ => Expr::Binary(BinOp::Add, Box::new(l), Box::new(r)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(l: Expr, r: Expr) -> Expr {
        match (l.as_num(), r.as_num()) {
            (Some(a), Some(b)) => Expr::Num(a - b),
            (Some(a), _) if a == 0.0 => Expr::neg(r),
            (_, Some(b)) if b == 0.0 => l,
            _ => Expr::Binary(BinOp::Sub, Box::new(l), Box::new(r)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Expr, r: Expr) -> Expr {
        match (l.as_num(), r.as_num()) {
            (Some(a), Some(b)) => Expr::Num(a * b),
            (Some(a), _) | (_, Some(a)) if a == 0.0 => Expr::Num(0.0),
            (Some(a), _) if a == 1.0 => r,
            (_, Some(b)) if b == 1.0 => l,
            (Some(a), _) if a == -1.0 => Expr::neg(r),
            (_, Some(b)) if b == -1.0 => Expr::neg(l),
            _ => Expr::Binary(BinOp::Mul, Box::new(l), Box::new(r)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(l: Expr, r: Expr) -> Expr {
        match (l.as_num(), r.as_num()) {
            (Some(a), Some(b)) if b != 0.0 => Expr::Num(a / b),
            (Some(a), _) if a == 0.0 => Expr::Num(0.0),
            (_, Some(b)) if b == 1.0 => l,
            _ => Expr::Binary(BinOp::Div, Box::new(l), Box::new(r)),
        }
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        match (base.as_num(), exponent.as_num()) {
            (Some(a), Some(b)) if a.powf(b).is_finite() => Expr::Num(a.powf(b)),
            (_, Some(b)) if b == 1.0 => base,
            (_, Some(b)) if b == 0.0 => Expr::Num(1.0),
            _ => Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let fault = |fault: EvalFault, e: &Expr| EvalError { fault, subexpr: e.to_string(), x };
        let v = match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Binary(op, l, r) => {
                let a = l.eval(x)?;
                let b = r.eval(x)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(fault(EvalFault::Domain, self));
                        }
                        a / b
                    }
                    BinOp::Pow => {
                        let v = if b == 2.0 { a * a } else { a.powf(b) };
                        if v.is_nan() || (v.is_infinite() && a.is_finite() && a == 0.0) {
                            return Err(fault(EvalFault::Domain, self));
                        }
                        v
                    }
                }
            }
            Expr::Call(func, arg) => {
                let u = arg.eval(x)?;
                match func {
                    Func::Exp => u.exp(),
                    Func::Ln => {
                        if u <= 0.0 {
                            return Err(fault(EvalFault::Domain, self));
                        }
                        u.ln()
                    }
                    Func::Sqrt => {
                        if u < 0.0 {
                            return Err(fault(EvalFault::Domain, self));
                        }
                        u.sqrt()
                    }
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Abs => u.abs(),
                    Func::Sign => {
                        if u == 0.0 {
                            return Err(fault(EvalFault::Kink, self));
                        }
                        u.signum()
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fault(EvalFault::NonFinite, self))
        }
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    let a = v.abs();
    let body = if a == 0.0 || (1e-4..1e15).contains(&a) { format!("{a}") } else { format!("{a:e}") };
    if v.is_sign_negative() {
        write!(f, "(-{body})")
    } else {
        f.write_str(&body)
    }
}

/// Fully parenthesised form that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write_num(f, *v),
            Expr::Var => f.write_str("x"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplifiers_fold() {
        assert_eq!(Expr::mul(Expr::num(2.0), Expr::num(3.0)), Expr::Num(6.0));
        assert_eq!(Expr::mul(Expr::Var, Expr::num(1.0)), Expr::Var);
        assert_eq!(Expr::add(Expr::num(0.0), Expr::Var), Expr::Var);
        assert_eq!(Expr::pow(Expr::Var, Expr::num(1.0)), Expr::Var);
        assert_eq!(Expr::neg(Expr::neg(Expr::Var)), Expr::Var);
        assert_eq!(Expr::div(Expr::num(0.0), Expr::Var), Expr::Num(0.0));
    }

    #[test]
    fn eval_faults() {
        let ln = Expr::call(Func::Ln, Expr::Var);
        let err = ln.eval(-1.0).unwrap_err();
        assert_eq!(err.fault, EvalFault::Domain);
        assert_eq!(err.subexpr, "ln(x)");
        assert_eq!(err.x, -1.0);
        let inv = Expr::div(Expr::num(1.0), Expr::Var);
        assert_eq!(inv.eval(0.0).unwrap_err().fault, EvalFault::Domain);
        let sgn = Expr::call(Func::Sign, Expr::Var);
        assert_eq!(sgn.eval(0.0).unwrap_err().fault, EvalFault::Kink);
        let big = Expr::call(Func::Exp, Expr::Var);
        assert_eq!(big.eval(1e5).unwrap_err().fault, EvalFault::NonFinite);
        let root = Expr::pow(Expr::Var, Expr::num(0.5));
        assert_eq!(root.eval(-4.0).unwrap_err().fault, EvalFault::Domain);
    }

    #[test]
    fn display_is_parenthesised() {
        let e = Expr::add(Expr::mul(Expr::num(-2.5), Expr::Var), Expr::call(Func::Exp, Expr::Var));
        assert_eq!(e.to_string(), "(((-2.5) * x) + exp(x))");
        assert_eq!(Expr::num(1e-20).to_string(), "1e-20");
        assert_eq!(Expr::num(0.1).to_string(), "0.1");
    }
}
