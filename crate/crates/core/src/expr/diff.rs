use super::ast::{BinOp, Expr, Func};

/// Exact symbolic derivative with respect to `x`.
///
/// `abs(u)` differentiates to `sign(u) * u'`; the `sign` node faults with
/// [`EvalFault::Kink`](super::EvalFault::Kink) where `u = 0`.
pub fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) => Expr::num(0.0),
        Expr::Var => Expr::num(1.0),
        Expr::Neg(u) => Expr::neg(differentiate(u)),
        Expr::Binary(op, u, v) => {
            let (u, v) = (u.as_ref(), v.as_ref());
            match op {
                BinOp::Add => Expr::add(differentiate(u), differentiate(v)),
                BinOp::Sub => Expr::sub(differentiate(u), differentiate(v)),
                BinOp::Mul => Expr::add(
                    Expr::mul(differentiate(u), v.clone()),
                    Expr::mul(u.clone(), differentiate(v)),
                ),
                BinOp::Div => {
                    let du = differentiate(u);
                    let dv = differentiate(v);
                    if !v.depends_on_x() {
                        Expr::div(du, v.clone())
                    } else {
                        Expr::div(
                            Expr::sub(Expr::mul(du, v.clone()), Expr::mul(u.clone(), dv)),
                            Expr::pow(v.clone(), Expr::num(2.0)),
                        )
                    }
                }
                BinOp::Pow => {
                    if !v.depends_on_x() {
                        // d(u^c) = c u^(c-1) u'
                        let c = v.clone();
                        let c_minus_1 = Expr::sub(v.clone(), Expr::num(1.0));
                        Expr::mul(Expr::mul(c, Expr::pow(u.clone(), c_minus_1)), differentiate(u))
                    } else if !u.depends_on_x() {
                        // d(c^v) = c^v ln(c) v'
                        Expr::mul(
                            Expr::mul(e.clone(), Expr::call(Func::Ln, u.clone())),
                            differentiate(v),
                        )
                    } else {
                        // d(u^v) = u^v (v' ln u + v u'/u)
                        Expr::mul(
                            e.clone(),
                            Expr::add(
                                Expr::mul(differentiate(v), Expr::call(Func::Ln, u.clone())),
                                Expr::div(Expr::mul(v.clone(), differentiate(u)), u.clone()),
                            ),
                        )
                    }
                }
            }
        }
        Expr::Call(func, u) => {
            let du = differentiate(u);
            let u = u.as_ref().clone();
            let outer = match func {
                Func::Exp => e.clone(),
                Func::Ln => return Expr::div(du, u),
                Func::Sqrt => return Expr::div(du, Expr::mul(Expr::num(2.0), e.clone())),
                Func::Sin => Expr::call(Func::Cos, u),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, u)),
                Func::Abs => Expr::call(Func::Sign, u),
                // zero away from the kink
                Func::Sign => return Expr::num(0.0),
            };
            Expr::mul(outer, du)
        }
    }
}
