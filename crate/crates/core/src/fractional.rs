//! Left- and right-sided Hadamard fractional integrals
//!
//! ```text
//! J_{a+}^α f(x) = 1/Γ(α) ∫_a^x (ln(x/t))^(α-1) f(t) dt/t
//! J_{b-}^α f(x) = 1/Γ(α) ∫_x^b (ln(t/x))^(α-1) f(t) dt/t
//! ```
//!
//! Both are evaluated in log coordinates, `u = ln(x/t)` (resp. `ln(t/x)`),
//! which gives `1/Γ(α) ∫_0^H u^(α-1) f(x e^(∓u)) du` with the power weight
//! handled by the singular-endpoint quadrature.

use crate::error::{Error, Result};
use crate::expr::RealFn;
use crate::numerics::{gamma, try_integrate_power_weight, Endpoint, Interval, QuadratureConfig, QuadratureResult,
    GAMMA_REL_ACCURACY};

/// Order `α > 0` of a fractional integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(FractionalOrder(alpha))
        } else {
            Err(Error::domain(format!("fractional order must be positive, got {alpha}")))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// `α ∈ (0, 1]`, where the relaxed power bound `(1+t)^α - (1-t)^α <= (2t)^α`
    /// is available.
    pub fn is_at_most_one(self) -> bool {
        self.0 <= 1.0
    }
}

fn kernel_integral<F: RealFn + ?Sized>(
    f: &F,
    alpha: FractionalOrder,
    x: f64,
    width: f64,
    toward: f64,
    clamp: (f64, f64),
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let a = alpha.alpha();
    let g = gamma(a)?;
    let r = try_integrate_power_weight(
        |u: f64| {
            let t = (x * (toward * u).exp()).clamp(clamp.0, clamp.1);
            f.eval(t)
        },
        a - 1.0,
        0.0,
        width,
        Endpoint::Lower,
        cfg,
    )?;
    let value = r.value / g;
    Ok(QuadratureResult {
        value,
        error_estimate: r.error_estimate / g + GAMMA_REL_ACCURACY * value.abs(),
        subdivisions_used: r.subdivisions_used,
    })
}

/// `J_{a+}^α f(x)` for `a <= x <= b`; zero at `x = a`.
pub fn hadamard_left<F: RealFn + ?Sized>(
    f: &F,
    interval: &Interval,
    alpha: FractionalOrder,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let a = interval.a();
    if !(x >= a && x <= interval.b()) {
        return Err(Error::domain(format!(
            "left Hadamard integral needs a <= x <= b, got x = {x} on [{a}, {}]",
            interval.b()
        )));
    }
    if x == a {
        return Ok(QuadratureResult::ZERO);
    }
    kernel_integral(f, alpha, x, x.ln() - a.ln(), -1.0, (a, x), cfg)
}

/// `J_{b-}^α f(x)` for `a <= x <= b`; zero at `x = b`.
pub fn hadamard_right<F: RealFn + ?Sized>(
    f: &F,
    interval: &Interval,
    alpha: FractionalOrder,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let b = interval.b();
    if !(x >= interval.a() && x <= b) {
        return Err(Error::domain(format!(
            "right Hadamard integral needs a <= x <= b, got x = {x} on [{}, {b}]",
            interval.a()
        )));
    }
    if x == b {
        return Ok(QuadratureResult::ZERO);
    }
    kernel_integral(f, alpha, x, b.ln() - x.ln(), 1.0, (x, b), cfg)
}

/// `J_{a+}^α f(b) + J_{b-}^α f(a)`, the combination every fractional bound
/// uses.
pub fn hadamard_pair<F: RealFn + ?Sized>(
    f: &F,
    interval: &Interval,
    alpha: FractionalOrder,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let left = hadamard_left(f, interval, alpha, interval.b(), cfg)?;
    let right = hadamard_right(f, interval, alpha, interval.a(), cfg)?;
    Ok(left.plus(right))
}
