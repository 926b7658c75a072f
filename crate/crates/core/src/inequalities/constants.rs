//! Constant families of the fractional bounds.
//!
//! With `κ_α(t) = (1+t)^α - (1-t)^α`, `L(t) = a^t G^(1-t)` and
//! `U(t) = b^t G^(1-t)`:
//!
//! ```text
//! exact:    C₁ = ∫ κ t L,       C₂ = ∫ κ (1-t)(L + U),       C₃ = ∫ κ t U
//! relaxed:  C₁ = ∫ t^(α+1) L,   C₂ = ∫ t^α (1-t)(L + U),     C₃ = ∫ t^(α+1) U
//! (α, q):   C₁ = ∫ κ t L^q,     C₂ = ∫ κ (1-t)(L^q + U^q),   C₃ = ∫ κ t U^q
//! α = 1:    C₁ = ∫ t² L,        C₂ = ∫ t (1-t)(L + U),       C₃ = ∫ t² U
//! ```
//!
//! all integrals over `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use super::Estimate;
use crate::error::{Error, Result};
use crate::fractional::FractionalOrder;
use crate::numerics::{try_integrate, try_integrate_power_weight, Endpoint, Interval, QuadratureConfig};

/// Smallest log-width accepted by the closed forms; below it their terms
/// cancel catastrophically.
pub const MIN_CLOSED_FORM_LOGWIDTH: f64 = 1e-3;

/// Which constant family a fractional bound uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CVariant {
    /// The exact kernel `(1+t)^α - (1-t)^α`.
    Exact,
    /// The kernel relaxed to `2^α t^α`; requires `α <= 1`.
    Relaxed,
}

impl CVariant {
    pub fn name(self) -> &'static str {
        match self {
            CVariant::Exact => "exact",
            CVariant::Relaxed => "relaxed",
        }
    }
}

impl fmt::Display for CVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(CVariant::Exact),
            "relaxed" => Ok(CVariant::Relaxed),
            other => Err(Error::domain(format!("unknown constant variant `{other}` (expected exact or relaxed)"))),
        }
    }
}

/// `(1+t)^α - (1-t)^α` without cancellation for small `α` or `t`.
pub(crate) fn kernel(alpha: f64, t: f64) -> f64 {
    if t >= 1.0 {
        return 2f64.powf(alpha);
    }
    let lo = (1.0 - t).powf(alpha);
    lo * (alpha * (t.ln_1p() - (-t).ln_1p())).exp_m1()
}

fn integrate01<F: Fn(f64) -> f64>(f: F, cfg: &QuadratureConfig) -> Result<Estimate> {
    Ok(try_integrate::<_, Error>(|t| Ok(f(t)), 0.0, 1.0, cfg)?.into())
}

/// `∫_0^1 t^p m(t) dt` with the power handled exactly at `t = 0`.
fn power_moment<F: Fn(f64) -> f64>(p: f64, m: F, cfg: &QuadratureConfig) -> Result<Estimate> {
    let r = try_integrate_power_weight::<_, Error>(|t| Ok(m(t)), p, 0.0, 1.0, Endpoint::Lower, cfg)?;
    Ok(r.into())
}

fn kernel_family(interval: &Interval, alpha: f64, q: f64, cfg: &QuadratureConfig) -> Result<[Estimate; 3]> {
    let lq = |t: f64| interval.lower_point(t).powf(q);
    let uq = |t: f64| interval.upper_point(t).powf(q);
    Ok([
        integrate01(|t| kernel(alpha, t) * t * lq(t), cfg)?,
        integrate01(|t| kernel(alpha, t) * (1.0 - t) * (lq(t) + uq(t)), cfg)?,
        integrate01(|t| kernel(alpha, t) * t * uq(t), cfg)?,
    ])
}

/// `(C₁(α), C₂(α), C₃(α))` for the selected variant.
pub fn c_constants_alpha(
    interval: &Interval,
    alpha: FractionalOrder,
    variant: CVariant,
    cfg: &QuadratureConfig,
) -> Result<[Estimate; 3]> {
    let al = alpha.alpha();
    match variant {
        CVariant::Exact => kernel_family(interval, al, 1.0, cfg),
        CVariant::Relaxed => {
            if !alpha.is_at_most_one() {
                return Err(Error::domain(format!("relaxed constants need 0 < α <= 1, got α = {al}")));
            }
            let l = |t: f64| interval.lower_point(t);
            let u = |t: f64| interval.upper_point(t);
            Ok([
                power_moment(al + 1.0, l, cfg)?,
                power_moment(al, |t| (1.0 - t) * (l(t) + u(t)), cfg)?,
                power_moment(al + 1.0, u, cfg)?,
            ])
        }
    }
}

/// `(C₁(α,q), C₂(α,q), C₃(α,q))`. Defined for `q >= 1`; at `q = 1` these are
/// the exact-kernel constants.
pub fn c_constants_alpha_q(
    interval: &Interval,
    alpha: FractionalOrder,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<[Estimate; 3]> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::domain(format!("constants C(α, q) need q >= 1, got q = {q}")));
    }
    kernel_family(interval, alpha.alpha(), q, cfg)
}

/// `(C₁(1), C₂(1), C₃(1))` from their closed forms.
pub fn corollary2_closed_forms(interval: &Interval) -> Result<[f64; 3]> {
    let l = interval.logwidth();
    if l < MIN_CLOSED_FORM_LOGWIDTH {
        return Err(Error::domain(format!(
            "closed forms lose accuracy for ln b - ln a = {l:e} < {MIN_CLOSED_FORM_LOGWIDTH:e}; \
             use corollary2_defining_integrals instead"
        )));
    }
    let (a, b) = (interval.a(), interval.b());
    let g = interval.geometric_mean();
    let a_minus_g = -a * (0.5 * l).exp_m1();
    let b_minus_g = -b * (-0.5 * l).exp_m1();
    let a_minus_b = -a * l.exp_m1();
    let k = 2.0 / l;
    let c1 = k * (-a - 4.0 * a / l - 8.0 * a_minus_g / (l * l));
    let c2 = k * (2.0 * (a + b + 2.0 * g) / l + 8.0 * a_minus_b / (l * l));
    let c3 = k * (b - 4.0 * b / l + 8.0 * b_minus_g / (l * l));
    Ok([c1, c2, c3])
}

/// `(∫t²L, ∫t(1-t)(L+U), ∫t²U)` by quadrature.
pub fn corollary2_defining_integrals(interval: &Interval, cfg: &QuadratureConfig) -> Result<[Estimate; 3]> {
    let l = |t: f64| interval.lower_point(t);
    let u = |t: f64| interval.upper_point(t);
    Ok([
        integrate01(|t| t * t * l(t), cfg)?,
        integrate01(|t| t * (1.0 - t) * (l(t) + u(t)), cfg)?,
        integrate01(|t| t * t * u(t), cfg)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs()
    }

    #[test]
    fn kernel_values() {
        assert_eq!(kernel(1.0, 0.3), 0.6);
        assert_eq!(kernel(0.5, 1.0), 2f64.sqrt());
        assert_eq!(kernel(0.7, 0.0), 0.0);
        let direct = 1.2f64.powf(0.4) - 0.8f64.powf(0.4);
        assert!((kernel(0.4, 0.2) - direct).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_on_e_squared() {
        // Antiderivatives: ∫t²e^(1-t) = 2e - 5, ∫t²e^(1+t) = e(e - 2),
        // ∫t(1-t)(e^(1-t) + e^(1+t)) = 3 + 2e - e².
        let c = corollary2_closed_forms(&iv(1.0, E * E)).unwrap();
        assert!((c[0] - (2.0 * E - 5.0)).abs() < 1e-13);
        assert!((c[1] - (3.0 + 2.0 * E - E * E)).abs() < 1e-13);
        assert!((c[2] - E * (E - 2.0)).abs() < 1e-13);
        assert!((c[1] - 1.047_507_557_987_440_2).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for (a, b) in [(1.0, 1.2), (0.5, 30.0), (2.0, 2.0 * 1.1f64.exp()), (3.0, 400.0)] {
            let i = iv(a, b);
            let c = corollary2_closed_forms(&i).unwrap();
            let q = corollary2_defining_integrals(&i, &cfg()).unwrap();
            for k in 0..3 {
                assert!(rel(c[k], q[k].value) < 1e-9, "({a}, {b}) C{}", k + 1);
            }
        }
    }

    #[test]
    fn closed_forms_reject_narrow_intervals() {
        assert!(corollary2_closed_forms(&iv(1.0, 1.0005)).is_err());
    }

    #[test]
    fn exact_at_one_is_twice_the_unit_constants() {
        let i = iv(1.0, E * E);
        let e = c_constants_alpha(&i, order(1.0), CVariant::Exact, &cfg()).unwrap();
        let c = corollary2_closed_forms(&i).unwrap();
        for k in 0..3 {
            assert!(rel(e[k].value, 2.0 * c[k]) < 1e-10);
        }
        assert!((e[0].value - 2.0 * (2.0 * E - 5.0)).abs() < 1e-10);
    }

    #[test]
    fn relaxed_at_one_is_the_unit_constants() {
        let i = iv(1.0, E * E);
        let r = c_constants_alpha(&i, order(1.0), CVariant::Relaxed, &cfg()).unwrap();
        assert!((r[0].value - (2.0 * E - 5.0)).abs() < 1e-10);
        let c = corollary2_closed_forms(&i).unwrap();
        for k in 0..3 {
            assert!(rel(r[k].value, c[k]) < 1e-10);
        }
        assert!(c_constants_alpha(&i, order(1.5), CVariant::Relaxed, &cfg()).is_err());
    }

    #[test]
    fn exact_kernel_against_split_oracle() {
        // (1+t)^α φ by plain quadrature minus (1-t)^α φ with the power weight
        // at t = 1.
        let i = iv(0.8, 5.0);
        let (al, q) = (0.35, 1.7);
        let c = c_constants_alpha_q(&i, order(al), q, &cfg()).unwrap();
        let phi = |t: f64| t * i.upper_point(t).powf(q);
        let smooth = crate::numerics::integrate(|t| (1.0 + t).powf(al) * phi(t), 0.0, 1.0, &cfg()).unwrap().value;
        let sing = try_integrate_power_weight::<_, Error>(|t| Ok(phi(t)), al, 0.0, 1.0, Endpoint::Upper, &cfg())
            .unwrap()
            .value;
        assert!(rel(c[2].value, smooth - sing) < 1e-9);
    }

    #[test]
    fn alpha_q_at_q_one_is_exact_variant() {
        let i = iv(1.5, 9.0);
        let a = c_constants_alpha_q(&i, order(0.6), 1.0, &cfg()).unwrap();
        let b = c_constants_alpha(&i, order(0.6), CVariant::Exact, &cfg()).unwrap();
        assert_eq!(a, b);
        assert!(c_constants_alpha_q(&i, order(0.6), 0.5, &cfg()).is_err());
    }

    #[test]
    fn alpha_q_at_one_two_on_e_squared() {
        // 2 ∫ t² e^(2(1-t)) dt = e²/2 - 5/2.
        let c = c_constants_alpha_q(&iv(1.0, E * E), order(1.0), 2.0, &cfg()).unwrap();
        assert!((c[0].value - (E * E / 2.0 - 2.5)).abs() < 1e-10);
    }

    #[test]
    fn homogeneity_under_scaling() {
        let i = iv(0.7, 6.0);
        let k = 3.5;
        let j = iv(0.7 * k, 6.0 * k);
        for v in [CVariant::Exact, CVariant::Relaxed] {
            let c = c_constants_alpha(&i, order(0.8), v, &cfg()).unwrap();
            let d = c_constants_alpha(&j, order(0.8), v, &cfg()).unwrap();
            for n in 0..3 {
                assert!(rel(d[n].value, k * c[n].value) < 1e-10);
            }
        }
        let q = 2.5;
        let c = c_constants_alpha_q(&i, order(1.3), q, &cfg()).unwrap();
        let d = c_constants_alpha_q(&j, order(1.3), q, &cfg()).unwrap();
        for n in 0..3 {
            assert!(rel(d[n].value, k.powf(q) * c[n].value) < 1e-10);
        }
    }

    #[test]
    fn variant_names_round_trip() {
        for v in [CVariant::Exact, CVariant::Relaxed] {
            assert_eq!(v.name().parse::<CVariant>().unwrap(), v);
        }
        assert!("eq29".parse::<CVariant>().is_err());
    }
}
