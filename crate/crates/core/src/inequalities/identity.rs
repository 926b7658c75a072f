//! The identity behind the bounds and the two bounds that follow from it
//! directly.
//!
//! Writing `ℓ = ln b - ln a`, `G = √(ab)`, `L(t) = a^t G^(1-t)` and
//! `U(t) = b^t G^(1-t)`,
//!
//! ```text
//! [h(b) - 2h(a)] f(a)/2 + h(b) f(b)/2 - ∫_a^b f h' dx
//!     = ℓ/4 { ∫_0^1 w(L) f'(L) L dt + ∫_0^1 w(U) f'(U) U dt },  w = 2h - h(b).
//! ```

use super::{base_params, derivative_at, put_function, value_at, Estimate, HolderExponents, InequalityReport, Param,
    IDENTITY_TOL};
use crate::error::{Error, Result};
use crate::expr::FunctionSpec;
use crate::numerics::{sign_change_points, try_integrate, try_integrate_breakpoints, Interval, QuadratureConfig};

/// Cells of the mesh scanned for sign changes of `2h - h(b)`.
const KINK_MESH: usize = 64;

/// Which geodesic from `G` an integral runs along.
#[derive(Clone, Copy)]
enum Branch {
    Lower,
    Upper,
}

fn point(interval: &Interval, branch: Branch, t: f64) -> f64 {
    match branch {
        Branch::Lower => interval.lower_point(t),
        Branch::Upper => interval.upper_point(t),
    }
}

/// `w(t) = 2h(P(t)) - h(b)` along one branch, with its interior zeros.
struct Weight<'a> {
    h: &'a FunctionSpec,
    hb: f64,
    interval: &'a Interval,
    branch: Branch,
    kinks: Vec<f64>,
}

impl<'a> Weight<'a> {
    fn new(h: &'a FunctionSpec, interval: &'a Interval, branch: Branch) -> Result<Self> {
        let hb = h.value(interval.b())?;
        let mut w = Weight { h, hb, interval, branch, kinks: Vec::new() };
        let kinks = sign_change_points(|t| w.at(t), 0.0, 1.0, KINK_MESH)?;
        w.kinks = kinks;
        Ok(w)
    }

    fn at(&self, t: f64) -> Result<f64> {
        Ok(2.0 * self.h.value(point(self.interval, self.branch, t))? - self.hb)
    }

    /// `∫_0^1 |w(t)| m(t) dt` split at the zeros of `w`.
    fn abs_moment<M>(&self, m: M, cfg: &QuadratureConfig) -> Result<Estimate>
    where
        M: Fn(f64, f64) -> f64,
    {
        let r = try_integrate_breakpoints::<_, Error>(
            |t| {
                let p = point(self.interval, self.branch, t);
                Ok(self.at(t)?.abs() * m(t, p))
            },
            0.0,
            1.0,
            &self.kinks,
            cfg,
        )?;
        Ok(r.into())
    }
}

fn identity_sides(
    f: &FunctionSpec,
    h: &FunctionSpec,
    interval: &Interval,
    cfg: &QuadratureConfig,
) -> Result<(Estimate, Estimate)> {
    let (a, b) = (interval.a(), interval.b());
    let (fa, fb) = (value_at(f, a)?, value_at(f, b)?);
    let (ha, hb) = (value_at(h, a)?, value_at(h, b)?);
    let fh = try_integrate::<_, Error>(|x| Ok(f.value(x)? * h.derivative(x)?), a, b, cfg)?;
    let lhs = (hb - ha.scale(2.0)) * fa.scale(0.5) + hb * fb.scale(0.5) - fh.into();

    let branch = |br: Branch| -> Result<Estimate> {
        let r = try_integrate::<_, Error>(
            |t| {
                let p = point(interval, br, t);
                Ok((2.0 * h.value(p)? - hb.value) * f.derivative(p)? * p)
            },
            0.0,
            1.0,
            cfg,
        )?;
        Ok(r.into())
    };
    let rhs = (branch(Branch::Lower)? + branch(Branch::Upper)?).scale(interval.logwidth() / 4.0);
    Ok((lhs, rhs))
}

/// `|LHS - RHS|` of the identity, both sides by quadrature.
pub fn lemma1_residual(f: &FunctionSpec, h: &FunctionSpec, interval: &Interval, cfg: &QuadratureConfig) -> Result<f64> {
    let (lhs, rhs) = identity_sides(f, h, interval, cfg)?;
    Ok((lhs.value - rhs.value).abs())
}

/// The identity residual as a report: `lhs` is the residual and `rhs` the
/// acceptance threshold.
pub fn lemma1_report(
    f: &FunctionSpec,
    h: &FunctionSpec,
    interval: &Interval,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let residual = lemma1_residual(f, h, interval, cfg)?;
    let mut p = base_params(interval, cfg);
    put_function(&mut p, "f", f);
    put_function(&mut p, "h", h);
    Ok(InequalityReport::with_budget("lemma1", p, residual, IDENTITY_TOL, 0.0))
}

/// `(ζ₁, ζ₂, ζ₃)`: the `|2h - h(b)|`-weighted moments of `t L`, `(1-t)(L, U)`
/// and `t U`.
pub fn zeta_constants(h: &FunctionSpec, interval: &Interval, cfg: &QuadratureConfig) -> Result<[Estimate; 3]> {
    let lower = Weight::new(h, interval, Branch::Lower)?;
    let upper = Weight::new(h, interval, Branch::Upper)?;
    let z1 = lower.abs_moment(|t, p| t * p, cfg)?;
    let z2 = lower.abs_moment(|t, p| (1.0 - t) * p, cfg)? + upper.abs_moment(|t, p| (1.0 - t) * p, cfg)?;
    let z3 = upper.abs_moment(|t, p| t * p, cfg)?;
    Ok([z1, z2, z3])
}

/// Derivative magnitudes `|f'(a)|, |f'(G)|, |f'(b)|`.
pub(crate) fn endpoint_slopes(f: &FunctionSpec, interval: &Interval) -> Result<[Estimate; 3]> {
    Ok([
        derivative_at(f, interval.a())?.abs(),
        derivative_at(f, interval.geometric_mean())?.abs(),
        derivative_at(f, interval.b())?.abs(),
    ])
}

pub(crate) fn dot(c: &[Estimate; 3], d: &[Estimate; 3]) -> Estimate {
    c[0] * d[0] + c[1] * d[1] + c[2] * d[2]
}

/// `|identity LHS| <= ℓ/4 (ζ₁|f'(a)| + ζ₂|f'(G)| + ζ₃|f'(b)|)`, valid when
/// `|f'|` is GA-convex.
pub fn theorem5_verify(
    f: &FunctionSpec,
    h: &FunctionSpec,
    interval: &Interval,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let (lhs, _) = identity_sides(f, h, interval, cfg)?;
    let zeta = zeta_constants(h, interval, cfg)?;
    let rhs = dot(&zeta, &endpoint_slopes(f, interval)?).scale(interval.logwidth() / 4.0);
    let mut p = base_params(interval, cfg);
    put_function(&mut p, "f", f);
    put_function(&mut p, "h", h);
    Ok(InequalityReport::bound("thm5", p, lhs.abs(), rhs))
}

/// Hölder refinement of the previous bound, valid when `|f'|^q` is
/// GA-convex:
///
/// ```text
/// ℓ/4 Σ_branches (∫|w|)^(1-1/q) (∫|w| [t P^q |f'(end)|^q + (1-t) P^q |f'(G)|^q])^(1/q)
/// ```
pub fn theorem6_verify(
    f: &FunctionSpec,
    h: &FunctionSpec,
    interval: &Interval,
    exps: HolderExponents,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let q = exps.q();
    let (lhs, _) = identity_sides(f, h, interval, cfg)?;
    let [da, dg, db] = endpoint_slopes(f, interval)?;
    let (da, dg, db) = (da.powf(q), dg.powf(q), db.powf(q));
    let mut rhs = Estimate::exact(0.0);
    for (branch, dend) in [(Branch::Lower, da), (Branch::Upper, db)] {
        let w = Weight::new(h, interval, branch)?;
        let mass = w.abs_moment(|_, _| 1.0, cfg)?;
        let end = w.abs_moment(|t, p| t * p.powf(q), cfg)?;
        let mid = w.abs_moment(|t, p| (1.0 - t) * p.powf(q), cfg)?;
        let inner = end * dend + mid * dg;
        rhs = rhs + mass.powf(1.0 - 1.0 / q) * inner.powf(1.0 / q);
    }
    let rhs = rhs.scale(interval.logwidth() / 4.0);
    let mut p = base_params(interval, cfg);
    put_function(&mut p, "f", f);
    put_function(&mut p, "h", h);
    p.insert("q".into(), Param::Num(q));
    Ok(InequalityReport::bound("thm6", p, lhs.abs(), rhs))
}
