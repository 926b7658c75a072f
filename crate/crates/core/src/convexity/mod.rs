//! Sampling certifiers for GA-convexity, s-GA-convexity and geometric
//! symmetry.
//!
//! A certificate is evidence on a finite sample, never a proof: the defect of
//! the defining inequality is evaluated over a λ-grid times a set of point
//! pairs and the worst case is recorded together with a reproducing witness.
//!
//! GA-convexity of `f` on `[a, b]` is the ordinary convexity of
//! `u ↦ f(e^u)` on `[ln a, ln b]`, and the GA certifiers are implemented as
//! exactly that check on the log image of the sample.

mod generate;

pub use generate::{
    ga_concave_derivative, random_asymmetric_weight, random_ga_convex, random_ga_convex_nonnegative,
    random_interval, random_log_polynomial, random_symmetric_weight,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::RealFn;
use crate::numerics::Interval;
use crate::par::{map_indexed, Execution};

/// Relative rounding slack applied to convexity defects.
pub const DEFECT_SLACK: f64 = 1e-12;
/// Relative threshold for geometric symmetry.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Which points and weights a certifier samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingPlan {
    /// Number of equally spaced λ values in `[0, 1]`.
    pub lambdas: usize,
    /// Random point pairs drawn in log coordinates.
    pub random_pairs: usize,
    /// Points of the log-uniform mesh; every mesh pair is checked.
    pub mesh_points: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan { lambdas: 21, random_pairs: 200, mesh_points: 50, seed: 0, execution: Execution::Parallel }
    }
}

impl SamplingPlan {
    /// Point pairs `(u, v)` on `[lo, hi]`: all mesh pairs, then the random
    /// pairs. Deterministic in `seed`.
    fn pairs(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let n = self.mesh_points;
        let mesh: Vec<f64> = (0..n)
            .map(|i| if n == 1 { 0.5 * (lo + hi) } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2 + self.random_pairs);
        for i in 0..n {
            for j in (i + 1)..n {
                out.push((mesh[i], mesh[j]));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.random_pairs {
            out.push((rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)));
        }
        out
    }

    fn lambda_grid(&self) -> Vec<f64> {
        match self.lambdas {
            0 => Vec::new(),
            1 => vec![0.5],
            n => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvexityKind {
    Ga,
    SGa(f64),
    /// Ordinary convexity (used on the log lift).
    Convex,
    GeoSymmetric,
}

/// A concrete sample reproducing a violation. For convexity checks `x`, `y`
/// and `lambda` are the inputs of the defining inequality; for symmetry `y` is
/// the reflected point `ab/x` and `lambda` is `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub lambda: Option<f64>,
    pub defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    HoldsOnSamples,
    Violated(Witness),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityCertificate {
    pub kind: ConvexityKind,
    pub sample_pairs: usize,
    pub lambda_grid: usize,
    /// Largest defect minus its rounding slack; positive iff violated.
    pub worst_violation: f64,
    pub verdict: Verdict,
}

impl ConvexityCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSamples
    }

    pub fn witness(&self) -> Option<Witness> {
        match self.verdict {
            Verdict::Violated(w) => Some(w),
            Verdict::HoldsOnSamples => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Worst {
    excess: f64,
    witness: Witness,
}

fn pick(acc: Option<Worst>, next: Option<Worst>) -> Option<Worst> {
    match (acc, next) {
        (Some(a), Some(b)) if b.excess > a.excess => Some(b),
        (None, b) => b,
        (a, _) => a,
    }
}

/// Scans `phi(λu + (1-λ)v) - w(λ) phi(u) - w(1-λ) phi(v)` over the plan.
/// Witness coordinates are mapped back through `to_x`.
fn scan_defects<P, W, X>(
    phi: &P,
    lo: f64,
    hi: f64,
    plan: &SamplingPlan,
    weight: W,
    to_x: X,
    kind: ConvexityKind,
) -> Result<ConvexityCertificate>
where
    P: Fn(f64) -> Result<f64> + Sync,
    W: Fn(f64) -> f64 + Sync,
    X: Fn(f64) -> f64 + Sync,
{
    let pairs = plan.pairs(lo, hi);
    let lambdas = plan.lambda_grid();
    let per_pair = map_indexed(pairs.len(), plan.execution, |i| -> Result<Option<Worst>> {
        let (u, v) = pairs[i];
        let (fu, fv) = (phi(u)?, phi(v)?);
        let mut worst = None;
        for &lam in &lambdas {
            let m = (lam * u + (1.0 - lam) * v).clamp(u.min(v), u.max(v));
            let fm = phi(m)?;
            let rhs = weight(lam) * fu + weight(1.0 - lam) * fv;
            let defect = fm - rhs;
            let slack = DEFECT_SLACK * 1f64.max(fu.abs()).max(fv.abs()).max(fm.abs());
            let w = Worst {
                excess: defect - slack,
                witness: Witness { x: to_x(u), y: to_x(v), lambda: Some(lam), defect },
            };
            worst = pick(worst, Some(w));
        }
        Ok(worst)
    });
    let mut worst = None;
    for r in per_pair {
        worst = pick(worst, r?);
    }
    Ok(certificate(kind, pairs.len(), lambdas.len(), worst))
}

fn certificate(kind: ConvexityKind, pairs: usize, lambdas: usize, worst: Option<Worst>) -> ConvexityCertificate {
    let (worst_violation, verdict) = match worst {
        Some(w) if w.excess > 0.0 => (w.excess, Verdict::Violated(w.witness)),
        Some(w) => (w.excess, Verdict::HoldsOnSamples),
        None => (f64::NEG_INFINITY, Verdict::HoldsOnSamples),
    };
    ConvexityCertificate { kind, sample_pairs: pairs, lambda_grid: lambdas, worst_violation, verdict }
}

/// Ordinary convexity of `phi` on `[lo, hi]`.
pub fn check_convex<F: RealFn + ?Sized>(phi: &F, lo: f64, hi: f64, plan: &SamplingPlan) -> Result<ConvexityCertificate> {
    if !(lo < hi) {
        return Err(Error::domain(format!("check_convex needs lo < hi, got [{lo}, {hi}]")));
    }
    scan_defects(&|u| phi.eval(u), lo, hi, plan, |l| l, |u| u, ConvexityKind::Convex)
}

/// `f(x^λ y^(1-λ)) <= λ f(x) + (1-λ) f(y)` on the sample.
pub fn check_ga_convex<F: RealFn + ?Sized>(f: &F, interval: &Interval, plan: &SamplingPlan) -> Result<ConvexityCertificate> {
    let (lo, hi) = (interval.a().ln(), interval.b().ln());
    scan_defects(&|u: f64| f.eval(u.exp()), lo, hi, plan, |l| l, f64::exp, ConvexityKind::Ga)
}

/// `f(x^λ y^(1-λ)) <= λ^s f(x) + (1-λ)^s f(y)` on the sample, `s ∈ (0, 1]`.
pub fn check_s_ga_convex<F: RealFn + ?Sized>(
    f: &F,
    s: f64,
    interval: &Interval,
    plan: &SamplingPlan,
) -> Result<ConvexityCertificate> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::domain(format!("s-GA-convexity needs s in (0, 1], got {s}")));
    }
    let (lo, hi) = (interval.a().ln(), interval.b().ln());
    let weight = move |l: f64| if s == 1.0 { l } else { l.powf(s) };
    scan_defects(&|u: f64| f.eval(u.exp()), lo, hi, plan, weight, f64::exp, ConvexityKind::SGa(s))
}

fn symmetry_points(interval: &Interval, plan: &SamplingPlan) -> Vec<f64> {
    let mut xs = interval.log_mesh(plan.mesh_points);
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let (lo, hi) = (interval.a().ln(), interval.b().ln());
    xs.extend((0..plan.random_pairs).map(|_| rng.gen_range(lo..=hi).exp().clamp(interval.a(), interval.b())));
    xs
}

/// `g(ab/x) = g(x)` on the sample, to `1e-10 (1 + sup|g|)`.
pub fn check_geo_symmetric<F: RealFn + ?Sized>(
    g: &F,
    interval: &Interval,
    plan: &SamplingPlan,
) -> Result<ConvexityCertificate> {
    let xs = symmetry_points(interval, plan);
    let evals = map_indexed(xs.len(), plan.execution, |i| -> Result<(f64, f64, f64)> {
        let x = xs[i];
        let y = interval.reflect(x).clamp(interval.a(), interval.b());
        Ok((g.eval(x)?, g.eval(y)?, y))
    });
    let evals: Vec<(f64, f64, f64)> = evals.into_iter().collect::<Result<_>>()?;
    let sup = evals.iter().fold(0f64, |m, &(gx, gy, _)| m.max(gx.abs()).max(gy.abs()));
    let threshold = SYMMETRY_TOL * (1.0 + sup);
    let mut worst = None;
    for (&x, &(gx, gy, y)) in xs.iter().zip(&evals) {
        let diff = (gy - gx).abs();
        let w = Worst { excess: diff - threshold, witness: Witness { x, y, lambda: None, defect: diff } };
        worst = pick(worst, Some(w));
    }
    Ok(certificate(ConvexityKind::GeoSymmetric, xs.len(), 0, worst))
}

/// First sampled point where `g` is negative, if any.
pub fn find_negative<F: RealFn + ?Sized>(g: &F, interval: &Interval, plan: &SamplingPlan) -> Result<Option<f64>> {
    for x in symmetry_points(interval, plan) {
        if g.eval(x)? < 0.0 {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
