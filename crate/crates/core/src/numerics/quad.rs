//! Globally adaptive Gauss–Kronrod (10/21 point) quadrature.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol * |value|)`. Error estimates follow
//! the QUADPACK `qk21` heuristics.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

// Kronrod abscissae (non-negative half) and weights; Gauss weights belong to
// the odd-indexed abscissae.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_931_883_690,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-10, rel_tol: 1e-10, max_subdivisions: 2000 }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self, QuadratureError> {
        let cfg = QuadratureConfig { abs_tol, rel_tol, max_subdivisions };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Same absolute and relative tolerance, default subdivision budget.
    pub fn with_tol(tol: f64) -> Result<Self, QuadratureError> {
        Self::new(tol, tol, QuadratureConfig::default().max_subdivisions)
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let ok_tol = |t: f64| t >= 0.0 && t.is_finite();
        if !ok_tol(self.abs_tol) || !ok_tol(self.rel_tol) {
            return Err(QuadratureError::InvalidConfig(format!(
                "tolerances must be finite and non-negative (abs_tol = {}, rel_tol = {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(QuadratureError::InvalidConfig(
                "at least one of abs_tol, rel_tol must be positive".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(QuadratureError::InvalidConfig("max_subdivisions must be positive".into()));
        }
        Ok(())
    }

    /// The accuracy target for a result of magnitude `value`.
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
}

impl QuadratureResult {
    pub const ZERO: QuadratureResult =
        QuadratureResult { value: 0.0, error_estimate: 0.0, subdivisions_used: 0 };

    pub fn scaled(self, c: f64) -> Self {
        QuadratureResult { value: c * self.value, error_estimate: c.abs() * self.error_estimate, ..self }
    }

    /// Sum of two results with added error estimates.
    pub fn plus(self, other: QuadratureResult) -> Self {
        QuadratureResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            subdivisions_used: self.subdivisions_used + other.subdivisions_used,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error(
        "quadrature did not converge: best estimate {} with error {:e} exceeds tolerance {:e} after {} panels",
        best.value, best.error_estimate, tolerance, best.subdivisions_used
    )]
    Convergence { best: QuadratureResult, tolerance: f64 },
    #[error("integrand is not finite at x = {at}")]
    NonFinite { at: f64 },
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Which end of the integration range carries the singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn checked<F, E>(f: &mut F, x: f64) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    let y = f(x)?;
    if y.is_finite() {
        Ok(y)
    } else {
        Err(QuadratureError::NonFinite { at: x }.into())
    }
}

fn kronrod21<F, E>(f: &mut F, lo: f64, hi: f64) -> Result<Panel, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = checked(f, center)?;
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = checked(f, center - dx)?;
        let f2 = checked(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { lo, hi, value, error })
}

fn adapt<F, E>(f: &mut F, points: &[f64], cfg: &QuadratureConfig) -> Result<QuadratureResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    let mut heap = BinaryHeap::new();
    let (mut value, mut error) = (0.0, 0.0);
    for w in points.windows(2) {
        if w[1] > w[0] {
            let p = kronrod21(f, w[0], w[1])?;
            value += p.value;
            error += p.error;
            heap.push(p);
        }
    }
    if heap.is_empty() {
        return Ok(QuadratureResult::ZERO);
    }
    let finish = |heap: BinaryHeap<Panel>| {
        let mut panels = heap.into_vec();
        panels.sort_by(|p, q| p.lo.total_cmp(&q.lo));
        QuadratureResult {
            value: panels.iter().map(|p| p.value).sum(),
            error_estimate: panels.iter().map(|p| p.error).sum(),
            subdivisions_used: panels.len(),
        }
    };
    loop {
        if error <= cfg.tolerance(value) {
            return Ok(finish(heap));
        }
        let worst = *heap.peek().expect("non-empty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        let exhausted = heap.len() >= cfg.max_subdivisions;
        let too_narrow = !(worst.lo < mid && mid < worst.hi)
            || (worst.hi - worst.lo) <= 8.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE);
        if exhausted || too_narrow {
            let best = finish(heap);
            return Err(QuadratureError::Convergence { best, tolerance: cfg.tolerance(best.value) }.into());
        }
        heap.pop();
        let left = kronrod21(f, worst.lo, mid)?;
        let right = kronrod21(f, mid, worst.hi)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

fn check_bounds(lo: f64, hi: f64) -> Result<(), QuadratureError> {
    if lo.is_finite() && hi.is_finite() {
        Ok(())
    } else {
        Err(QuadratureError::Domain(format!("integration bounds must be finite, got [{lo}, {hi}]")))
    }
}

/// Integrates a fallible integrand over `[lo, hi]`, splitting the range at the
/// given interior breakpoints first.
pub fn try_integrate_breakpoints<F, E>(
    mut f: F,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    cfg.validate()?;
    check_bounds(lo, hi)?;
    if lo == hi {
        return Ok(QuadratureResult::ZERO);
    }
    let (sign, lo, hi) = if lo > hi { (-1.0, hi, lo) } else { (1.0, lo, hi) };
    let mut points = Vec::with_capacity(breakpoints.len() + 2);
    points.push(lo);
    let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|&p| p > lo && p < hi).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    points.extend(inner);
    points.push(hi);
    adapt(&mut f, &points, cfg).map(|r| if sign < 0.0 { r.scaled(-1.0) } else { r })
}

pub fn try_integrate<F, E>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    try_integrate_breakpoints(f, lo, hi, &[], cfg)
}

/// Integrates an infallible integrand over `[lo, hi]`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|x| Ok::<f64, QuadratureError>(f(x)), lo, hi, cfg)
}

/// `∫ d(x)^p f_smooth(x) dx` over `[lo, hi]` where `d` is the distance to the
/// singular endpoint and `p > -1`.
///
/// Writing `p = n + θ - 1` with integer `n >= 0` and `θ ∈ (0, 1]`, the
/// substitution `d = v^(1/θ)` turns the weight into the constant `1/θ` and the
/// remaining integrand `d^n f_smooth` is smooth.
pub fn try_integrate_power_weight<F, E>(
    mut f_smooth: F,
    exponent: f64,
    lo: f64,
    hi: f64,
    singular_at: Endpoint,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    if !(exponent > -1.0) || !exponent.is_finite() {
        return Err(QuadratureError::Domain(format!("power weight exponent must exceed -1, got {exponent}")).into());
    }
    check_bounds(lo, hi)?;
    if lo > hi {
        return Err(QuadratureError::Domain(format!("power-weighted integral needs lo <= hi, got [{lo}, {hi}]")).into());
    }
    cfg.validate()?;
    if lo == hi {
        return Ok(QuadratureResult::ZERO);
    }
    let n = exponent.ceil().max(0.0);
    let theta = exponent - n + 1.0;
    let width = hi - lo;
    let place = |d: f64| match singular_at {
        Endpoint::Lower => (lo + d).min(hi),
        Endpoint::Upper => (hi - d).max(lo),
    };
    let ni = n as i32;
    if theta == 1.0 {
        return try_integrate::<_, E>(|x: f64| {
            let d = match singular_at {
                Endpoint::Lower => x - lo,
                Endpoint::Upper => hi - x,
            };
            Ok(d.powi(ni) * f_smooth(x)?)
        }, lo, hi, cfg);
    }
    let inv = 1.0 / theta;
    let vmax = width.powf(theta);
    let inner_cfg = QuadratureConfig {
        abs_tol: cfg.abs_tol * theta,
        ..*cfg
    };
    let r = try_integrate::<_, E>(
        |v: f64| {
            let d = v.powf(inv);
            Ok(d.powi(ni) * f_smooth(place(d))?)
        },
        0.0,
        vmax,
        &inner_cfg,
    )?;
    Ok(r.scaled(inv))
}

/// `∫ d(x)^(θ-1) f_smooth(x) dx` for `θ ∈ (0, 1]`, `d` the distance to
/// `singular_at`.
pub fn integrate_power_singular<F>(
    f_smooth: F,
    theta: f64,
    lo: f64,
    hi: f64,
    singular_at: Endpoint,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(QuadratureError::Domain(format!("theta must lie in (0, 1], got {theta}")));
    }
    try_integrate_power_weight(|x| Ok::<f64, QuadratureError>(f_smooth(x)), theta - 1.0, lo, hi, singular_at, cfg)
}

/// Interior points of `[lo, hi]` where `g` changes sign, located by scanning a
/// uniform mesh of `mesh` cells and bisecting each bracketed root.
pub fn sign_change_points<F, E>(mut g: F, lo: f64, hi: f64, mesh: usize) -> Result<Vec<f64>, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mesh = mesh.max(1);
    let at = |i: usize| if i == mesh { hi } else { lo + (hi - lo) * i as f64 / mesh as f64 };
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut g0 = g(lo)?;
    for i in 1..=mesh {
        let x1 = at(i);
        let g1 = g(x1)?;
        if g1 == 0.0 && i < mesh {
            roots.push(x1);
        } else if g0 * g1 < 0.0 {
            let (mut l, mut r, mut gl) = (x0, x1, g0);
            for _ in 0..200 {
                let m = 0.5 * (l + r);
                if m <= l || m >= r {
                    break;
                }
                let gm = g(m)?;
                if gm == 0.0 {
                    l = m;
                    r = m;
                    break;
                }
                if (gm < 0.0) == (gl < 0.0) {
                    l = m;
                    gl = gm;
                } else {
                    r = m;
                }
            }
            roots.push(0.5 * (l + r));
        }
        x0 = x1;
        g0 = g1;
    }
    Ok(roots)
}
