use crate::error::{Error, Result};

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} requires positive finite arguments, got {x}")))
    }
}

pub fn geometric_mean(x: f64, y: f64) -> Result<f64> {
    check_positive("geometric_mean", x)?;
    check_positive("geometric_mean", y)?;
    if x == y {
        return Ok(x);
    }
    let prod = x * y;
    if prod.is_normal() && prod.is_finite() {
        Ok(prod.sqrt())
    } else {
        // the product over- or underflows; the split form does not
        Ok(x.sqrt() * y.sqrt())
    }
}

pub fn arithmetic_mean(x: f64, y: f64) -> f64 {
    0.5 * x + 0.5 * y
}

/// `L(x, y) = (y - x) / (ln y - ln x)`, extended by `L(x, x) = x`.
pub fn logarithmic_mean(x: f64, y: f64) -> Result<f64> {
    check_positive("logarithmic_mean", x)?;
    check_positive("logarithmic_mean", y)?;
    if x == y {
        return Ok(x);
    }
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let d = hi - lo;
    // ln(hi/lo) via ln_1p keeps the near-diagonal case accurate
    let l = (d / lo).ln_1p();
    Ok((d / l).clamp(lo, hi))
}

/// `L(a^r, b^r)` for `0 < a < b` and `r > 0`, evaluated without forming the
/// difference `b^r - a^r` directly.
pub fn log_mean_of_powers(a: f64, b: f64, r: f64) -> Result<f64> {
    check_positive("log_mean_of_powers", a)?;
    check_positive("log_mean_of_powers", b)?;
    let z = r * (b.ln() - a.ln());
    if z == 0.0 {
        return Ok(a.powf(r));
    }
    Ok(a.powf(r) * z.exp_m1() / z)
}

/// `L(a^r, b^r) - a^r`, accurate when `r (ln b - ln a)` is small.
pub fn log_mean_of_powers_minus_lower(a: f64, b: f64, r: f64) -> Result<f64> {
    check_positive("log_mean_of_powers_minus_lower", a)?;
    check_positive("log_mean_of_powers_minus_lower", b)?;
    let z = r * (b.ln() - a.ln());
    let ratio = if z.abs() < 1e-4 {
        // (e^z - 1 - z)/z = z/2 + z^2/6 + z^3/24 + ...
        z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z.powi(4) / 120.0
    } else {
        (z.exp_m1() - z) / z
    };
    Ok(a.powf(r) * ratio)
}

/// Returns `(|a^θ - b^θ|, (b - a)^θ)`; the first never exceeds the second for
/// `0 < a <= b` and `0 < θ <= 1`.
pub fn power_difference(a: f64, b: f64, theta: f64) -> Result<(f64, f64)> {
    check_positive("power_difference", a)?;
    check_positive("power_difference", b)?;
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::domain(format!("power_difference requires 0 < theta <= 1, got {theta}")));
    }
    if a > b {
        return Err(Error::domain(format!("power_difference requires a <= b, got a = {a}, b = {b}")));
    }
    Ok(((a.powf(theta) - b.powf(theta)).abs(), (b - a).powf(theta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_mean(4.0, 9.0).unwrap(), 6.0);
        assert_eq!(geometric_mean(5.0, 5.0).unwrap(), 5.0);
        assert!((geometric_mean(1.0, E * E).unwrap() - E).abs() < 1e-15);
        assert!(geometric_mean(0.0, 1.0).is_err());
        assert!(geometric_mean(1.0, -2.0).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(arithmetic_mean(2.0, 4.0), 3.0);
        assert_eq!(arithmetic_mean(7.25, 7.25), 7.25);
        assert_eq!(arithmetic_mean(0.0, 1.0), 0.5);
    }

    #[test]
    fn logarithmic_examples() {
        assert_eq!(logarithmic_mean(3.5, 3.5).unwrap(), 3.5);
        assert!((logarithmic_mean(1.0, E).unwrap() - (E - 1.0)).abs() < 1e-15);
        // 6 / ln 4 by direct evaluation
        assert!((logarithmic_mean(2.0, 8.0).unwrap() - 4.328085122666890).abs() < 1e-14);
        assert!((logarithmic_mean(8.0, 2.0).unwrap() - 4.328085122666890).abs() < 1e-14);
        assert!(logarithmic_mean(-1.0, 2.0).is_err());
    }

    #[test]
    fn logarithmic_near_diagonal_is_continuous() {
        let x = 2.0;
        let y = 2.0 * (1.0 + 1e-12);
        let l = logarithmic_mean(x, y).unwrap();
        assert!(l >= x && l <= y);
    }

    #[test]
    fn powers_match_direct_formula() {
        let (a, b, r): (f64, f64, f64) = (1.5, 4.0, 2.5);
        let direct = logarithmic_mean(a.powf(r), b.powf(r)).unwrap();
        assert!((log_mean_of_powers(a, b, r).unwrap() - direct).abs() < 1e-12 * direct);
        let minus = log_mean_of_powers_minus_lower(a, b, r).unwrap();
        assert!((minus - (direct - a.powf(r))).abs() < 1e-11 * direct);
        let tiny = log_mean_of_powers_minus_lower(1.0, 1.0 + 1e-7, 2.0).unwrap();
        assert!((tiny - 1e-7).abs() < 1e-13);
    }

    #[test]
    fn power_difference_rejects_bad_theta() {
        assert!(power_difference(1.0, 2.0, 0.0).is_err());
        assert!(power_difference(1.0, 2.0, 1.5).is_err());
        assert!(power_difference(3.0, 2.0, 0.5).is_err());
        let (l, r) = power_difference(1.0, 4.0, 0.5).unwrap();
        assert_eq!(l, 1.0);
        assert!((r - 3f64.sqrt()).abs() < 1e-15);
    }
}
