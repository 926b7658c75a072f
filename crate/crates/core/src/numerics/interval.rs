use crate::error::{Error, Result};

/// A validated interval `0 < a < b` on the positive half line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::domain(format!("interval endpoints must be finite, got [{a}, {b}]")));
        }
        if a <= 0.0 {
            return Err(Error::domain(format!("interval must lie in (0, inf), got a = {a}")));
        }
        if a >= b {
            return Err(Error::domain(format!("interval requires a < b, got [{a}, {b}]")));
        }
        Ok(Interval { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `G = sqrt(a b)`.
    pub fn geometric_mean(&self) -> f64 {
        (self.a * self.b).sqrt()
    }

    /// `ln b - ln a`.
    pub fn logwidth(&self) -> f64 {
        self.b.ln() - self.a.ln()
    }

    /// `L(t) = a^t G^(1-t)`, running from `G` at `t = 0` to `a` at `t = 1`.
    pub fn lower_point(&self, t: f64) -> f64 {
        let ln_g = 0.5 * (self.a.ln() + self.b.ln());
        (t * self.a.ln() + (1.0 - t) * ln_g).exp()
    }

    /// `U(t) = b^t G^(1-t)`, running from `G` at `t = 0` to `b` at `t = 1`.
    pub fn upper_point(&self, t: f64) -> f64 {
        let ln_g = 0.5 * (self.a.ln() + self.b.ln());
        (t * self.b.ln() + (1.0 - t) * ln_g).exp()
    }

    /// The geometric reflection `x -> ab/x`, which swaps `a` and `b`.
    pub fn reflect(&self, x: f64) -> f64 {
        self.a * self.b / x
    }

    /// The interval `[1/b, 1/a]`.
    pub fn reciprocal(&self) -> Interval {
        Interval { a: 1.0 / self.b, b: 1.0 / self.a }
    }

    /// `n` log-uniformly spaced points from `a` to `b` inclusive.
    pub fn log_mesh(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![self.geometric_mean()],
            _ => {
                let (la, lw) = (self.a.ln(), self.logwidth());
                (0..n)
                    .map(|i| match i {
                        0 => self.a,
                        i if i == n - 1 => self.b,
                        i => (la + lw * i as f64 / (n - 1) as f64).exp(),
                    })
                    .collect()
            }
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_and_nonpositive() {
        assert!(Interval::new(2.0, 2.0).is_err());
        assert!(Interval::new(3.0, 2.0).is_err());
        assert!(Interval::new(0.0, 2.0).is_err());
        assert!(Interval::new(-1.0, 2.0).is_err());
        assert!(Interval::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn derived_quantities() {
        let iv = Interval::new(1.0, 4.0).unwrap();
        assert_eq!(iv.geometric_mean(), 2.0);
        assert!((iv.logwidth() - 4f64.ln()).abs() < 1e-15);
        assert!((iv.lower_point(0.0) - 2.0).abs() < 1e-15);
        assert!((iv.lower_point(1.0) - 1.0).abs() < 1e-15);
        assert!((iv.upper_point(1.0) - 4.0).abs() < 1e-14);
        let t = 0.37;
        assert!((iv.lower_point(t) * iv.upper_point(t) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn mesh_hits_endpoints() {
        let iv = Interval::new(0.5, 8.0).unwrap();
        let m = iv.log_mesh(5);
        assert_eq!(m[0], 0.5);
        assert_eq!(m[4], 8.0);
        assert!((m[2] - 2.0).abs() < 1e-14);
    }
}
