use std::ops::{Add, Mul, Neg, Sub};

use crate::numerics::QuadratureResult;

/// Relative error attached to a single correctly rounded evaluation.
const EVAL_REL: f64 = 4.0 * f64::EPSILON;

/// A value with an absolute error bound propagated to first order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: f64, error: f64) -> Self {
        Estimate { value, error: error.abs() }
    }

    pub fn exact(value: f64) -> Self {
        Estimate { value, error: 0.0 }
    }

    /// A value from one floating-point function evaluation.
    pub fn evaluated(value: f64) -> Self {
        Estimate { value, error: EVAL_REL * value.abs() }
    }

    pub fn abs(self) -> Self {
        Estimate { value: self.value.abs(), error: self.error }
    }

    pub fn scale(self, c: f64) -> Self {
        Estimate { value: c * self.value, error: c.abs() * self.error }
    }

    /// `|v|^r` for `r > 0`, with the error widened to cover the whole
    /// interval `[|v| - e, |v| + e]` so that concave powers near zero are
    /// handled.
    pub fn powf(self, r: f64) -> Self {
        let v = self.value.abs();
        let value = v.powf(r);
        let up = (v + self.error).powf(r) - value;
        let down = value - (v - self.error).max(0.0).powf(r);
        Estimate { value, error: up.max(down) }
    }
}

impl From<QuadratureResult> for Estimate {
    fn from(r: QuadratureResult) -> Self {
        Estimate::new(r.value, r.error_estimate)
    }
}

impl Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate { value: self.value + o.value, error: self.error + o.error }
    }
}

impl Sub for Estimate {
    type Output = Estimate;
    fn sub(self, o: Estimate) -> Estimate {
        Estimate { value: self.value - o.value, error: self.error + o.error }
    }
}

impl Mul for Estimate {
    type Output = Estimate;
    fn mul(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value * o.value,
            error: self.value.abs() * o.error + o.value.abs() * self.error + self.error * o.error,
        }
    }
}

impl Neg for Estimate {
    type Output = Estimate;
    fn neg(self) -> Estimate {
        Estimate { value: -self.value, error: self.error }
    }
}
