//! Scalar means, the gamma function, and adaptive quadrature.

mod gamma;
mod interval;
mod means;
mod quad;

pub use gamma::{gamma, GAMMA_REL_ACCURACY};
pub use interval::Interval;
pub use means::{
    arithmetic_mean, geometric_mean, log_mean_of_powers, log_mean_of_powers_minus_lower,
    logarithmic_mean, power_difference,
};
pub use quad::{
    integrate, integrate_power_singular, sign_change_points,
    try_integrate, try_integrate_breakpoints, try_integrate_power_weight, Endpoint,
    QuadratureConfig, QuadratureError, QuadratureResult,
};
