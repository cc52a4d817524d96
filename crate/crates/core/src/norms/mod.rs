//! Norm sequences at complex arguments, their Taylor expansions and the
//! roots that bound their analyticity.

mod roots;
mod sample;
mod taylor;

pub use roots::{
    least_magnitude_root, least_modulus, RootReport, ROOT_ITERATION_CAP, ROOT_TOLERANCE,
};
pub use sample::{
    alternating_sum, alternating_sum_bounds_check, gamma_n, gamma_n_factored, lambda_n,
    lambda_n_with, polynomial_value, semicircular_limit_probe, semicircular_limit_probe_with,
    touchard_riordan_value, BoundsCheck, Branch, NormSample,
};
pub use taylor::{
    a11_asymptote_probe, a11_asymptote_probe_from, a11_value, a3_limit_probe, crossing_counts,
    origin_value, taylor_coefficients, taylor_coefficients_from_counts, CountSource, ScaledReal,
    TaylorMethod,
};
