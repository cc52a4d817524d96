//! Exact arithmetic shared by every other module.

mod combinatorics;
mod float;
mod poly;
mod series;

pub use combinatorics::{
    binomial, catalan, double_factorial_odd, factorial, falling_factorial, gaussian_eval,
    multinomial_denominator,
};
pub use float::{HighComplex, HighFloat, DEFAULT_PRECISION};
pub use poly::QPolynomial;
pub use series::{series_fractional_power, Coefficient, TruncatedSeries};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
