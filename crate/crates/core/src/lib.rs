//! Exact crossing statistics of pairings and the 2n-norm sequences of the
//! q-semicircular and q-circular operators.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: big integers and rationals, q-polynomials (with Laurent
//!   support), truncated power series and a configurable-precision float.
//! - [`diagrams`]: pairings, permutations, crossing numbers, connected
//!   components and exhaustive (parallel) enumeration of crossing histograms.
//! - [`formulas`]: the Touchard–Riordan and Corteel–Williams closed forms, the
//!   connected-diagram table `b(n, k)`, the fixed-`k` closed forms for
//!   parity-reversing counts and the decomposition convolution.
//! - [`norms`]: complex evaluation of the 2n-norms, Taylor coefficients about
//!   the origin, asymptotic probes and least-magnitude roots.
//!
//! All counting is exact. Floating values only appear at the very end, as
//! renderings of exact quantities.

pub mod diagrams;
pub mod error;
pub mod exact;
pub mod formulas;
pub mod norms;

pub use diagrams::{
    crossing_number, decompose, directed_crossing_number, enumerate_histogram, is_connected,
    pairing_to_permutation, permutation_to_pairing, CrossingHistogram, Decomposition, Enumerator,
    Pairing, PairingFamily, Permutation,
};
pub use error::{Error, Result};
pub use exact::{
    binomial, catalan, double_factorial_odd, factorial, series_fractional_power, HighComplex,
    HighFloat, QPolynomial, TruncatedSeries,
};
pub use formulas::{
    closed_form_r, corteel_partition_function, nc_block_multiplicity, printed_closed_form_r,
    r_via_decomposition, touchard_riordan, BTable, Multiplicity,
};
pub use norms::{
    a11_asymptote_probe, a3_limit_probe, alternating_sum_bounds_check, gamma_n, lambda_n,
    least_magnitude_root, semicircular_limit_probe, taylor_coefficients, NormSample, RootReport,
    ScaledReal, TaylorMethod,
};
