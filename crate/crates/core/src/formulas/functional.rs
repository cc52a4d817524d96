use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{factorial, QPolynomial, TruncatedSeries};

/// `F(z) - B(z F(z)^2)` through `z^order`, where `F(z) = sum_n n! z^n` and
/// `B(z) = 1 + sum_{n >= 1} b_n z^n`. `b[0]` is the constant term and must
/// be 1. A zero series means the connected totals are consistent with the
/// permutation counts.
pub fn factorial_functional_residual(
    order: usize,
    b: &[BigInt],
) -> Result<TruncatedSeries<BigRational>> {
    if b.len() <= order {
        return Err(Error::InvalidArgument(format!(
            "need b_0..b_{order}, got {} values",
            b.len()
        )));
    }
    let f = TruncatedSeries::new(
        (0..=order as u64)
            .map(|n| BigRational::from_integer(factorial(n)))
            .collect(),
        order,
    );
    let big_b = TruncatedSeries::new(
        b[..=order]
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect(),
        order,
    );
    let inner = TruncatedSeries::variable(order).mul(&f.mul(&f));
    Ok(f.sub(&big_b.compose(&inner)?))
}

/// `R(z, q) - B(z R(z, q)^2, q)` through `z^order`, with the coefficients of
/// `z^n` given as polynomials in `q`: `r_rows[n] = R_n(q)` and
/// `b_rows[n] = sum_k b(n, k) q^k`, both starting at `n = 0` (value 1).
pub fn crossing_functional_residual(
    order: usize,
    b_rows: &[QPolynomial],
    r_rows: &[QPolynomial],
) -> Result<TruncatedSeries<QPolynomial>> {
    if b_rows.len() <= order || r_rows.len() <= order {
        return Err(Error::InvalidArgument(format!(
            "need rows 0..={order} for both series"
        )));
    }
    let r = TruncatedSeries::new(r_rows[..=order].to_vec(), order);
    let big_b = TruncatedSeries::new(b_rows[..=order].to_vec(), order);
    let inner = TruncatedSeries::variable(order).mul(&r.mul(&r));
    Ok(r.sub(&big_b.compose(&inner)?))
}

/// Connected totals `b_0..b_order` with `b_0 = 1` from per-`n` row sums.
pub fn totals_with_unit(rows: &[QPolynomial]) -> Vec<BigInt> {
    std::iter::once(BigInt::one())
        .chain(rows.iter().skip(1).map(QPolynomial::eval_at_one))
        .collect()
}
