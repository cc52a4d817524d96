use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `n!` by direct product.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient with the convention `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // acc = C(n - k + i, i) after this step, so the division is exact.
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// The Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n as i64) / (n + 1)
}

/// The product `(2n - 1)(2n - 3)...3·1`, the number of pairings of `2n` points.
pub fn double_factorial_odd(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

/// Generalised falling factorial `x (x - 1) ... (x - m + 1)`; empty product is 1.
pub fn falling_factorial(x: &BigRational, m: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..m {
        acc *= &term;
        term -= BigRational::one();
    }
    acc
}

/// `prod_i mult_i!` for a list of multiplicities.
pub fn multinomial_denominator(multiplicities: impl IntoIterator<Item = u64>) -> BigInt {
    multiplicities
        .into_iter()
        .fold(BigInt::one(), |acc, m| acc * factorial(m))
}

/// Evaluate `sum_j coeffs[j] z^j` at a Gaussian rational `z = re + i im`,
/// returning `(re, im)` exactly.
pub fn gaussian_eval(
    coeffs: &[BigInt],
    re: &BigRational,
    im: &BigRational,
) -> (BigRational, BigRational) {
    let mut acc_re = BigRational::zero();
    let mut acc_im = BigRational::zero();
    for c in coeffs.iter().rev() {
        let next_re = &acc_re * re - &acc_im * im + BigRational::from_integer(c.clone());
        let next_im = &acc_re * im + &acc_im * re;
        acc_re = next_re;
        acc_im = next_im;
    }
    (acc_re, acc_im)
}
