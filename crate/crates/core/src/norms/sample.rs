use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagrams::{Enumerator, PairingFamily};
use crate::error::{Error, Result};
use crate::exact::{binomial, double_factorial_odd, HighComplex, HighFloat, QPolynomial};

/// Largest working precision tried before a value is declared zero.
const MAX_PRECISION: usize = 1 << 15;

/// A 2n-th root `|P(q)|^(1/2n) exp(i phi / 2n)` of a crossing polynomial,
/// with `phi` the phase of `P(q)` in `[-pi, pi)`.
#[derive(Clone, Debug)]
pub struct NormSample {
    pub n: usize,
    pub q: HighComplex,
    /// `P(q)`, the value under the root.
    pub inner: HighComplex,
    /// Phase of `inner` in `[-pi, pi)`.
    pub phase: HighFloat,
    pub value: HighComplex,
}

impl NormSample {
    fn new(n: usize, q: &HighComplex, inner: HighComplex) -> Self {
        let p = q.precision();
        let inner = inner.with_precision(p);
        NormSample {
            n,
            q: q.clone(),
            phase: inner.phase(),
            value: inner.principal_root(2 * n as u64),
            inner,
        }
    }
}

/// `sum_j c_j q^(e_j)` over increasing exponents, retried at higher
/// precision while cancellation eats more than half the mantissa. Exact zero
/// at the precision cap is reported as `None`.
pub(crate) fn evaluate_sparse(terms: &[(u64, BigInt)], q: &HighComplex) -> Option<HighComplex> {
    let target = q.precision();
    let mut prec = target + 64;
    loop {
        let z = q.with_precision(prec);
        let mut acc = HighComplex::zero(prec);
        let mut power = HighComplex::one(prec);
        let mut at = 0u64;
        let mut biggest: Option<i64> = None;
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            power = power.mul(&z.powi(e - at));
            at = *e;
            let term = power.scale(&HighFloat::from_bigint(c, prec));
            if let Some(x) = magnitude_exponent(&term) {
                biggest = Some(biggest.map_or(x, |b| b.max(x)));
            }
            acc = acc.add(&term);
        }
        let Some(big) = biggest else {
            return None;
        };
        match magnitude_exponent(&acc) {
            Some(got) if (big - got) < (prec - target) as i64 => {
                return Some(acc.with_precision(target))
            }
            _ if prec >= MAX_PRECISION => {
                return magnitude_exponent(&acc).map(|_| acc.with_precision(target))
            }
            _ => prec *= 2,
        }
    }
}

fn magnitude_exponent(z: &HighComplex) -> Option<i64> {
    match (z.re.exponent(), z.im.exponent()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
    }
}

/// Nonzero coefficients of `sum_{k=-n}^{n} (-1)^k q^{k(k-1)/2} C(2n, n+k)`,
/// folding `k` with `1 - k` (they share the exponent).
pub(crate) fn alternating_sum_terms(n: usize) -> Vec<(u64, BigInt)> {
    let two_n = 2 * n as u64;
    let n_i = n as i64;
    let mut terms = Vec::with_capacity(n + 1);
    for k in 1..=n_i {
        let e = (k * (k - 1) / 2) as u64;
        let c = binomial(two_n, n_i + k) - binomial(two_n, n_i + k - 1);
        terms.push((e, if k % 2 == 0 { c } else { -c }));
    }
    let sign = if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    terms.push(((n * (n + 1) / 2) as u64, sign));
    terms
}

fn polynomial_terms(p: &QPolynomial) -> Result<Vec<(u64, BigInt)>> {
    Ok(p.to_dense()?
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u64, c))
        .collect())
}

fn is_exactly_one(q: &HighComplex) -> bool {
    q.im.is_zero() && q.re == HighFloat::one(q.precision())
}

/// The alternating binomial sum at `q` (the crossing polynomial times
/// `(1 - q)^n`).
pub fn alternating_sum(n: usize, q: &HighComplex) -> HighComplex {
    evaluate_sparse(&alternating_sum_terms(n), q)
        .unwrap_or_else(|| HighComplex::zero(q.precision()))
}

/// Crossing polynomial of all pairings at a complex point, through the
/// alternating-sum closed form.
pub fn touchard_riordan_value(n: usize, q: &HighComplex) -> Result<HighComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let p = q.precision();
    if is_exactly_one(q) {
        return Ok(HighComplex::from_bigint(&double_factorial_odd(n as u64), p));
    }
    let num = evaluate_sparse(&alternating_sum_terms(n), q)
        .ok_or_else(|| Error::SingularPoint(format!("{} + {}i", q.re, q.im)))?;
    let one_minus = HighComplex::one(p + 64).sub(&q.with_precision(p + 64));
    Ok(num
        .with_precision(p + 64)
        .div(&one_minus.powi(n as u64))
        .with_precision(p))
}

/// Crossing polynomial `p` at `q`; vanishing values are errors.
pub fn polynomial_value(p: &QPolynomial, q: &HighComplex) -> Result<HighComplex> {
    evaluate_sparse(&polynomial_terms(p)?, q)
        .ok_or_else(|| Error::SingularPoint(format!("{} + {}i", q.re, q.im)))
}

/// 2n-norm sequence of the q-semicircular operator, extended to complex `q`.
pub fn gamma_n(n: usize, q: &HighComplex) -> Result<NormSample> {
    let t = touchard_riordan_value(n, q)?;
    Ok(NormSample::new(n, q, t))
}

/// 2n-norm sequence of the q-circular operator, with the parity-reversing
/// crossing polynomial obtained by enumeration.
pub fn lambda_n(n: usize, q: &HighComplex) -> Result<NormSample> {
    let r = Enumerator::default()
        .histogram(n, PairingFamily::ParityReversing)?
        .to_polynomial();
    lambda_n_with(n, &r, q)
}

/// As [`lambda_n`] with the polynomial supplied by the caller.
pub fn lambda_n_with(n: usize, r: &QPolynomial, q: &HighComplex) -> Result<NormSample> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(NormSample::new(n, q, polynomial_value(r, q)?))
}

/// How the 2n-th root of the crossing polynomial is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Branch {
    /// Principal root of the polynomial value itself.
    #[default]
    Principal,
    /// Principal root of the alternating sum over the principal square root
    /// of `1 - q`; analytic wherever the sum stays off the negative axis.
    Factored,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Principal => "principal",
            Branch::Factored => "factored",
        }
    }
}

/// [`gamma_n`] with the root taken through the alternating sum.
pub fn gamma_n_factored(n: usize, q: &HighComplex) -> Result<HighComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let p = q.precision();
    let num = evaluate_sparse(&alternating_sum_terms(n), q)
        .ok_or_else(|| Error::SingularPoint(format!("{} + {}i", q.re, q.im)))?;
    let root = HighComplex::one(p).sub(q).principal_root(2);
    Ok(num.principal_root(2 * n as u64).div(&root))
}

/// `|gamma_n(q) - 2 / sqrt(1 - q)|` for each `n` in the grid.
pub fn semicircular_limit_probe(
    q: &HighComplex,
    grid: &[usize],
) -> Result<Vec<(usize, HighFloat)>> {
    semicircular_limit_probe_with(q, grid, Branch::Principal)
}

pub fn semicircular_limit_probe_with(
    q: &HighComplex,
    grid: &[usize],
    branch: Branch,
) -> Result<Vec<(usize, HighFloat)>> {
    let p = q.precision();
    if q.abs() >= HighFloat::one(p) {
        return Err(Error::Domain("the limit needs |q| < 1".into()));
    }
    let root = HighComplex::one(p).sub(q).principal_root(2);
    let target = HighComplex::from_f64(2.0, 0.0, p).div(&root);
    grid.iter()
        .map(|&n| {
            let v = match branch {
                Branch::Principal => gamma_n(n, q)?.value,
                Branch::Factored => gamma_n_factored(n, q)?,
            };
            Ok((n, v.sub(&target).abs()))
        })
        .collect()
}

/// The two-sided bound on the alternating binomial sum at `q`.
#[derive(Clone, Debug)]
pub struct BoundsCheck {
    /// `C(2n, n) - C(2n, n+1) - 2 (1 + |q|)^(2n+1)`.
    pub lower: HighFloat,
    /// Modulus of the alternating sum.
    pub mid: HighFloat,
    /// `(2n + 1) C(2n, n)`.
    pub upper: HighFloat,
    pub ok: bool,
}

pub fn alternating_sum_bounds_check(n: usize, q: &HighComplex) -> Result<BoundsCheck> {
    let p = q.precision();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if q.abs() >= HighFloat::one(p) {
        return Err(Error::Domain("the bound needs |q| < 1".into()));
    }
    let two_n = 2 * n as u64;
    let central = binomial(two_n, n as i64);
    let lower = HighFloat::from_bigint(&(&central - binomial(two_n, n as i64 + 1)), p)
        .sub(&HighFloat::from_i64(2, p).mul(&HighFloat::one(p).add(&q.abs()).powi(two_n + 1)));
    let upper = HighFloat::from_bigint(&(central * (two_n + 1)), p);
    let mid = alternating_sum(n, q).abs();
    let ok = lower <= mid && mid <= upper;
    Ok(BoundsCheck {
        lower,
        mid,
        upper,
        ok,
    })
}
