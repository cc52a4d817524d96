use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, QPolynomial};

/// `T_n(q)`, the crossing generating polynomial of all pairings of `2n`
/// points, from the alternating binomial sum over `(1 - q)^n`.
///
/// The numerator is divided by `(1 - q)` one pass at a time and every
/// remainder is required to vanish.
pub fn touchard_riordan(n: usize) -> Result<QPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    touchard_riordan_numerator(n)
        .div_one_minus_q_pow_exact(n)
        .map_err(|e| Error::Internal(format!("crossing polynomial at n = {n}: {e}")))
}

/// `sum_{k=-n}^{n} (-1)^k q^{k(k-1)/2} C(2n, n + k)`.
pub fn touchard_riordan_numerator(n: usize) -> QPolynomial {
    let n_i = n as i64;
    let top = (n_i + 1) * n_i / 2;
    let mut coeffs = vec![BigInt::zero(); top as usize + 1];
    for k in -n_i..=n_i {
        let e = (k * (k - 1) / 2) as usize;
        let c = binomial(2 * n as u64, n_i + k);
        if k % 2 == 0 {
            coeffs[e] += c;
        } else {
            coeffs[e] -= c;
        }
    }
    QPolynomial::from_coeffs(coeffs)
}

/// Multiplies a dense coefficient vector by `[m]_q = 1 + q + ... + q^(m-1)`.
fn times_q_integer(p: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(p.len() + m - 1);
    let mut window = BigInt::zero();
    for j in 0..p.len() + m - 1 {
        if j < p.len() {
            window += &p[j];
        }
        if j >= m {
            window -= &p[j - m];
        }
        out.push(window.clone());
    }
    out
}

/// Sum over permutations of `q^(directed crossings)`, from the double
/// alternating sum over q-integer powers.
///
/// Terms are grouped by `m = k - i`, so each power `[m]_q^n` is formed once
/// and multiplied by a sparse Laurent factor. The negative powers must cancel;
/// a survivor is reported as an internal error.
pub fn corteel_partition_function(n: usize) -> Result<QPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let nn = n as i64;
    let offset = nn * nn;
    let len = (2 * nn * nn + nn + 1) as usize;
    let mut acc = vec![BigInt::zero(); len];
    let n64 = n as u64;
    for m in 1..=n {
        let power: Vec<BigInt> = (0..n).fold(vec![BigInt::one()], |p, _| times_q_integer(&p, m));
        let m_i = m as i64;
        // Sparse factor: sum_i (-1)^i q^{-(i+m) m} (C(n,i) q^m + C(n,i-1)).
        let mut sparse: Vec<(i64, BigInt)> = Vec::new();
        for i in 0..=(nn - m_i) {
            let k = i + m_i;
            let base = -k * m_i;
            let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
            let a = binomial(n64, i) * sign;
            let b = binomial(n64, i - 1) * sign;
            if !a.is_zero() {
                sparse.push((base + m_i, a));
            }
            if !b.is_zero() {
                sparse.push((base, b));
            }
        }
        for (e, c) in &sparse {
            for (j, pj) in power.iter().enumerate() {
                if pj.is_zero() {
                    continue;
                }
                let idx = (e + j as i64 + offset) as usize;
                acc[idx] += c * pj;
            }
        }
    }
    let poly = QPolynomial::from_laurent(-offset, acc);
    if !poly.is_polynomial() {
        return Err(Error::Internal(format!(
            "negative power q^{} survives at n = {n}",
            poly.offset()
        )));
    }
    Ok(poly)
}
