use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::float::HighComplex;
use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with big-integer coefficients.
///
/// `coeffs[i]` is the coefficient of `q^(offset + i)`. Leading and trailing
/// zeros are always trimmed and the zero polynomial has no coefficients and
/// offset 0, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    /// Dense polynomial from coefficients, constant term first.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self::from_laurent(0, coeffs)
    }

    pub fn from_laurent(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = QPolynomial { offset, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, exponent: i64) -> Self {
        Self::from_laurent(exponent, vec![c.into()])
    }

    /// The q-integer `[l]_q = 1 + q + ... + q^(l-1)`; `[0]_q = 0`.
    pub fn q_integer(l: usize) -> Self {
        Self::from_coeffs(vec![BigInt::one(); l])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Raw trimmed coefficients starting at `q^offset`.
    pub fn laurent_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.offset + self.coeffs.len() as i64 - 1)
        }
    }

    /// True when no negative power of `q` survives.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.is_empty() || self.offset >= 0
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        let i = exponent - self.offset;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Dense coefficients from `q^0` to `q^degree`. Fails when a negative
    /// power has not cancelled.
    pub fn to_dense(&self) -> Result<Vec<BigInt>> {
        if !self.is_polynomial() {
            return Err(Error::Internal(format!(
                "negative power q^{} survives in a value exposed as a polynomial",
                self.offset
            )));
        }
        let mut out = vec![BigInt::zero(); self.offset.max(0) as usize];
        out.extend(self.coeffs.iter().cloned());
        Ok(out)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        QPolynomial {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_laurent(self.offset, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact value at a rational point. Negative powers require `x != 0`.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if x.is_zero() && self.offset < 0 {
            return Err(Error::SingularPoint("0".into()));
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        let shift = if self.offset >= 0 {
            num_traits::pow(x.clone(), self.offset as usize)
        } else {
            num_traits::pow(x.recip(), (-self.offset) as usize)
        };
        Ok(acc * shift)
    }

    /// Value at a complex point, by Horner's rule at the point's precision.
    pub fn eval_complex(&self, z: &HighComplex) -> HighComplex {
        let prec = z.precision();
        let mut acc = HighComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&HighComplex::from_bigint(c, prec));
        }
        if self.offset >= 0 {
            acc.mul(&z.powi(self.offset as u64))
        } else {
            acc.div(&z.powi((-self.offset) as u64))
        }
    }

    /// Divide by `(1 - q)`, returning quotient and remainder (`= self(1)`).
    /// Only defined for polynomials.
    pub fn div_one_minus_q(&self) -> Result<(QPolynomial, BigInt)> {
        let mut dense = self.to_dense()?;
        let rem = divide_dense_by_q_minus_one(&mut dense);
        // (1 - q) = -(q - 1)
        for c in dense.iter_mut() {
            *c = -std::mem::take(c);
        }
        Ok((QPolynomial::from_coeffs(dense), rem))
    }

    /// Divide by `(1 - q)^times`, checking that every intermediate remainder
    /// vanishes. The failing pass is reported on a nonzero remainder.
    pub fn div_one_minus_q_pow_exact(&self, times: usize) -> Result<QPolynomial> {
        let mut dense = self.to_dense()?;
        for pass in 0..times {
            let rem = divide_dense_by_q_minus_one(&mut dense);
            if !rem.is_zero() {
                return Err(Error::Internal(format!(
                    "division by (1 - q) left remainder {rem} on pass {}",
                    pass + 1
                )));
            }
        }
        if times % 2 == 1 {
            for c in dense.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        Ok(QPolynomial::from_coeffs(dense))
    }
}

/// In-place synthetic division by `(q - 1)`: on return `dense` holds the
/// quotient and the remainder is returned.
fn divide_dense_by_q_minus_one(dense: &mut Vec<BigInt>) -> BigInt {
    if dense.is_empty() {
        return BigInt::zero();
    }
    // Suffix sums: after the loop dense[j] = sum_{i >= j} c_i.
    for j in (0..dense.len() - 1).rev() {
        let (lo, hi) = dense.split_at_mut(j + 1);
        lo[j] += &hi[0];
    }
    let rem = dense.remove(0);
    rem
}

impl Zero for QPolynomial {
    fn zero() -> Self {
        QPolynomial::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QPolynomial {
    fn one() -> Self {
        QPolynomial::constant(1)
    }
}

impl<'a> Add<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &'a QPolynomial) -> QPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = self.degree().unwrap().max(rhs.degree().unwrap());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.offset - lo) as usize + i] += c;
        }
        QPolynomial::from_laurent(lo, coeffs)
    }
}

impl<'a> Sub<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &'a QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &'a QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_laurent(self.offset + rhs.offset, coeffs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $f(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    #[test]
    fn trimming_and_zero() {
        let p = QPolynomial::from_laurent(-2, vec![0.into(), 0.into(), 3.into(), 0.into()]);
        assert_eq!(p.offset(), 0);
        assert_eq!(p.degree(), Some(0));
        assert!(QPolynomial::from_i64s(&[0, 0]).is_zero());
        assert_eq!(QPolynomial::from_i64s(&[0, 0]).offset(), 0);
    }

    #[test]
    fn laurent_cancellation() {
        let a = QPolynomial::monomial(2, -3) + poly(&[1, 1]);
        let b = QPolynomial::monomial(-2, -3);
        let s = &a + &b;
        assert!(s.is_polynomial());
        assert_eq!(s, poly(&[1, 1]));
        assert!(!a.is_polynomial());
        assert!(a.to_dense().is_err());
    }

    #[test]
    fn division_by_one_minus_q() {
        // (1 - q)^2 (q + 2) = 2 - 3q + q^3
        let n = poly(&[2, -3, 0, 1]);
        assert_eq!(n.div_one_minus_q_pow_exact(2).unwrap(), poly(&[2, 1]));
        let (quot, rem) = poly(&[1, 1]).div_one_minus_q().unwrap();
        assert_eq!(rem, BigInt::from(2));
        assert_eq!(quot, poly(&[-1]));
        assert!(poly(&[1, 1]).div_one_minus_q_pow_exact(1).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[5, 6, 3, 1]).to_string(), "5 + 6q + 3q^2 + q^3");
        assert_eq!(poly(&[0, -1, 0, 2]).to_string(), "-q + 2q^3");
        assert_eq!(QPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn q_integer_power() {
        // [2]^2 = 1 + 2q + q^2
        assert_eq!(QPolynomial::q_integer(2).pow(2), poly(&[1, 2, 1]));
        assert!(QPolynomial::q_integer(0).is_zero());
    }

    proptest! {
        #[test]
        fn product_degree_and_evaluation(
            a in prop::collection::vec(-50i64..50, 1..8),
            b in prop::collection::vec(-50i64..50, 1..8),
            num in -7i64..7,
            den in 1i64..7,
        ) {
            let (p, q) = (poly(&a), poly(&b));
            let pq = &p * &q;
            if let (Some(dp), Some(dq)) = (p.degree(), q.degree()) {
                prop_assert_eq!(pq.degree(), Some(dp + dq));
            } else {
                prop_assert!(pq.is_zero());
            }
            let x = BigRational::new(num.into(), den.into());
            prop_assert_eq!(
                pq.eval_rational(&x).unwrap(),
                p.eval_rational(&x).unwrap() * q.eval_rational(&x).unwrap()
            );
        }

        #[test]
        fn multiply_then_divide_round_trips(
            a in prop::collection::vec(-50i64..50, 1..8),
            times in 0usize..5,
        ) {
            let p = poly(&a);
            let factor = poly(&[1, -1]).pow(times as u32);
            prop_assert_eq!((&p * &factor).div_one_minus_q_pow_exact(times).unwrap(), p);
        }
    }
}
