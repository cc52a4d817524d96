use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPolynomial;
use crate::error::{Error, Result};

/// Commutative ring usable as a series coefficient.
pub trait Coefficient: Clone + Debug + PartialEq + Zero + One + Send + Sync {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn from_bigint(x: &BigInt) -> Self;
}

impl Coefficient for BigRational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_bigint(x: &BigInt) -> Self {
        BigRational::from_integer(x.clone())
    }
}

impl Coefficient for QPolynomial {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn from_bigint(x: &BigInt) -> Self {
        QPolynomial::constant(x.clone())
    }
}

/// Power series in `z` known exactly through `z^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C: Coefficient = BigRational> {
    coeffs: Vec<C>,
    order: usize,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Pads with zeros or drops terms beyond `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order.min(other.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let c = (0..=n)
            .map(|i| self.coeffs[i].add_ref(&other.coeffs[i]))
            .collect();
        Self::new(c, n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let c = (0..=n)
            .map(|i| self.coeffs[i].sub_ref(&other.coeffs[i]))
            .collect();
        Self::new(c, n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut c = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] = c[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(c, n)
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::new(
            self.coeffs.iter().map(|c| c.mul_ref(s)).collect(),
            self.order,
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self(inner(z))`; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "composition needs an inner series with zero constant term".into(),
            ));
        }
        let n = self.common_order(inner);
        let mut acc = Self::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] = acc.coeffs[0].add_ref(c);
        }
        Ok(acc)
    }
}

impl TruncatedSeries<BigRational> {
    pub fn from_integers(values: &[i64], order: usize) -> Self {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
            order,
        )
    }

    /// `exp(f)` for `f(0) = 0`, from `g' = f' g`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs a zero constant term".into()));
        }
        let n = self.order;
        let mut g = vec![BigRational::zero(); n + 1];
        g[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[m - k] * BigRational::from_integer(k.into());
                }
            }
            g[m] = acc / BigRational::from_integer(m.into());
        }
        Ok(Self::new(g, n))
    }

    /// `log(f)` for `f(0) = 1`, from `f g' = f'`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let n = self.order;
        let mut g = vec![BigRational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * BigRational::from_integer(m.into());
            for k in 1..m {
                if !self.coeffs[m - k].is_zero() {
                    acc -= &g[k] * &self.coeffs[m - k] * BigRational::from_integer(k.into());
                }
            }
            g[m] = acc / BigRational::from_integer(m.into());
        }
        Ok(Self::new(g, n))
    }
}

/// `f^e = exp(e log f)` for `f(0) = 1`.
pub fn series_fractional_power(
    f: &TruncatedSeries<BigRational>,
    e: &BigRational,
) -> Result<TruncatedSeries<BigRational>> {
    if !f.coeff(0).is_one() {
        return Err(Error::Domain(format!(
            "fractional power needs constant term 1, got {}",
            f.coeff(0)
        )));
    }
    f.log()?.scale(e).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorial;
    use crate::exact::falling_factorial;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn integer_power_of_linear() {
        let f = TruncatedSeries::from_integers(&[1, 1], 4);
        let sq = series_fractional_power(&f, &r(2, 1)).unwrap();
        assert_eq!(sq, TruncatedSeries::from_integers(&[1, 2, 1], 4));
    }

    #[test]
    fn square_root_matches_binomial_series() {
        let order = 12;
        let f = TruncatedSeries::from_integers(&[1, 1], order);
        let half = r(1, 2);
        let s = series_fractional_power(&f, &half).unwrap();
        for k in 0..=order {
            let expected =
                falling_factorial(&half, k) / BigRational::from_integer(factorial(k as u64));
            assert_eq!(s.coeff(k), &expected, "coefficient {k}");
        }
        assert_eq!(s.coeff(2), &r(-1, 8));
        assert_eq!(s.coeff(3), &r(1, 16));
    }

    #[test]
    fn unit_series_is_fixed() {
        let one = TruncatedSeries::one(6);
        assert_eq!(series_fractional_power(&one, &r(-7, 3)).unwrap(), one);
    }

    #[test]
    fn rejects_bad_constant_terms() {
        let f = TruncatedSeries::from_integers(&[2, 1], 3);
        assert!(series_fractional_power(&f, &r(1, 2)).is_err());
        assert!(f.exp().is_err());
        assert!(f.compose(&f).is_err());
    }

    #[test]
    fn composition_with_geometric_series() {
        // 1/(1-z) composed with z/(1+z)... gives 1 + z.
        let order = 8;
        let geom = TruncatedSeries::from_integers(&[1; 9], order);
        let alt: Vec<i64> = (0..9)
            .map(|i| {
                if i == 0 {
                    0
                } else if i % 2 == 1 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let inner = TruncatedSeries::from_integers(&alt, order);
        assert_eq!(
            geom.compose(&inner).unwrap(),
            TruncatedSeries::from_integers(&[1, 1], order)
        );
    }

    #[test]
    fn polynomial_coefficients() {
        let q = QPolynomial::from_i64s(&[0, 1]);
        let f = TruncatedSeries::new(vec![QPolynomial::one(), q.clone()], 3);
        let sq = f.mul(&f);
        assert_eq!(sq.coeff(1), &QPolynomial::from_i64s(&[0, 2]));
        assert_eq!(sq.coeff(2), &QPolynomial::from_i64s(&[0, 0, 1]));
    }

    fn unit_series(tail: Vec<(i64, i64)>) -> TruncatedSeries<BigRational> {
        let mut c = vec![BigRational::one()];
        c.extend(tail.into_iter().map(|(n, d)| r(n, d)));
        let order = c.len() - 1;
        TruncatedSeries::new(c, order)
    }

    proptest! {
        #[test]
        fn exp_inverts_log(tail in prop::collection::vec((-9i64..9, 1i64..5), 1..7)) {
            let f = unit_series(tail);
            prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
        }

        #[test]
        fn fractional_power_round_trip(
            tail in prop::collection::vec((-9i64..9, 1i64..5), 1..7),
            num in prop_oneof![-5i64..-1, 1i64..6],
            den in 1i64..6,
        ) {
            let f = unit_series(tail);
            let a = r(num, den);
            let g = series_fractional_power(&f, &a).unwrap();
            let back = series_fractional_power(&g, &(BigRational::one() / a)).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
