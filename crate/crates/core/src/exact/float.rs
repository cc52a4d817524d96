use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, Sign as IntSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Default mantissa precision in bits.
pub const DEFAULT_PRECISION: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Binary floating-point number with an explicit mantissa precision.
#[derive(Clone, Debug)]
pub struct HighFloat {
    value: BigFloat,
    precision: usize,
}

impl HighFloat {
    fn wrap(value: BigFloat, precision: usize) -> Self {
        HighFloat { value, precision }
    }

    pub fn zero(precision: usize) -> Self {
        Self::wrap(BigFloat::from_word(0, precision), precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::wrap(BigFloat::from_word(1, precision), precision)
    }

    pub fn from_f64(x: f64, precision: usize) -> Self {
        Self::wrap(BigFloat::from_f64(x, precision), precision)
    }

    pub fn from_i64(x: i64, precision: usize) -> Self {
        Self::from_bigint(&BigInt::from(x), precision)
    }

    /// Correctly rounded conversion of an integer.
    pub fn from_bigint(x: &BigInt, precision: usize) -> Self {
        let (sign, words) = x.to_u64_digits();
        if words.is_empty() {
            return Self::zero(precision);
        }
        let s = if sign == IntSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let e = (words.len() * WORD_BIT_SIZE) as i32;
        let mut v = BigFloat::from_words(&words, s, e);
        v.set_precision(precision, RM)
            .expect("precision within limits");
        Self::wrap(v, precision)
    }

    /// Conversion of a rational, within one ulp.
    ///
    /// The numerator is scaled so that the integer quotient carries two
    /// guard bits beyond the target precision before the final rounding.
    pub fn from_rational(x: &BigRational, precision: usize) -> Self {
        if x.is_zero() {
            return Self::zero(precision);
        }
        let num = x.numer();
        let den = x.denom();
        let shift = precision as i64 + 2 + den.bits() as i64 - num.bits() as i64 + 1;
        let scaled = if shift >= 0 {
            num.abs() << shift as usize
        } else {
            num.abs() >> (-shift) as usize
        };
        let (q, r) = scaled.div_rem(den);
        // Sticky bit keeps round-to-nearest honest on exact ties.
        let q = if r.is_zero() {
            q
        } else {
            (q << 1usize) | BigInt::from(1)
        };
        let extra = if r.is_zero() { 0 } else { 1 };
        let mut v = Self::from_bigint(&q, precision + 2 + WORD_BIT_SIZE).value;
        v = v.mul(
            &pow2(-(shift + extra), precision + 2 + WORD_BIT_SIZE),
            precision,
            RM,
        );
        if num.is_negative() {
            v = v.neg();
        }
        Self::wrap(v, precision)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn with_precision(&self, precision: usize) -> Self {
        let mut v = self.value.clone();
        v.set_precision(precision, RM)
            .expect("precision within limits");
        Self::wrap(v, precision)
    }

    fn p(&self, other: &Self) -> usize {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p(other);
        Self::wrap(self.value.add(&other.value, p, RM), p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p(other);
        Self::wrap(self.value.sub(&other.value, p, RM), p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.p(other);
        Self::wrap(self.value.mul(&other.value, p, RM), p)
    }

    pub fn div(&self, other: &Self) -> Self {
        let p = self.p(other);
        Self::wrap(self.value.div(&other.value, p, RM), p)
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.value.neg(), self.precision)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.precision)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.precision, RM), self.precision)
    }

    /// Natural logarithm; NaN for non-positive input.
    pub fn ln(&self) -> Self {
        let p = self.precision;
        with_consts(|cc| Self::wrap(self.value.ln(p, RM, cc), p))
    }

    pub fn exp(&self) -> Self {
        let p = self.precision;
        with_consts(|cc| Self::wrap(self.value.exp(p, RM, cc), p))
    }

    pub fn sin(&self) -> Self {
        let p = self.precision;
        with_consts(|cc| Self::wrap(self.value.sin(p, RM, cc), p))
    }

    pub fn cos(&self) -> Self {
        let p = self.precision;
        with_consts(|cc| Self::wrap(self.value.cos(p, RM, cc), p))
    }

    pub fn pi(precision: usize) -> Self {
        with_consts(|cc| Self::wrap(cc.pi(precision, RM), precision))
    }

    /// `self^e` for a positive base, via `exp(e ln self)`.
    pub fn pow_rational(&self, e: &BigRational) -> Self {
        if self.is_zero() {
            return if e.is_zero() {
                Self::one(self.precision)
            } else {
                self.clone()
            };
        }
        let guard = self.with_precision(self.precision + WORD_BIT_SIZE);
        let e = Self::from_rational(e, guard.precision);
        guard.ln().mul(&e).exp().with_precision(self.precision)
    }

    pub fn powi(&self, n: u64) -> Self {
        Self::wrap(
            self.value.powi(n as usize, self.precision, RM),
            self.precision,
        )
    }

    /// Angle of `(x, y)` in `(-pi, pi]`.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let p = y.p(x);
        let pi = Self::pi(p);
        if x.is_zero() {
            return match y.signum() {
                0 => Self::zero(p),
                s => {
                    let half = pi.div(&Self::from_i64(2, p));
                    if s > 0 {
                        half
                    } else {
                        half.neg()
                    }
                }
            };
        }
        let base = with_consts(|cc| y.value.div(&x.value, p, RM).atan(p, RM, cc));
        let base = Self::wrap(base, p);
        if x.signum() > 0 {
            base
        } else if y.signum() >= 0 {
            base.add(&pi)
        } else {
            base.sub(&pi)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.value.is_zero() {
            0
        } else if self.value.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            self.value.exponent().map(i64::from)
        }
    }

    /// Nearest `f64` (subject to the usual double range).
    pub fn to_f64(&self) -> f64 {
        let Some((words, _, sign, e, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        if self.value.is_zero() {
            return 0.0;
        }
        let top = *words.last().expect("nonzero mantissa") as f64;
        let next = if words.len() > 1 {
            words[words.len() - 2] as f64
        } else {
            0.0
        };
        let m = top + next / 2f64.powi(64);
        let v = m * 2f64.powi(e - 64);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Integer part, truncated toward zero.
    pub fn trunc_to_bigint(&self) -> BigInt {
        let Some((words, _, sign, e, _)) = self.value.as_raw_parts() else {
            return BigInt::zero();
        };
        if self.value.is_zero() || e <= 0 {
            return BigInt::zero();
        }
        let mut mant = BigInt::zero();
        for w in words.iter().rev() {
            mant = (mant << 64usize) + BigInt::from(*w);
        }
        let frac_bits = (words.len() * WORD_BIT_SIZE) as i64 - e as i64;
        let int = if frac_bits >= 0 {
            mant >> frac_bits as usize
        } else {
            mant << (-frac_bits) as usize
        };
        if sign == Sign::Neg {
            -int
        } else {
            int
        }
    }

    /// Decimal rendering with `digits` significant digits, `d.ddde±x` style.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        if !self.is_finite() {
            return "nan".into();
        }
        let work = self.precision + 64;
        let x = self.abs().with_precision(work);
        let ten = Self::from_i64(10, work);
        let log2 = x.exponent().unwrap_or(0) as f64;
        let mut e10 = ((log2 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
        let mut mant;
        loop {
            let shift = digits as i64 - 1 - e10;
            let scale = ten.powi(shift.unsigned_abs());
            let scaled = if shift >= 0 {
                x.mul(&scale)
            } else {
                x.div(&scale)
            };
            let half = Self::from_f64(0.5, work);
            mant = scaled.add(&half).trunc_to_bigint();
            let len = mant.to_string().len();
            if len > digits {
                e10 += 1;
            } else if len < digits {
                e10 -= 1;
            } else {
                break;
            }
        }
        let s = mant.to_string();
        let sign = if self.signum() < 0 { "-" } else { "" };
        if digits == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match self.value.cmp(&other.value) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

fn pow2(e: i64, precision: usize) -> BigFloat {
    let two = BigFloat::from_word(2, precision);
    let m = two.powi(e.unsigned_abs() as usize, precision, RM);
    if e >= 0 {
        m
    } else {
        BigFloat::from_word(1, precision).div(&m, precision, RM)
    }
}

impl PartialEq for HighFloat {
    fn eq(&self, other: &Self) -> bool {
        self.total_cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for HighFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.value.is_nan() || other.value.is_nan() {
            None
        } else {
            Some(self.total_cmp(other))
        }
    }
}

impl fmt::Display for HighFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_sci_string(digits))
    }
}

/// Complex number with [`HighFloat`] parts.
#[derive(Clone, Debug, PartialEq)]
pub struct HighComplex {
    pub re: HighFloat,
    pub im: HighFloat,
}

impl HighComplex {
    pub fn new(re: HighFloat, im: HighFloat) -> Self {
        HighComplex { re, im }
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(HighFloat::zero(precision), HighFloat::zero(precision))
    }

    pub fn one(precision: usize) -> Self {
        Self::new(HighFloat::one(precision), HighFloat::zero(precision))
    }

    pub fn from_f64(re: f64, im: f64, precision: usize) -> Self {
        Self::new(
            HighFloat::from_f64(re, precision),
            HighFloat::from_f64(im, precision),
        )
    }

    pub fn from_bigint(x: &BigInt, precision: usize) -> Self {
        Self::new(
            HighFloat::from_bigint(x, precision),
            HighFloat::zero(precision),
        )
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, precision: usize) -> Self {
        Self::new(
            HighFloat::from_rational(re, precision),
            HighFloat::from_rational(im, precision),
        )
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, precision: usize) -> Self {
        Self::new(
            self.re.with_precision(precision),
            self.im.with_precision(precision),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn scale(&self, s: &HighFloat) -> Self {
        Self::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&d);
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&d);
        Self::new(re, im)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.precision());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> HighFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> HighFloat {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Principal phase in `[-pi, pi)`.
    pub fn phase(&self) -> HighFloat {
        let a = HighFloat::atan2(&self.im, &self.re);
        let pi = HighFloat::pi(a.precision());
        if a >= pi {
            a.sub(&pi).sub(&pi)
        } else {
            a
        }
    }

    pub fn from_polar(r: &HighFloat, theta: &HighFloat) -> Self {
        Self::new(r.mul(&theta.cos()), r.mul(&theta.sin()))
    }

    /// `|z|^(1/k) exp(i phase(z) / k)` with the phase taken in `[-pi, pi)`.
    pub fn principal_root(&self, k: u64) -> Self {
        let p = self.precision();
        if self.is_zero() {
            return Self::zero(p);
        }
        let inv = BigRational::new(1.into(), BigInt::from(k));
        let r = self.abs().pow_rational(&inv);
        let theta = self.phase().div(&HighFloat::from_i64(k as i64, p));
        Self::from_polar(&r, &theta)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn integer_round_trip() {
        let big: BigInt = "123456789012345678901234567890123".parse().unwrap();
        let f = HighFloat::from_bigint(&big, 256);
        assert_eq!(f.trunc_to_bigint(), big);
        assert_eq!(
            HighFloat::from_bigint(&(-&big), 256).trunc_to_bigint(),
            -big
        );
        assert_eq!(HighFloat::from_i64(-7, 64).to_f64(), -7.0);
    }

    #[test]
    fn rational_conversion_is_tight() {
        let third = HighFloat::from_rational(&rat(1, 3), 256);
        let back = third.mul(&HighFloat::from_i64(3, 256));
        let err = back.sub(&HighFloat::one(256)).abs();
        assert!(err.is_zero() || err.exponent().unwrap() < -250);
        assert!((HighFloat::from_rational(&rat(-22, 7), 128).to_f64() + 22.0 / 7.0).abs() < 1e-15);
        // 2^-600 survives.
        let tiny = BigRational::new(1.into(), BigInt::from(1) << 600usize);
        assert_eq!(HighFloat::from_rational(&tiny, 64).exponent(), Some(-599));
    }

    #[test]
    fn transcendental_functions() {
        let two = HighFloat::from_i64(2, 256);
        assert!((two.ln().to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((two.sqrt().to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        let root = HighFloat::from_i64(6, 256).pow_rational(&rat(1, 6));
        assert!((root.to_f64() - 1.3480061545972777).abs() < 1e-15);
        let pi = HighFloat::pi(256);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn phase_is_half_open() {
        let p = 128;
        let neg = HighComplex::from_f64(-1.0, 0.0, p);
        assert!((neg.phase().to_f64() + std::f64::consts::PI).abs() < 1e-15);
        let up = HighComplex::from_f64(0.0, 1.0, p);
        assert!((up.phase().to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let q3 = HighComplex::from_f64(-1.0, -1.0, p);
        assert!((q3.phase().to_f64() + 0.75 * std::f64::consts::PI).abs() < 1e-15);
        // Square root of -4 on the principal branch is -2i.
        let r = HighComplex::from_f64(-4.0, 0.0, p).principal_root(2);
        let (re, im) = r.to_f64_pair();
        assert!(re.abs() < 1e-15 && (im + 2.0).abs() < 1e-15);
    }

    #[test]
    fn scientific_rendering() {
        let x = HighFloat::from_rational(&rat(1, 3), 256);
        assert_eq!(x.to_sci_string(5), "3.3333e-1");
        assert_eq!(HighFloat::from_i64(-12345, 64).to_sci_string(3), "-1.23e4");
        assert_eq!(HighFloat::from_i64(999_999, 64).to_sci_string(3), "1.00e6");
    }
}
