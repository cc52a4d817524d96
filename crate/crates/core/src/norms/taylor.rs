use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diagrams::{Enumerator, PairingFamily};
use crate::error::{Error, Result};
use crate::exact::{
    catalan, factorial, falling_factorial, HighFloat, TruncatedSeries, DEFAULT_PRECISION,
};
use crate::formulas::{closed_form_r, printed_closed_form_r, CLOSED_FORM_MAX_K};

/// `rational_part * prefactor_base^prefactor_exponent`, kept exact with a
/// float rendering alongside.
#[derive(Clone, Debug)]
pub struct ScaledReal {
    pub rational_part: BigRational,
    pub prefactor_base: BigRational,
    pub prefactor_exponent: BigRational,
    pub float_value: HighFloat,
}

impl ScaledReal {
    pub fn new(
        rational_part: BigRational,
        prefactor_base: BigRational,
        prefactor_exponent: BigRational,
        precision: usize,
    ) -> Self {
        let float_value = HighFloat::from_rational(&rational_part, precision).mul(
            &HighFloat::from_rational(&prefactor_base, precision).pow_rational(&prefactor_exponent),
        );
        ScaledReal {
            rational_part,
            prefactor_base,
            prefactor_exponent,
            float_value,
        }
    }
}

impl fmt::Display for ScaledReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * ({})^({})",
            self.rational_part, self.prefactor_base, self.prefactor_exponent
        )
    }
}

/// Algorithm for the Taylor coefficients of `P(q)^(1/2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaylorMethod {
    /// Sum over integer partitions of `k` with generalized falling factorials.
    FaaDiBruno,
    /// `exp((1/2n) log(P / P(0)))` in exact truncated series.
    SeriesLog,
}

impl TaylorMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TaylorMethod::FaaDiBruno => "faa",
            TaylorMethod::SeriesLog => "series",
        }
    }
}

/// Where the counts `r(n, k)` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CountSource {
    /// Closed forms consistent with enumeration for `k <= 11`, enumeration
    /// beyond that.
    #[default]
    Enumerated,
    /// The published closed forms, `k <= 11` only.
    Printed,
}

/// `r(n, 0..=max_k)` for the parity-reversing crossing polynomial.
pub fn crossing_counts(n: usize, max_k: usize, source: CountSource) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if max_k <= CLOSED_FORM_MAX_K {
        let f = match source {
            CountSource::Enumerated => closed_form_r,
            CountSource::Printed => printed_closed_form_r,
        };
        return (0..=max_k).map(|k| f(n, k)).collect();
    }
    if source == CountSource::Printed {
        return Err(Error::Unsupported(format!(
            "published closed forms stop at k = {CLOSED_FORM_MAX_K}"
        )));
    }
    let h = Enumerator::default()
        .histogram(n, PairingFamily::ParityReversing)
        .map_err(|e| match e {
            Error::CeilingExceeded { .. } => Error::Unsupported(format!(
                "k = {max_k} needs enumerated counts at n = {n}: {e}"
            )),
            other => other,
        })?;
    Ok((0..=max_k).map(|k| h.get(k)).collect())
}

/// Taylor coefficients `a_0..a_max_k` of `lambda_n(q) = R_n(q)^(1/2n)` about 0.
pub fn taylor_coefficients(
    n: usize,
    max_k: usize,
    method: TaylorMethod,
) -> Result<Vec<ScaledReal>> {
    let counts = crossing_counts(n, max_k, CountSource::Enumerated)?;
    taylor_coefficients_from_counts(n, &counts, method, DEFAULT_PRECISION)
}

/// As [`taylor_coefficients`] for explicit counts `r(n, 0), r(n, 1), ...`.
pub fn taylor_coefficients_from_counts(
    n: usize,
    counts: &[BigInt],
    method: TaylorMethod,
    precision: usize,
) -> Result<Vec<ScaledReal>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let Some(r0) = counts.first().filter(|c| !c.is_zero()) else {
        return Err(Error::InvalidArgument(
            "constant term must be nonzero".into(),
        ));
    };
    let r0 = BigRational::from_integer(r0.clone());
    let ratios: Vec<BigRational> = counts
        .iter()
        .map(|c| BigRational::from_integer(c.clone()) / &r0)
        .collect();
    let exponent = BigRational::new(BigInt::one(), BigInt::from(2 * n));
    let parts = match method {
        TaylorMethod::FaaDiBruno => faa_di_bruno(&ratios, &exponent),
        TaylorMethod::SeriesLog => series_log(&ratios, &exponent)?,
    };
    Ok(parts
        .into_iter()
        .map(|a| ScaledReal::new(a, r0.clone(), exponent.clone(), precision))
        .collect())
}

/// Rational parts from `sum_l (e)_{|l|} / prod l_j! prod x_j^{l_j}` over
/// multiplicity vectors `l` with `sum j l_j = k`.
fn faa_di_bruno(x: &[BigRational], e: &BigRational) -> Vec<BigRational> {
    let max_k = x.len() - 1;
    let support: Vec<usize> = (1..=max_k).filter(|&j| !x[j].is_zero()).collect();
    let mut out = vec![BigRational::zero(); max_k + 1];
    out[0] = BigRational::one();
    let mut mult = vec![0usize; max_k + 1];
    for k in 1..=max_k {
        let mut acc = BigRational::zero();
        partitions(k, &support, 0, &mut mult, &mut |m| {
            let size: usize = m.iter().sum();
            let mut term = falling_factorial(e, size);
            for (j, &l) in m.iter().enumerate() {
                if l > 0 {
                    term *= num_traits::pow(x[j].clone(), l);
                    term /= BigRational::from_integer(factorial(l as u64));
                }
            }
            acc += term;
        });
        out[k] = acc;
    }
    out
}

fn partitions(
    rest: usize,
    parts: &[usize],
    from: usize,
    mult: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if rest == 0 {
        visit(mult);
        return;
    }
    for i in from..parts.len() {
        let j = parts[i];
        if j > rest {
            break;
        }
        mult[j] += 1;
        partitions(rest - j, parts, i, mult, visit);
        mult[j] -= 1;
    }
}

fn series_log(x: &[BigRational], e: &BigRational) -> Result<Vec<BigRational>> {
    let order = x.len() - 1;
    let p = TruncatedSeries::new(x.to_vec(), order);
    let g = p.log()?.scale(e).exp()?;
    Ok(g.coeffs().to_vec())
}

/// `a_3` of `lambda_n` as a float, prefactor included.
pub fn a3_limit_probe(n: usize) -> Result<HighFloat> {
    let counts = crossing_counts(n, 3, CountSource::Enumerated)?;
    let a =
        taylor_coefficients_from_counts(n, &counts, TaylorMethod::FaaDiBruno, DEFAULT_PRECISION)?;
    Ok(a[3].float_value.clone())
}

/// `a_11 / (-5n)` of `lambda_n` as a float, prefactor included.
pub fn a11_asymptote_probe(n: usize) -> Result<HighFloat> {
    a11_asymptote_probe_from(n, CountSource::Enumerated)
}

pub fn a11_asymptote_probe_from(n: usize, source: CountSource) -> Result<HighFloat> {
    Ok(a11_value(n, source)?.div(&HighFloat::from_i64(-5 * n as i64, DEFAULT_PRECISION)))
}

/// `a_11` of `lambda_n` as a float, prefactor included.
pub fn a11_value(n: usize, source: CountSource) -> Result<HighFloat> {
    let counts = crossing_counts(n, 11, source)?;
    let a =
        taylor_coefficients_from_counts(n, &counts, TaylorMethod::FaaDiBruno, DEFAULT_PRECISION)?;
    Ok(a[11].float_value.clone())
}

/// `C_n^(1/2n)`, the value of `lambda_n` at the origin.
pub fn origin_value(n: usize) -> HighFloat {
    HighFloat::from_bigint(&catalan(n as u64), DEFAULT_PRECISION)
        .pow_rational(&BigRational::new(BigInt::one(), BigInt::from(2 * n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cube_example() {
        for method in [TaylorMethod::FaaDiBruno, TaylorMethod::SeriesLog] {
            let a = taylor_coefficients(3, 6, method).unwrap();
            assert_eq!(a[0].rational_part, rat(1, 1));
            assert_eq!(a[3].rational_part, rat(1, 30));
            // (1 + x/5)^(1/6) at x = q^3: second coefficient (1/6)(-5/6)/2 / 25.
            assert_eq!(a[6].rational_part, rat(-1, 360));
            assert_eq!(a[3].prefactor_base, rat(5, 1));
            assert_eq!(a[3].prefactor_exponent, rat(1, 6));
            let want = 5f64.powf(1.0 / 6.0) / 30.0;
            assert!((a[3].float_value.to_f64() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn methods_agree_exactly() {
        for n in [1, 2, 4, 7, 12, 20] {
            let f = taylor_coefficients(n, 11, TaylorMethod::FaaDiBruno).unwrap();
            let s = taylor_coefficients(n, 11, TaylorMethod::SeriesLog).unwrap();
            for k in 0..=11 {
                assert_eq!(f[k].rational_part, s[k].rational_part, "n={n} k={k}");
            }
            assert!(f[1].rational_part.is_zero() && f[2].rational_part.is_zero());
        }
    }

    #[test]
    fn enumerated_counts_beyond_closed_forms() {
        let a = taylor_coefficients(4, 6, TaylorMethod::SeriesLog).unwrap();
        // R_4 = 14 + 8q^3 + 2q^4.
        assert_eq!(a[3].rational_part, rat(1, 14));
        assert_eq!(a[4].rational_part, rat(1, 56));
        let b = taylor_coefficients(4, 12, TaylorMethod::FaaDiBruno).unwrap();
        let c = taylor_coefficients(4, 12, TaylorMethod::SeriesLog).unwrap();
        assert!(b
            .iter()
            .zip(&c)
            .all(|(x, y)| x.rational_part == y.rational_part));
        assert!(matches!(
            taylor_coefficients(30, 12, TaylorMethod::FaaDiBruno),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn low_order_limits() {
        let a3 = a3_limit_probe(400).unwrap().to_f64();
        assert!((a3 - 0.9686).abs() < 1e-3, "{a3}");
        let a = taylor_coefficients(2000, 4, TaylorMethod::FaaDiBruno).unwrap();
        let a4 = a[4].float_value.to_f64();
        assert!((a4 - 2.0).abs() < 0.05, "{a4}");
        assert!((origin_value(1).to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partition_walk_counts() {
        let mut count = 0;
        let mut mult = vec![0; 12];
        partitions(11, &(1..=11).collect::<Vec<_>>(), 0, &mut mult, &mut |_| {
            count += 1
        });
        assert_eq!(count, 56);
    }
}
