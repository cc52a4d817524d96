use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::btable::BTable;
use crate::error::{Error, Result};
use crate::exact::{binomial, catalan, factorial};

/// Largest crossing count with a fixed-`k` closed form.
pub const CLOSED_FORM_MAX_K: usize = 11;

/// How component multiplicities enter the assembly weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Multiplicity {
    /// Components are interchangeable only when they have the same
    /// `(chords, crossings)` type. This is the correct count.
    #[default]
    ComponentType,
    /// Components are grouped by chord count alone. This reproduces the
    /// published fixed-`k` expressions but undercounts whenever two distinct
    /// component types share a chord count.
    BlockSize,
}

/// One term `c * (n+s)(n+s-1)...(n+s-m+2) * C(2n, n-s)` of a fixed-`k`
/// closed form: `s` chords in `m` connected components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClosedFormTerm {
    pub size: usize,
    pub components: usize,
    pub coefficient: BigRational,
}

impl ClosedFormTerm {
    pub fn evaluate(&self, n: usize) -> BigRational {
        let mut poly = BigInt::one();
        let top = (n + self.size) as i64;
        for j in 0..self.components.saturating_sub(1) as i64 {
            poly *= top - j;
        }
        let b = binomial(2 * n as u64, n as i64 - self.size as i64);
        &self.coefficient * BigRational::from_integer(poly * b)
    }
}

/// `(s, m, numerator, denominator)` for each `k` in `3..=11`.
type TermRows = [&'static [(usize, usize, i64, i64)]; 9];

const ENUMERATED_TERMS: TermRows = [
    &[(3, 1, 1, 1)],
    &[(4, 1, 2, 1)],
    &[(5, 1, 2, 1)],
    &[(5, 1, 5, 1), (6, 1, 2, 1), (6, 2, 1, 2)],
    &[(5, 1, 5, 1), (6, 1, 24, 1), (7, 1, 2, 1), (7, 2, 2, 1)],
    &[(6, 1, 18, 1), (7, 1, 56, 1), (8, 1, 2, 1), (8, 2, 4, 1)],
    &[
        (6, 1, 4, 1),
        (7, 1, 70, 1),
        (8, 1, 96, 1),
        (9, 1, 2, 1),
        (8, 2, 5, 1),
        (9, 2, 6, 1),
        (9, 3, 1, 6),
    ],
    &[
        (5, 1, 1, 1),
        (6, 1, 12, 1),
        (7, 1, 98, 1),
        (8, 1, 328, 1),
        (9, 1, 144, 1),
        (10, 1, 2, 1),
        (8, 2, 5, 1),
        (9, 2, 34, 1),
        (10, 2, 8, 1),
        (10, 3, 1, 1),
    ],
    &[
        (6, 1, 12, 1),
        (7, 1, 105, 1),
        (8, 1, 544, 1),
        (9, 1, 1107, 1),
        (10, 1, 200, 1),
        (11, 1, 2, 1),
        (9, 2, 28, 1),
        (10, 2, 114, 1),
        (11, 2, 10, 1),
        (11, 3, 3, 1),
    ],
];

const PRINTED_TERMS: TermRows = [
    &[(3, 1, 1, 1)],
    &[(4, 1, 2, 1)],
    &[(5, 1, 2, 1)],
    &[(5, 1, 5, 1), (6, 1, 2, 1), (6, 2, 1, 2)],
    &[(5, 1, 5, 1), (6, 1, 24, 1), (7, 1, 2, 1), (7, 2, 2, 1)],
    &[(6, 1, 18, 1), (7, 1, 56, 1), (8, 1, 2, 1), (8, 2, 4, 1)],
    &[
        (6, 1, 4, 1),
        (7, 1, 70, 1),
        (8, 1, 176, 1),
        (9, 1, 2, 1),
        (8, 2, 5, 1),
        (9, 2, 6, 1),
        (9, 3, 1, 6),
    ],
    &[
        (5, 1, 1, 1),
        (6, 1, 12, 1),
        (7, 1, 98, 1),
        (8, 1, 328, 1),
        (9, 1, 576, 1),
        (10, 1, 2, 1),
        (8, 2, 5, 1),
        (9, 2, 34, 1),
        (10, 2, 8, 1),
        (10, 3, 1, 1),
    ],
    &[
        (6, 1, 12, 1),
        (7, 1, 105, 1),
        (8, 1, 408, 1),
        (9, 1, 1107, 1),
        (10, 1, 300, 1),
        (11, 1, 2, 1),
        (9, 2, 28, 1),
        (10, 2, 109, 1),
        (11, 2, 10, 1),
        (11, 3, 3, 1),
    ],
];

fn terms_of(rows: &TermRows, k: usize) -> Vec<ClosedFormTerm> {
    let mut out: Vec<ClosedFormTerm> = rows[k - 3]
        .iter()
        .map(|&(s, m, num, den)| ClosedFormTerm {
            size: s,
            components: m,
            coefficient: BigRational::new(num.into(), den.into()),
        })
        .collect();
    out.sort();
    out
}

/// Terms of the fixed-`k` closed form for `3 <= k <= 11`, built from the
/// enumerated connected counts.
pub fn closed_form_terms(k: usize) -> Result<Vec<ClosedFormTerm>> {
    check_closed_k(k)?;
    Ok(if k < 3 {
        Vec::new()
    } else {
        terms_of(&ENUMERATED_TERMS, k)
    })
}

/// Terms of the published fixed-`k` expressions, transcribed verbatim.
pub fn printed_closed_form_terms(k: usize) -> Result<Vec<ClosedFormTerm>> {
    check_closed_k(k)?;
    Ok(if k < 3 {
        Vec::new()
    } else {
        terms_of(&PRINTED_TERMS, k)
    })
}

fn check_closed_k(k: usize) -> Result<()> {
    if k > CLOSED_FORM_MAX_K {
        return Err(Error::Unsupported(format!(
            "no closed form for k = {k}; use the decomposition or enumeration"
        )));
    }
    Ok(())
}

fn evaluate_terms(n: usize, k: usize, terms: &[ClosedFormTerm]) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    match k {
        0 => return Ok(catalan(n as u64)),
        1 | 2 => return Ok(BigInt::zero()),
        _ => {}
    }
    let total: BigRational = terms.iter().map(|t| t.evaluate(n)).sum();
    if !total.is_integer() {
        return Err(Error::Internal(format!(
            "closed form r({n}, {k}) = {total} is not an integer"
        )));
    }
    Ok(total.to_integer())
}

/// `r(n, k)`, the number of parity-reversing pairings with `n` chords and
/// `k <= 11` crossings, from fixed-`k` closed forms.
///
/// Uses the convention `C(2n, n - s) = 0` for `s > n`.
pub fn closed_form_r(n: usize, k: usize) -> Result<BigInt> {
    evaluate_terms(n, k, &closed_form_terms(k)?)
}

/// The published fixed-`k` expressions evaluated literally. They agree with
/// [`closed_form_r`] for `k <= 8` and differ from it for `k` in `9..=11`.
pub fn printed_closed_form_r(n: usize, k: usize) -> Result<BigInt> {
    evaluate_terms(n, k, &printed_closed_form_terms(k)?)
}

/// Multisets of nontrivial component types with crossing total `k` and
/// chord total at most `max_size`, as `(type, multiplicity)` lists.
fn component_multisets(
    table: &BTable,
    k: usize,
    max_size: usize,
) -> Vec<Vec<((usize, usize), usize)>> {
    // Types ordered by (crossings, chords).
    let mut types: Vec<(usize, usize)> = table.nontrivial().map(|(n, k, _)| (n, k)).collect();
    types.sort_by_key(|&(n, k)| (k, n));

    fn rec(
        types: &[(usize, usize)],
        start: usize,
        k_left: usize,
        size_left: usize,
        acc: &mut Vec<((usize, usize), usize)>,
        out: &mut Vec<Vec<((usize, usize), usize)>>,
    ) {
        if k_left == 0 {
            out.push(acc.clone());
            return;
        }
        for idx in start..types.len() {
            let (n, k) = types[idx];
            if k > k_left {
                break;
            }
            let mut copies = 1;
            while copies * k <= k_left && copies * n <= size_left {
                acc.push(((n, k), copies));
                rec(
                    types,
                    idx + 1,
                    k_left - copies * k,
                    size_left - copies * n,
                    acc,
                    out,
                );
                acc.pop();
                copies += 1;
            }
        }
    }

    let mut out = Vec::new();
    rec(&types, 0, k, max_size, &mut Vec::new(), &mut out);
    out
}

fn denominator(parts: &[((usize, usize), usize)], singletons: usize, mult: Multiplicity) -> BigInt {
    let mut groups: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &((n, k), c) in parts {
        let key = match mult {
            Multiplicity::ComponentType => (n, k),
            Multiplicity::BlockSize => (n, 0),
        };
        *groups.entry(key).or_default() += c;
    }
    groups
        .values()
        .fold(factorial(singletons as u64), |acc, &c| {
            acc * factorial(c as u64)
        })
}

/// `r(n, k)` by summing over every way to assemble connected components:
/// multisets of component types from the table, padded with single chords,
/// each weighted by the number of noncrossing placements of the components
/// on the `2n` points.
pub fn r_via_decomposition(
    n: usize,
    k: usize,
    table: &BTable,
    mult: Multiplicity,
) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if k > table.max_k() {
        return Err(Error::Unsupported(format!(
            "k = {k} exceeds the table's range (max k = {})",
            table.max_k()
        )));
    }
    let two_n = 2 * n as u64;
    let numerator = factorial(two_n);
    let mut total = BigInt::zero();
    for parts in component_multisets(table, k, n) {
        let size: usize = parts.iter().map(|((c, _), m)| c * m).sum();
        let count: usize = parts.iter().map(|(_, m)| m).sum();
        let singletons = n - size;
        let blocks = singletons + count;
        let product = parts.iter().fold(BigInt::one(), |acc, ((c, x), m)| {
            acc * num_traits::pow(table.get(*c, *x), *m)
        });
        let weight_den =
            denominator(&parts, singletons, mult) * factorial(two_n + 1 - blocks as u64);
        total += &numerator * product / weight_den;
    }
    Ok(total)
}

/// Fixed-`k` closed-form terms implied by a table: the decomposition sum
/// regrouped by chord total `s` and component count `m`.
pub fn terms_from_table(k: usize, table: &BTable, mult: Multiplicity) -> Vec<ClosedFormTerm> {
    let mut acc: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
    for parts in component_multisets(table, k, usize::MAX) {
        if parts.is_empty() {
            continue;
        }
        let size: usize = parts.iter().map(|((c, _), m)| c * m).sum();
        let count: usize = parts.iter().map(|(_, m)| m).sum();
        let product = parts.iter().fold(BigInt::one(), |acc, ((c, x), m)| {
            acc * num_traits::pow(table.get(*c, *x), *m)
        });
        let c = BigRational::new(product, denominator(&parts, 0, mult));
        *acc.entry((size, count)).or_insert_with(BigRational::zero) += c;
    }
    let mut out: Vec<ClosedFormTerm> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((size, components), coefficient)| ClosedFormTerm {
            size,
            components,
            coefficient,
        })
        .collect();
    out.sort();
    out
}

/// Number of noncrossing partitions of `[n]` with the given block sizes:
/// `n! / (r_1! r_2! ... (n + 1 - sum r_i)!)` where `r_j` counts blocks of
/// size `j`.
pub fn nc_block_multiplicity(n: usize, block_sizes: &[usize]) -> Result<BigInt> {
    if block_sizes.iter().any(|&s| s == 0) {
        return Err(Error::InvalidArgument(
            "block sizes must be positive".into(),
        ));
    }
    let total: usize = block_sizes.iter().sum();
    if total != n {
        return Err(Error::InvalidArgument(format!(
            "block sizes sum to {total}, expected {n}"
        )));
    }
    let mut r: BTreeMap<usize, u64> = BTreeMap::new();
    for &s in block_sizes {
        *r.entry(s).or_default() += 1;
    }
    let den = r
        .values()
        .fold(factorial((n + 1 - block_sizes.len()) as u64), |acc, &c| {
            acc * factorial(c)
        });
    Ok(factorial(n as u64) / den)
}
