use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagrams::{Enumerator, PairingFamily};
use crate::error::{Error, Result};
use crate::exact::QPolynomial;

/// Published values of the connected counts `b(n, k)` for `k <= 11`, as
/// `(n, k, count)`. Four of them disagree with exhaustive enumeration; see
/// [`BTable::corrected`].
const PRINTED: &[(usize, usize, u64)] = &[
    (1, 0, 1),
    (3, 3, 1),
    (4, 4, 2),
    (5, 5, 2),
    (5, 6, 5),
    (5, 7, 5),
    (5, 10, 1),
    (6, 6, 2),
    (6, 7, 24),
    (6, 8, 18),
    (6, 9, 4),
    (6, 10, 12),
    (6, 11, 12),
    (7, 7, 2),
    (7, 8, 56),
    (7, 9, 70),
    (7, 10, 98),
    (7, 11, 105),
    (8, 8, 2),
    (8, 9, 176),
    (8, 10, 328),
    (8, 11, 408),
    (9, 9, 2),
    (9, 10, 576),
    (9, 11, 1107),
    (10, 10, 2),
    (10, 11, 300),
    (11, 11, 2),
];

/// Exhaustive enumeration of connected parity-reversing pairings,
/// `n <= 11`, `k <= 11`.
const ENUMERATED: &[(usize, usize, u64)] = &[
    (1, 0, 1),
    (3, 3, 1),
    (4, 4, 2),
    (5, 5, 2),
    (5, 6, 5),
    (5, 7, 5),
    (5, 10, 1),
    (6, 6, 2),
    (6, 7, 24),
    (6, 8, 18),
    (6, 9, 4),
    (6, 10, 12),
    (6, 11, 12),
    (7, 7, 2),
    (7, 8, 56),
    (7, 9, 70),
    (7, 10, 98),
    (7, 11, 105),
    (8, 8, 2),
    (8, 9, 96),
    (8, 10, 328),
    (8, 11, 544),
    (9, 9, 2),
    (9, 10, 144),
    (9, 11, 1107),
    (10, 10, 2),
    (10, 11, 200),
    (11, 11, 2),
];

/// Counts `b(n, k)` of connected parity-reversing pairings with `n` chords
/// and `k` crossings, for `1 <= n <= max_k` and `0 <= k <= max_k`.
///
/// Only nonzero entries are stored. Since a connected diagram with `n > 1`
/// chords has at least `n` crossings, a table through `max_k` is complete
/// for every `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BTable {
    max_k: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl BTable {
    fn from_static(rows: &[(usize, usize, u64)]) -> Self {
        BTable {
            max_k: 11,
            entries: rows
                .iter()
                .map(|&(n, k, c)| ((n, k), BigInt::from(c)))
                .collect(),
        }
    }

    /// The published table, transcribed verbatim.
    pub fn printed() -> Self {
        Self::from_static(PRINTED)
    }

    /// The table as produced by enumeration, frozen as constants.
    pub fn corrected() -> Self {
        Self::from_static(ENUMERATED)
    }

    /// Builds a table from explicit entries; zero entries are dropped.
    pub fn from_entries(
        max_k: usize,
        entries: impl IntoIterator<Item = ((usize, usize), BigInt)>,
    ) -> Result<Self> {
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for &(n, k) in entries.keys() {
            if n == 0 || k > max_k || n > max_k.max(1) {
                return Err(Error::InvalidArgument(format!(
                    "entry ({n}, {k}) outside a table through k = {max_k}"
                )));
            }
            if (n, k) != (1, 0) && k < n {
                return Err(Error::InvalidArgument(format!(
                    "entry ({n}, {k}) has fewer crossings than chords"
                )));
            }
        }
        Ok(BTable { max_k, entries })
    }

    /// Recomputes every entry by enumerating connected diagrams.
    pub fn regenerate(max_k: usize, enumerator: &Enumerator) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for n in 1..=max_k.max(1) {
            let h = enumerator.histogram(n, PairingFamily::ConnectedParityReversing)?;
            for (k, c) in h.counts.range(..=max_k) {
                entries.insert((n, *k), c.clone());
            }
        }
        Ok(BTable { max_k, entries })
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.entries.get(&(n, k)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in `(n, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(n, k), c)| (n, k, c))
    }

    /// Nonzero entries other than the single chord `(1, 0)`.
    pub fn nontrivial(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries().filter(|&(n, k, _)| (n, k) != (1, 0))
    }

    /// `sum_k b(n, k)`; only a total when `n(n-1)/2 <= max_k`.
    pub fn column_sum(&self, n: usize) -> BigInt {
        self.entries
            .range((n, 0)..=(n, usize::MAX))
            .map(|(_, c)| c)
            .sum()
    }

    /// `sum_k b(n, k) q^k` over the stored range.
    pub fn column_polynomial(&self, n: usize) -> QPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.max_k + 1];
        for ((_, k), c) in self.entries.range((n, 0)..=(n, usize::MAX)) {
            coeffs[*k] = c.clone();
        }
        QPolynomial::from_coeffs(coeffs)
    }

    /// Entries where two tables differ, as `(n, k, self, other)`.
    pub fn differences(&self, other: &BTable) -> Vec<(usize, usize, BigInt, BigInt)> {
        let max_k = self.max_k.min(other.max_k);
        let mut keys: Vec<(usize, usize)> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .copied()
            .filter(|&(_, k)| k <= max_k)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(n, k)| {
                let (a, b) = (self.get(n, k), other.get(n, k));
                (a != b).then_some((n, k, a, b))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_invariants() {
        for t in [BTable::printed(), BTable::corrected()] {
            assert_eq!(t.get(1, 0), BigInt::from(1));
            for (n, k, _) in t.nontrivial() {
                assert!(k >= n, "({n}, {k})");
            }
            assert_eq!(t.get(3, 3), BigInt::from(1));
            for n in 4..=11 {
                assert_eq!(t.get(n, n), BigInt::from(2));
            }
        }
    }

    #[test]
    fn published_and_enumerated_tables_differ_in_four_entries() {
        let diff = BTable::printed().differences(&BTable::corrected());
        let cells: Vec<(usize, usize)> = diff.iter().map(|d| (d.0, d.1)).collect();
        assert_eq!(cells, vec![(8, 9), (8, 11), (9, 10), (10, 11)]);
    }

    #[test]
    fn enumerated_constants_regenerate_through_ten() {
        let e = Enumerator::new(1).unwrap();
        let small = BTable::regenerate(10, &e).unwrap();
        let frozen = BTable::corrected();
        for (n, k, c) in small.entries() {
            assert_eq!(&frozen.get(n, k), c, "({n}, {k})");
        }
        assert_eq!(small.column_sum(5), BigInt::from(13));
    }

    #[test]
    fn rejects_impossible_entries() {
        assert!(BTable::from_entries(5, [((4, 3), BigInt::from(1))]).is_err());
        assert!(BTable::from_entries(5, [((3, 7), BigInt::from(1))]).is_err());
        assert!(BTable::from_entries(5, [((3, 3), BigInt::from(1))]).is_ok());
    }
}
