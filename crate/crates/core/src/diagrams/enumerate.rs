use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::components::is_connected;
use super::pairing::{
    crossing_number, directed_crossing_number, permutation_to_pairing, Pairing, Permutation,
};
use crate::error::{Error, Result};
use crate::exact::QPolynomial;

/// Which diagrams an enumeration ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairingFamily {
    /// Every pairing of `2n` points.
    All,
    /// Pairings joining odd to even points, indexed by permutations of `n`.
    ParityReversing,
    /// Parity-reversing pairings with a connected crossing graph.
    ConnectedParityReversing,
}

impl PairingFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            PairingFamily::All => "all",
            PairingFamily::ParityReversing => "parity",
            PairingFamily::ConnectedParityReversing => "connected",
        }
    }
}

impl fmt::Display for PairingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairingFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(PairingFamily::All),
            "parity" => Ok(PairingFamily::ParityReversing),
            "connected" => Ok(PairingFamily::ConnectedParityReversing),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

/// Exact number of diagrams per crossing count. Only nonzero counts are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingHistogram {
    pub n: usize,
    pub family: PairingFamily,
    pub counts: BTreeMap<usize, BigInt>,
}

impl CrossingHistogram {
    pub fn from_counts(n: usize, family: PairingFamily, raw: &[u64]) -> Self {
        let counts = raw
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k, BigInt::from(c)))
            .collect();
        CrossingHistogram { n, family, counts }
    }

    pub fn get(&self, k: usize) -> BigInt {
        self.counts.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn max_key(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    /// `sum_k count_k q^k`.
    pub fn to_polynomial(&self) -> QPolynomial {
        let len = self.max_key().map_or(0, |k| k + 1);
        let mut coeffs = vec![BigInt::zero(); len];
        for (&k, c) in &self.counts {
            coeffs[k] = c.clone();
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

/// Default largest `n` for the permutation-indexed families (`12!` diagrams).
pub const PERMUTATION_CEILING: usize = 12;
/// Default largest `n` for all pairings (`17!!` diagrams).
pub const ALL_PAIRINGS_CEILING: usize = 9;

/// Exhaustive crossing-histogram enumeration with a fixed worker count.
///
/// The search space is split by the first two choices of a depth-first
/// search; each piece fills a private histogram and the pieces are summed,
/// so the result does not depend on the number of workers.
#[derive(Clone, Debug)]
pub struct Enumerator {
    threads: usize,
    permutation_ceiling: usize,
    all_ceiling: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        Enumerator {
            threads,
            permutation_ceiling: PERMUTATION_CEILING,
            all_ceiling: ALL_PAIRINGS_CEILING,
        }
    }
}

impl Enumerator {
    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::InvalidArgument(
                "thread count must be positive".into(),
            ));
        }
        Ok(Enumerator {
            threads,
            ..Self::default()
        })
    }

    pub fn with_ceilings(mut self, permutations: usize, all: usize) -> Self {
        self.permutation_ceiling = permutations;
        self.all_ceiling = all;
        self
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    fn check(&self, n: usize, family: PairingFamily) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let ceiling = match family {
            PairingFamily::All => self.all_ceiling,
            _ => self.permutation_ceiling,
        };
        // Bitmask widths bound what any ceiling can admit.
        let ceiling = ceiling.min(match family {
            PairingFamily::All => 15,
            _ => 30,
        });
        if n > ceiling {
            return Err(Error::CeilingExceeded {
                n,
                ceiling,
                family: family.to_string(),
            });
        }
        Ok(())
    }

    fn run<T, F>(&self, tasks: Vec<T>, width: usize, work: F) -> Result<Vec<u64>>
    where
        T: Send + Sync,
        F: Fn(&T, &mut [u64]) + Send + Sync,
    {
        let merge = |mut a: Vec<u64>, b: Vec<u64>| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            a
        };
        let solo = |t: &T| {
            let mut h = vec![0u64; width];
            work(t, &mut h);
            h
        };
        if self.threads == 1 {
            return Ok(tasks.iter().map(solo).fold(vec![0; width], merge));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        Ok(pool.install(|| tasks.par_iter().map(solo).reduce(|| vec![0; width], merge)))
    }

    /// Crossing histogram of a family at half-size `n`.
    pub fn histogram(&self, n: usize, family: PairingFamily) -> Result<CrossingHistogram> {
        self.check(n, family)?;
        let width = n * (n - 1) / 2 + 1;
        let raw = match family {
            PairingFamily::All => {
                let tasks = all_pairings_prefixes(n);
                self.run(tasks, width, |t, h| {
                    all_pairings_dfs(n, t.matched, t.right, t.crossings, h)
                })?
            }
            _ => {
                let connected = family == PairingFamily::ConnectedParityReversing;
                let tasks = permutation_prefixes(n);
                self.run(tasks, width, |prefix, h| {
                    let mut s = PermutationSearch::new(n, connected, h);
                    s.start(prefix);
                })?
            }
        };
        Ok(CrossingHistogram::from_counts(n, family, &raw))
    }

    /// The same histogram from the pairwise crossing test, one diagram at a
    /// time. Much slower; kept as ground truth for the fast search.
    pub fn reference_histogram(
        &self,
        n: usize,
        family: PairingFamily,
    ) -> Result<CrossingHistogram> {
        self.check(n, family)?;
        let mut raw = vec![0u64; n * (n - 1) / 2 + 1];
        match family {
            PairingFamily::All => for_each_pairing(n, |p| raw[crossing_number(p)] += 1),
            _ => {
                for s in Permutation::all(n) {
                    let p = permutation_to_pairing(&s);
                    if family == PairingFamily::ParityReversing || is_connected(&p) {
                        raw[crossing_number(&p)] += 1;
                    }
                }
            }
        }
        Ok(CrossingHistogram::from_counts(n, family, &raw))
    }

    /// `sum over sigma of q^(directed crossings of sigma)`.
    pub fn directed_crossing_polynomial(&self, n: usize) -> Result<QPolynomial> {
        self.check(n, PairingFamily::ParityReversing)?;
        let mut raw = vec![0u64; n * n + 1];
        for s in Permutation::all(n) {
            raw[directed_crossing_number(&s)] += 1;
        }
        Ok(QPolynomial::from_coeffs(
            raw.into_iter().map(BigInt::from).collect(),
        ))
    }
}

/// Shorthand for `Enumerator::new(threads)?.histogram(n, family)`.
pub fn enumerate_histogram(
    n: usize,
    family: PairingFamily,
    threads: usize,
) -> Result<CrossingHistogram> {
    Enumerator::new(threads)?.histogram(n, family)
}

fn permutation_prefixes(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::with_capacity(n * (n - 1));
    for a in 1..=n {
        for b in (1..=n).filter(|&b| b != a) {
            out.push(vec![a, b]);
        }
    }
    out
}

/// Depth-first search over permutations; chord `j` joins `2j + 1` to
/// `2 sigma(j + 1)` (zero-based `j`).
struct PermutationSearch<'a> {
    n: usize,
    connected: bool,
    used: u32,
    lo: [u8; 32],
    hi: [u8; 32],
    // Bit i of earlier[j] is set when chord j crosses chord i < j.
    earlier: [u32; 32],
    hist: &'a mut [u64],
}

impl<'a> PermutationSearch<'a> {
    fn new(n: usize, connected: bool, hist: &'a mut [u64]) -> Self {
        PermutationSearch {
            n,
            connected,
            used: 0,
            lo: [0; 32],
            hi: [0; 32],
            earlier: [0; 32],
            hist,
        }
    }

    fn start(&mut self, prefix: &[usize]) {
        let mut crossings = 0;
        for (j, &v) in prefix.iter().enumerate() {
            crossings += self.place(j, v);
        }
        self.descend(prefix.len(), crossings);
    }

    #[inline]
    fn place(&mut self, j: usize, v: usize) -> usize {
        let odd = (2 * j + 1) as u8;
        let even = (2 * v) as u8;
        let (lo, hi) = (odd.min(even), odd.max(even));
        let mut mask = 0u32;
        for i in 0..j {
            let (a, b) = (self.lo[i], self.hi[i]);
            let lo_in = a < lo && lo < b;
            let hi_in = a < hi && hi < b;
            if lo_in != hi_in {
                mask |= 1 << i;
            }
        }
        self.lo[j] = lo;
        self.hi[j] = hi;
        self.earlier[j] = mask;
        self.used |= 1 << v;
        mask.count_ones() as usize
    }

    fn descend(&mut self, j: usize, crossings: usize) {
        if j == self.n {
            if !self.connected || self.is_connected() {
                self.hist[crossings] += 1;
            }
            return;
        }
        for v in 1..=self.n {
            if self.used & (1 << v) != 0 {
                continue;
            }
            let c = self.place(j, v);
            self.descend(j + 1, crossings + c);
            self.used &= !(1 << v);
        }
    }

    fn is_connected(&self) -> bool {
        let full = (1u32 << self.n) - 1;
        let mut reach = 1u32;
        loop {
            let before = reach;
            for j in 0..self.n {
                if reach & (1 << j) != 0 {
                    reach |= self.earlier[j];
                } else if self.earlier[j] & reach != 0 {
                    reach |= 1 << j;
                }
            }
            if reach == full {
                return true;
            }
            if reach == before {
                return false;
            }
        }
    }
}

struct AllPrefix {
    matched: u32,
    right: u32,
    crossings: usize,
}

fn all_pairings_prefixes(n: usize) -> Vec<AllPrefix> {
    let mut out = vec![AllPrefix {
        matched: 0,
        right: 0,
        crossings: 0,
    }];
    for _ in 0..2.min(n - 1) {
        out = out
            .into_iter()
            .flat_map(|t| {
                all_pairings_moves(n, t.matched, t.right).map(move |(m, r, c)| AllPrefix {
                    matched: m,
                    right: r,
                    crossings: t.crossings + c,
                })
            })
            .collect();
    }
    out
}

/// Matches the smallest free point with each later free point.
fn all_pairings_moves(
    n: usize,
    matched: u32,
    right: u32,
) -> impl Iterator<Item = (u32, u32, usize)> {
    let i = matched.trailing_ones();
    (i + 1..2 * n as u32)
        .filter(move |&j| matched & (1 << j) == 0)
        .map(move |j| {
            // Earlier chords all start before i, so one crosses (i, j) exactly
            // when its right end lies strictly between i and j.
            let between = ((1u32 << j) - 1) & !((1u32 << (i + 1)) - 1);
            let c = (right & between).count_ones() as usize;
            (matched | (1 << i) | (1 << j), right | (1 << j), c)
        })
}

fn all_pairings_dfs(n: usize, matched: u32, right: u32, crossings: usize, hist: &mut [u64]) {
    if matched.count_ones() as usize == 2 * n {
        hist[crossings] += 1;
        return;
    }
    for (m, r, c) in all_pairings_moves(n, matched, right) {
        all_pairings_dfs(n, m, r, crossings + c, hist);
    }
}

/// Visits every pairing of `2n` points without materializing the list.
pub fn for_each_pairing(n: usize, mut f: impl FnMut(&Pairing)) {
    fn rec(
        n: usize,
        matched: &mut Vec<bool>,
        blocks: &mut Vec<(usize, usize)>,
        f: &mut dyn FnMut(&Pairing),
    ) {
        let Some(i) = matched.iter().position(|m| !m) else {
            f(&Pairing::from_canonical(blocks.clone()));
            return;
        };
        matched[i] = true;
        for j in i + 1..2 * n {
            if matched[j] {
                continue;
            }
            matched[j] = true;
            blocks.push((i + 1, j + 1));
            rec(n, matched, blocks, f);
            blocks.pop();
            matched[j] = false;
        }
        matched[i] = false;
    }
    if n > 0 {
        rec(n, &mut vec![false; 2 * n], &mut Vec::new(), &mut f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{double_factorial_odd, factorial};

    fn counts(h: &CrossingHistogram) -> Vec<(usize, u64)> {
        h.counts
            .iter()
            .map(|(&k, c)| (k, c.try_into().unwrap()))
            .collect()
    }

    #[test]
    fn small_histograms() {
        let e = Enumerator::new(1).unwrap();
        assert_eq!(
            counts(&e.histogram(2, PairingFamily::All).unwrap()),
            vec![(0, 2), (1, 1)]
        );
        assert_eq!(
            counts(&e.histogram(3, PairingFamily::ParityReversing).unwrap()),
            vec![(0, 5), (3, 1)]
        );
        assert_eq!(
            counts(
                &e.histogram(5, PairingFamily::ConnectedParityReversing)
                    .unwrap()
            ),
            vec![(5, 2), (6, 5), (7, 5), (10, 1)]
        );
        assert_eq!(
            counts(
                &e.histogram(1, PairingFamily::ConnectedParityReversing)
                    .unwrap()
            ),
            vec![(0, 1)]
        );
    }

    #[test]
    fn fast_search_matches_reference() {
        let e = Enumerator::new(1).unwrap();
        for n in 1..=7 {
            for family in [
                PairingFamily::All,
                PairingFamily::ParityReversing,
                PairingFamily::ConnectedParityReversing,
            ] {
                assert_eq!(
                    e.histogram(n, family).unwrap(),
                    e.reference_histogram(n, family).unwrap(),
                    "n={n} {family}"
                );
            }
        }
    }

    #[test]
    fn totals() {
        let e = Enumerator::new(2).unwrap();
        for n in 1..=7 {
            assert_eq!(
                e.histogram(n, PairingFamily::ParityReversing)
                    .unwrap()
                    .total(),
                factorial(n as u64)
            );
            assert_eq!(
                e.histogram(n, PairingFamily::All).unwrap().total(),
                double_factorial_odd(n as u64)
            );
        }
    }

    #[test]
    fn ceilings_are_enforced() {
        let e = Enumerator::new(1).unwrap().with_ceilings(5, 4);
        assert!(matches!(
            e.histogram(6, PairingFamily::ParityReversing),
            Err(Error::CeilingExceeded {
                n: 6,
                ceiling: 5,
                ..
            })
        ));
        assert!(matches!(
            e.histogram(5, PairingFamily::All),
            Err(Error::CeilingExceeded { .. })
        ));
        assert!(e.histogram(0, PairingFamily::All).is_err());
        assert!(Enumerator::new(0).is_err());
    }

    #[test]
    fn directed_polynomial_of_s3() {
        let e = Enumerator::new(1).unwrap();
        assert_eq!(
            e.directed_crossing_polynomial(3).unwrap(),
            QPolynomial::from_i64s(&[5, 1])
        );
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            PairingFamily::All,
            PairingFamily::ParityReversing,
            PairingFamily::ConnectedParityReversing,
        ] {
            assert_eq!(f.as_str().parse::<PairingFamily>().unwrap(), f);
        }
        assert!("pairs".parse::<PairingFamily>().is_err());
    }
}
