use std::fmt;

use crate::error::{Error, Result};

/// A perfect matching of `{1, ..., 2n}` in canonical form: every block is
/// stored as `(a, b)` with `a < b`, blocks sorted by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    blocks: Vec<(usize, usize)>,
}

impl Pairing {
    /// Validates and canonicalizes a list of blocks. Endpoint order within a
    /// block and block order are free.
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument(
                "a pairing needs at least one block".into(),
            ));
        }
        let points = 2 * blocks.len();
        let mut seen = vec![false; points + 1];
        let mut canon = Vec::with_capacity(blocks.len());
        for &(x, y) in &blocks {
            for p in [x, y] {
                if p == 0 || p > points {
                    return Err(Error::InvalidArgument(format!(
                        "point {p} outside 1..={points} in block {{{x},{y}}}"
                    )));
                }
                if seen[p] {
                    return Err(Error::InvalidArgument(format!(
                        "point {p} appears twice (block {{{x},{y}}})"
                    )));
                }
                seen[p] = true;
            }
            canon.push((x.min(y), x.max(y)));
        }
        canon.sort_unstable();
        Ok(Pairing { blocks: canon })
    }

    /// The pairing `{1,2}, {3,4}, ..., {2n-1, 2n}`.
    pub fn adjacent(n: usize) -> Self {
        Pairing {
            blocks: (1..=n).map(|i| (2 * i - 1, 2 * i)).collect(),
        }
    }

    pub(crate) fn from_canonical(blocks: Vec<(usize, usize)>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0].0 < w[1].0));
        Pairing { blocks }
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// True when every block joins an odd point to an even point.
    pub fn is_parity_reversing(&self) -> bool {
        self.blocks.iter().all(|&(a, b)| (a + b) % 2 == 1)
    }

    /// Every pairing of `2n` points, in lexicographic block order.
    pub fn all(n: usize) -> Vec<Pairing> {
        fn rec(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Pairing>) {
            if free.is_empty() {
                out.push(Pairing::from_canonical(acc.clone()));
                return;
            }
            let a = free.remove(0);
            for idx in 0..free.len() {
                let b = free.remove(idx);
                acc.push((a, b));
                rec(free, acc, out);
                acc.pop();
                free.insert(idx, b);
            }
            free.insert(0, a);
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(&mut (1..=2 * n).collect(), &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        write!(f, "}}")
    }
}

/// Two blocks cross when their endpoints interleave.
pub fn blocks_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Number of crossing block pairs, by the pairwise test.
pub fn crossing_number(p: &Pairing) -> usize {
    let b = p.blocks();
    let mut count = 0;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if blocks_cross(b[i], b[j]) {
                count += 1;
            }
        }
    }
    count
}

/// A permutation of `{1, ..., n}`, stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty permutation".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses one-line notation such as `31524`; only valid for `n <= 9`.
    pub fn from_digits(s: &str) -> Result<Self> {
        let images = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `sigma(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// All permutations of `{1, ..., n}` in lexicographic order.
    pub fn all(n: usize) -> Lexicographic {
        Lexicographic {
            next: (n > 0).then(|| (1..=n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { " " } else { "" };
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// Iterator over the permutations of `{1, ..., n}` in lexicographic order.
pub struct Lexicographic {
    next: Option<Vec<usize>>,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if let Some(i) = (0..succ.len().saturating_sub(1))
            .rev()
            .find(|&i| succ[i] < succ[i + 1])
        {
            let j = (i + 1..succ.len())
                .rev()
                .find(|&j| succ[j] > succ[i])
                .unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { images: cur })
    }
}

/// The parity-reversing pairing with blocks `{2i - 1, 2 sigma(i)}`.
pub fn permutation_to_pairing(s: &Permutation) -> Pairing {
    let mut blocks: Vec<(usize, usize)> = s
        .images
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let (odd, even) = (2 * i + 1, 2 * v);
            (odd.min(even), odd.max(even))
        })
        .collect();
    blocks.sort_unstable();
    Pairing::from_canonical(blocks)
}

/// Inverse of [`permutation_to_pairing`]: `sigma((o + 1) / 2) = e / 2` for
/// every block `{o, e}` with `o` odd and `e` even.
pub fn pairing_to_permutation(p: &Pairing) -> Result<Permutation> {
    let mut images = vec![0; p.n()];
    for &(a, b) in p.blocks() {
        let (odd, even) = match (a % 2, b % 2) {
            (1, 0) => (a, b),
            (0, 1) => (b, a),
            _ => return Err(Error::NotParityReversing(a, b)),
        };
        images[(odd - 1) / 2] = even / 2;
    }
    Ok(Permutation { images })
}

/// Directed crossings: pairs `j < i <= sigma(j) < sigma(i)` plus pairs
/// `j > i > sigma(j) > sigma(i)`.
pub fn directed_crossing_number(s: &Permutation) -> usize {
    let n = s.n();
    let mut count = 0;
    for i in 1..=n {
        let si = s.apply(i);
        for j in 1..=n {
            let sj = s.apply(j);
            if j < i && i <= sj && sj < si {
                count += 1;
            }
            if j > i && i > sj && sj > si {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing(blocks: &[(usize, usize)]) -> Pairing {
        Pairing::new(blocks.to_vec()).unwrap()
    }

    #[test]
    fn crossing_counts_of_small_diagrams() {
        let a = pairing(&[(1, 6), (2, 4), (3, 8), (5, 10), (7, 9)]);
        let b = pairing(&[(1, 6), (2, 3), (4, 7), (5, 10), (8, 9)]);
        let c = pairing(&[(1, 4), (2, 3), (5, 6), (7, 10), (8, 9)]);
        assert_eq!(crossing_number(&a), 5);
        assert_eq!(crossing_number(&b), 3);
        assert_eq!(crossing_number(&c), 0);
        assert_eq!(crossing_number(&pairing(&[(1, 2), (3, 4)])), 0);
        assert!(!a.is_parity_reversing());
        assert!(b.is_parity_reversing() && c.is_parity_reversing());
    }

    #[test]
    fn repeated_point_is_rejected() {
        let err = Pairing::new(vec![(1, 4), (2, 3), (5, 6), (7, 10), (8, 10)]).unwrap_err();
        assert!(err.to_string().contains("10"), "{err}");
        assert!(Pairing::new(vec![(1, 5)]).is_err());
        assert!(Pairing::new(vec![]).is_err());
    }

    #[test]
    fn canonical_form() {
        let p = pairing(&[(4, 3), (2, 1)]);
        assert_eq!(p.blocks(), &[(1, 2), (3, 4)]);
        assert_eq!(p.to_string(), "{{1,2},{3,4}}");
    }

    #[test]
    fn permutation_correspondence() {
        let b = pairing(&[(1, 6), (2, 3), (4, 7), (5, 10), (8, 9)]);
        let s = pairing_to_permutation(&b).unwrap();
        assert_eq!(s, Permutation::from_digits("31524").unwrap());
        assert_eq!(permutation_to_pairing(&s), b);
        assert_eq!(
            permutation_to_pairing(&Permutation::identity(3)),
            Pairing::adjacent(3)
        );
        let bad = pairing(&[(1, 3), (2, 4)]);
        assert_eq!(
            pairing_to_permutation(&bad),
            Err(Error::NotParityReversing(1, 3))
        );
    }

    #[test]
    fn round_trip_over_s5() {
        let all: Vec<_> = Permutation::all(5).collect();
        assert_eq!(all.len(), 120);
        for s in all {
            assert_eq!(
                pairing_to_permutation(&permutation_to_pairing(&s)).unwrap(),
                s
            );
        }
    }

    #[test]
    fn directed_crossings() {
        assert_eq!(directed_crossing_number(&Permutation::identity(6)), 0);
        assert_eq!(
            directed_crossing_number(&Permutation::from_digits("31524").unwrap()),
            1
        );
        let mut hist = [0usize; 4];
        for s in Permutation::all(3) {
            hist[directed_crossing_number(&s)] += 1;
        }
        assert_eq!(hist, [5, 1, 0, 0]);
    }

    #[test]
    fn all_pairings_counts() {
        assert_eq!(Pairing::all(1).len(), 1);
        assert_eq!(Pairing::all(3).len(), 15);
        assert_eq!(Pairing::all(4).len(), 105);
    }

    #[test]
    fn directed_crossings_are_a_subset() {
        for n in 1..=7 {
            for s in Permutation::all(n) {
                let cr = crossing_number(&permutation_to_pairing(&s));
                let dcr = directed_crossing_number(&s);
                assert!(cr >= dcr, "{s}");
                if cr > 0 {
                    assert!(cr >= dcr + 2, "{s}: {cr} vs {dcr}");
                }
            }
        }
    }
}
