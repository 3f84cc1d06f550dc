//! Integer partitions and Young diagrams.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Partitions are totally ordered by size first and then lexicographically;
/// within a fixed size this order refines dominance.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that `parts` is weakly decreasing; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return domain(format!("{parts:?} is not a partition"));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The rectangle `(width^height)`; empty if either side is zero.
    pub fn rectangle(width: usize, height: usize) -> Self {
        if width == 0 {
            Partition::empty()
        } else {
            Partition(vec![width; height])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `l(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Diagram containment `other ⊂ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.0[i] <= self.0[i])
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// Pairs `(part, multiplicity)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = ∏_i i^{m_i} m_i!`.
    pub fn z_factor(&self) -> BigInt {
        let mut z = BigInt::one();
        for (p, c) in self.multiplicities() {
            for j in 1..=c {
                z *= BigInt::from(p) * BigInt::from(j);
            }
        }
        z
    }

    /// `∏_i m_i!`.
    pub fn multiplicity_factorial(&self) -> BigInt {
        let mut z = BigInt::one();
        for (_, c) in self.multiplicities() {
            for j in 1..=c {
                z *= BigInt::from(j);
            }
        }
        z
    }

    /// Removes one occurrence of the part `k`.
    pub fn remove_part(&self, k: usize) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some(Partition(parts))
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Multiset difference, if `other` is a sub-multiset of the parts.
    pub fn difference(&self, other: &Partition) -> Option<Partition> {
        let mut out = self.clone();
        for &k in &other.0 {
            out = out.remove_part(k)?;
        }
        Some(out)
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    pub fn partial_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = crate::error::Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for building partitions in tests and examples; panics on invalid input.
#[macro_export]
macro_rules! partition {
    () => { $crate::partition::Partition::empty() };
    ($($p:expr),+ $(,)?) => { $crate::partition::Partition::new(vec![$($p),+]).unwrap() };
}

/// Outcome of a dominance comparison `μ ≤ λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    LessEqual,
    Greater,
    Incomparable,
}

/// Compares partial sums of `mu` and `lambda` (same size required).
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<Dominance> {
    if mu.size() != lambda.size() {
        return domain(format!(
            "dominance needs equal sizes, got |{mu}| = {} and |{lambda}| = {}",
            mu.size(),
            lambda.size()
        ));
    }
    let len = mu.len().max(lambda.len());
    let (mut a, mut b) = (0usize, 0usize);
    let (mut le, mut ge) = (true, true);
    for i in 0..len {
        a += mu.part(i);
        b += lambda.part(i);
        le &= a <= b;
        ge &= a >= b;
    }
    Ok(if le {
        Dominance::LessEqual
    } else if ge {
        Dominance::Greater
    } else {
        Dominance::Incomparable
    })
}

/// `μ ≤ λ` in dominance; false for different sizes.
pub fn dominated_by(mu: &Partition, lambda: &Partition) -> bool {
    matches!(dominance_leq(mu, lambda), Ok(Dominance::LessEqual))
}

/// Partitions of `n` with at most `max_len` parts, each at most `max_part`,
/// in ascending lexicographic order.
pub fn partitions_bounded(n: usize, max_len: usize, max_part: usize) -> Vec<Partition> {
    fn rec(
        rest: usize,
        max_part: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        // ascending lexicographic: try the smallest admissible first part first
        let hi = max_part.min(rest);
        let lo = rest.div_ceil(slots);
        for p in lo..=hi {
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, ascending lexicographically (so `(1^n)` first, `(n)` last).
pub fn partitions(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n, n)
}

/// All partitions of every size `0..=n`, in the total order.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

/// All `μ ⊂ (s^r)`: at most `r` parts, each at most `s`. Sorted by the total order.
pub fn subdiagrams(s: usize, r: usize) -> Vec<Partition> {
    (0..=s * r)
        .flat_map(|n| partitions_bounded(n, r, s))
        .collect()
}

/// All `μ ⊂ λ`, sorted by the total order.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    (0..=lambda.size())
        .flat_map(|n| partitions_bounded(n, lambda.len(), lambda.part(0)))
        .filter(|mu| lambda.contains(mu))
        .collect()
}

/// `λ/μ` has no two cells in one column.
pub fn is_horizontal_strip(lambda: &Partition, mu: &Partition) -> bool {
    lambda.contains(mu) && (0..lambda.len()).all(|i| mu.part(i) >= lambda.part(i + 1))
}

/// `λ` and `μ` differ in exactly one row (or not at all).
pub fn is_single_row_difference(lambda: &Partition, mu: &Partition) -> bool {
    lambda.contains(mu) && (0..lambda.len()).filter(|&i| lambda.part(i) != mu.part(i)).count() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), partition![2, 1]);
        assert_eq!(Partition::from_parts(vec![1, 3, 0, 2]), partition![3, 2, 1]);
        assert!(Partition::empty().is_empty());
        assert_eq!(Partition::rectangle(0, 3), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        use Dominance::*;
        assert_eq!(dominance_leq(&partition![1, 1], &partition![2]).unwrap(), LessEqual);
        assert_eq!(dominance_leq(&partition![2], &partition![1, 1]).unwrap(), Greater);
        let l = partition![3, 2, 1];
        assert_eq!(dominance_leq(&l, &l).unwrap(), LessEqual);
        assert_eq!(dominance_leq(&partition![3, 3], &partition![4, 1, 1]).unwrap(), Incomparable);
        assert!(dominance_leq(&partition![1], &partition![2]).is_err());
    }

    #[test]
    fn dominance_is_transitive_and_refined_by_lex() {
        for n in 1..=8 {
            let ps = partitions(n);
            for a in &ps {
                for b in &ps {
                    if dominated_by(a, b) {
                        assert!(a <= b, "lex must refine dominance: {a} {b}");
                    }
                    for c in &ps {
                        if dominated_by(a, b) && dominated_by(b, c) {
                            assert!(dominated_by(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let p4 = partitions(4);
        assert_eq!(p4.first().unwrap(), &partition![1, 1, 1, 1]);
        assert_eq!(p4.last().unwrap(), &partition![4]);
        assert!(p4.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn subdiagram_examples() {
        assert_eq!(subdiagrams(0, 3), vec![Partition::empty()]);
        assert_eq!(
            subdiagrams(1, 2),
            vec![Partition::empty(), partition![1], partition![1, 1]]
        );
        assert_eq!(subdiagrams(2, 2).len(), 6);
        assert_eq!(subpartitions(&partition![2, 2]), subdiagrams(2, 2));
    }

    #[test]
    fn subdiagram_count_is_binomial() {
        for s in 0..6 {
            for r in 0..6 {
                assert_eq!(
                    subdiagrams(s, r).len() as u128,
                    crate::combinat::binomial((s + r) as u64, r as u64)
                );
            }
        }
    }

    #[test]
    fn strips() {
        assert!(is_horizontal_strip(&partition![2, 1], &partition![1]));
        assert!(!is_single_row_difference(&partition![2, 1], &partition![1]));
        assert!(!is_horizontal_strip(&partition![2, 2], &partition![1, 1]));
        assert!(is_single_row_difference(&partition![2, 1], &partition![1, 1]));
    }

    #[test]
    fn z_factor_and_conjugate() {
        assert_eq!(partition![2, 1, 1].z_factor(), BigInt::from(4));
        assert_eq!(partition![3, 1].conjugate(), partition![2, 1, 1]);
        assert_eq!(partition![2, 2, 1].multiplicity_factorial(), BigInt::from(2));
    }
}
