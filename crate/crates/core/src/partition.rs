//! Integer partitions and the pivot sequences of their Grassmannian cells.
//!
//! A partition is stored as a weakly decreasing list of positive parts;
//! trailing zeros are stripped on construction so `(2,1)` and `(2,1,0,0)`
//! are the same value.  The pivot sequence (`rho`) of a partition is the
//! strictly decreasing integer sequence `rho(-i) = part_i - i`, which
//! eventually agrees with `-i`; it labels the pivot rows of the normalized
//! frame of the corresponding cell.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: parts[{0}] < parts[{1}]")]
    NotDecreasing(usize, usize),
    #[error("pivot sequence must be strictly decreasing at position {0}")]
    PivotsNotDecreasing(usize),
    #[error("pivot sequence must satisfy rho(-i) >= -i; violated at i = {0}")]
    PivotsTooSmall(usize),
}

/// A partition: weakly decreasing finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        for i in 1..parts.len() {
            if parts[i] > parts[i - 1] {
                return Err(PartitionError::NotDecreasing(i, i - 1));
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Parts without trailing zeros.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `i`-th part, 0-based, with implicit zeros past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Sum of the parts strictly after the first `k`.
    pub fn tail_weight(&self, k: usize) -> u32 {
        self.parts.iter().skip(k).sum()
    }

    /// First `k` parts as a partition.
    pub fn truncate(&self, k: usize) -> Partition {
        Partition {
            parts: self.parts.iter().take(k).copied().collect(),
        }
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 0..cols {
            parts.push(self.parts.iter().filter(|&&p| p as usize > j).count() as u32);
        }
        Partition { parts }
    }

    /// Componentwise `self >= other` (with implicit zero padding).
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Pivot sequence of the cell labeled by this partition.
    pub fn pivots(&self) -> PivotSeq {
        let head = (0..self.len())
            .map(|i| self.part(i) as i64 - (i as i64 + 1))
            .collect();
        PivotSeq { head }
    }

    /// Partitions of weight exactly `w`, in lexicographically decreasing order.
    pub fn of_weight(w: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            let hi = max_part.min(remaining);
            for p in (1..=hi).rev() {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
        rec(w, w, &mut cur, &mut out);
        out
    }

    /// All partitions of weight at most `w`, grouped weight-ascending.
    pub fn up_to_weight(w: u32) -> Vec<Partition> {
        (0..=w).flat_map(Partition::of_weight).collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", {
            let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            s.join(",")
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Strictly decreasing sequence `rho(-1) > rho(-2) > ...` with
/// `rho(-i) = -i` for all large `i`, stored as its exceptional prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotSeq {
    head: Vec<i64>,
}

impl PivotSeq {
    pub fn from_head(head: Vec<i64>) -> Result<Self, PartitionError> {
        for i in 1..head.len() {
            if head[i] >= head[i - 1] {
                return Err(PartitionError::PivotsNotDecreasing(i));
            }
        }
        for (c, &r) in head.iter().enumerate() {
            if r < -(c as i64 + 1) {
                return Err(PartitionError::PivotsTooSmall(c + 1));
            }
        }
        Ok(PivotSeq { head })
    }

    /// `rho(-i)` for `i >= 1`.
    pub fn at(&self, i: usize) -> i64 {
        debug_assert!(i >= 1);
        self.head.get(i - 1).copied().unwrap_or(-(i as i64))
    }

    /// Length of the exceptional prefix (indices where `rho(-i) != -i`).
    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts: Vec<u32> = (0..self.head.len())
            .map(|c| (self.head[c] + c as i64 + 1) as u32)
            .collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trailing_zeros_are_stripped() {
        let a = Partition::new(vec![2, 1]).unwrap();
        let b = Partition::new(vec![2, 1, 0, 0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert_eq!(a.weight(), 3);
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.conjugate(), p);
        let row = Partition::new(vec![4]).unwrap();
        assert_eq!(row.conjugate(), Partition::new(vec![1, 1, 1, 1]).unwrap());
        // weight-34 self-conjugate shape
        let big = Partition::new(vec![12, 7, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(big.conjugate(), big);
    }

    #[test]
    fn pivot_round_trip() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let rho = p.pivots();
        assert_eq!(rho.at(1), 1);
        assert_eq!(rho.at(2), -1);
        assert_eq!(rho.at(3), -3);
        assert_eq!(rho.to_partition(), p);
        assert_eq!(Partition::empty().pivots().to_partition(), Partition::empty());
    }

    #[test]
    fn of_weight_counts_match_partition_numbers() {
        let expect = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (w, &n) in expect.iter().enumerate() {
            assert_eq!(Partition::of_weight(w as u32).len(), n, "p({w})");
        }
    }

    proptest! {
        #[test]
        fn conjugate_is_involutive(v in proptest::collection::vec(0u32..8, 0..8)) {
            let mut v = v;
            v.sort_unstable_by(|a, b| b.cmp(a));
            let p = Partition::new(v).unwrap();
            prop_assert_eq!(p.conjugate().conjugate(), p.clone());
            prop_assert_eq!(p.conjugate().weight(), p.weight());
        }

        #[test]
        fn pivots_invert(v in proptest::collection::vec(0u32..9, 0..9)) {
            let mut v = v;
            v.sort_unstable_by(|a, b| b.cmp(a));
            let p = Partition::new(v).unwrap();
            prop_assert_eq!(p.pivots().to_partition(), p);
        }
    }
}
