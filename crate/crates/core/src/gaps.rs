//! Gap and non-gap profiles of flat line bundles at a marked point, the
//! partitions they label, and the derivative multi-indices (a-sequences)
//! with their permutation signs.
//!
//! All gaps of a degree-zero bundle lie in `[0, 2g-1]`, so a profile stores
//! the `g` gaps and the `g` non-gaps below `2g`; every integer `>= 2g` is a
//! non-gap and the `i`-th non-gap equals `i + g - 1` from index `g+1` on.

use crate::partition::Partition;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GapError {
    #[error("gap list must have exactly genus = {genus} entries, got {got}")]
    WrongLength { genus: usize, got: usize },
    #[error("gap list must be strictly increasing (violated at position {0})")]
    NotIncreasing(usize),
    #[error("gap {0} out of range [0, 2g-1] = [0, {1}]")]
    OutOfRange(u32, u32),
    #[error("gaps of the trivial bundle must not contain 0 and must contain 1")]
    TrivialBundleGaps,
    #[error("non-gap closure violated: {0} + {1} = {2} is listed as a gap")]
    ClosureViolated(u32, u32, u32),
    #[error("stored non-gap prefix disagrees with the complement of the gaps")]
    StarPrefixMismatch,
    #[error("subtracting the staircase from the gaps does not give a partition")]
    NotAPartition,
    #[error("k = {0} out of range [0, {1}]")]
    KOutOfRange(usize, usize),
    #[error("a-sequence undefined: m_{0} = 0")]
    EmptyASequence(usize),
    #[error("sign rows are not permutations of {{0,...,{0}}}")]
    SignRowsNotPermutation(usize),
    #[error("invalid stratum: need {0} for the requested parity")]
    InvalidStratum(&'static str),
}

/// Gaps and non-gaps of `L_{e+delta}` (the `b` side) and of the trivial
/// bundle (the `w` side) at the marked point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct GapProfile {
    genus: usize,
    b: Vec<u32>,
    b_star: Vec<u32>,
    w: Vec<u32>,
    w_star: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    genus: usize,
    b: Vec<u32>,
    b_star_prefix: Vec<u32>,
    w: Vec<u32>,
    w_star_prefix: Vec<u32>,
}

impl TryFrom<RawProfile> for GapProfile {
    type Error = GapError;
    fn try_from(r: RawProfile) -> Result<Self, GapError> {
        let p = GapProfile::new(r.genus, r.b, r.w)?;
        if r.b_star_prefix != p.b_star || r.w_star_prefix != p.w_star {
            return Err(GapError::StarPrefixMismatch);
        }
        Ok(p)
    }
}

impl From<GapProfile> for RawProfile {
    fn from(p: GapProfile) -> RawProfile {
        RawProfile {
            genus: p.genus,
            b: p.b,
            b_star_prefix: p.b_star,
            w: p.w,
            w_star_prefix: p.w_star,
        }
    }
}

fn validate_gap_list(genus: usize, gaps: &[u32]) -> Result<Vec<u32>, GapError> {
    if gaps.len() != genus {
        return Err(GapError::WrongLength {
            genus,
            got: gaps.len(),
        });
    }
    let bound = 2 * genus as u32;
    for (i, &gp) in gaps.iter().enumerate() {
        if i > 0 && gaps[i - 1] >= gp {
            return Err(GapError::NotIncreasing(i));
        }
        if gp >= bound {
            return Err(GapError::OutOfRange(gp, bound - 1));
        }
    }
    // complement below 2g
    Ok((0..bound).filter(|n| !gaps.contains(n)).collect())
}

impl GapProfile {
    /// Build a profile from the two gap lists, deriving non-gaps as the
    /// complements and validating the semigroup-action closure.
    pub fn new(genus: usize, b: Vec<u32>, w: Vec<u32>) -> Result<Self, GapError> {
        let b_star = validate_gap_list(genus, &b)?;
        let w_star = validate_gap_list(genus, &w)?;
        if w.contains(&0) || !w.contains(&1) {
            return Err(GapError::TrivialBundleGaps);
        }
        let p = GapProfile {
            genus,
            b,
            b_star,
            w,
            w_star,
        };
        // w* is a semigroup and it acts on b*: sums of non-gaps are non-gaps.
        // Everything at or above 2g is a non-gap, so the finite window decides.
        let bound = 2 * genus as u32;
        for &ws in &p.w_star {
            for &other in &p.w_star {
                let s = ws + other;
                if s < bound && !p.w_star.contains(&s) {
                    return Err(GapError::ClosureViolated(ws, other, s));
                }
            }
            for &bs in &p.b_star {
                let s = ws + bs;
                if s < bound && !p.b_star.contains(&s) {
                    return Err(GapError::ClosureViolated(ws, bs, s));
                }
            }
        }
        if p.partition_checked().is_err() {
            return Err(GapError::NotAPartition);
        }
        Ok(p)
    }

    /// Profile with `b = w` (the base case `e = -delta`, trivial `L_{e+delta}`).
    pub fn from_weierstrass_gaps(genus: usize, w: Vec<u32>) -> Result<Self, GapError> {
        GapProfile::new(genus, w.clone(), w)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Gaps of `L_{e+delta}`, strictly increasing.
    pub fn b(&self) -> &[u32] {
        &self.b
    }

    /// Gaps of the trivial bundle, strictly increasing; always starts at 1.
    pub fn w(&self) -> &[u32] {
        &self.w
    }

    pub fn w_star(&self) -> &[u32] {
        &self.w_star
    }

    pub fn b_star_prefix(&self) -> &[u32] {
        &self.b_star
    }

    /// `i`-th non-gap of `L_{e+delta}`, 1-based; arithmetic past the prefix.
    pub fn b_star(&self, i: usize) -> u32 {
        debug_assert!(i >= 1);
        if i <= self.genus {
            self.b_star[i - 1]
        } else {
            (i + self.genus - 1) as u32
        }
    }

    fn partition_checked(&self) -> Result<Partition, GapError> {
        let g = self.genus;
        let parts: Vec<i64> = (0..g)
            .map(|i| self.b[g - 1 - i] as i64 - (g - 1 - i) as i64)
            .collect();
        if parts.iter().any(|&p| p < 0) {
            return Err(GapError::NotAPartition);
        }
        Partition::new(parts.into_iter().map(|p| p as u32).collect())
            .map_err(|_| GapError::NotAPartition)
    }

    /// The partition `(b_g, ..., b_1) - (g-1, ..., 1, 0)`.
    pub fn partition(&self) -> Partition {
        self.partition_checked().expect("validated at construction")
    }

    /// `m_k`: number of non-gaps of `L_{e+delta}` below `g - k`.
    pub fn mk(&self, k: usize) -> Result<usize, GapError> {
        if k > self.genus {
            return Err(GapError::KOutOfRange(k, self.genus));
        }
        let cut = (self.genus - k) as u32;
        let via_star = self.b_star.iter().filter(|&&n| n < cut).count();
        let via_gaps = cut as usize - self.b.iter().filter(|&&n| n < cut).count();
        debug_assert_eq!(via_star, via_gaps);
        Ok(via_star)
    }

    /// Derivative multi-index `A_k` together with its sign `c_k`.
    ///
    /// Defined for `0 <= k <= g-1` with `m_k > 0`; additionally `k = g`
    /// yields the empty sequence with sign `+1`, the base case of the
    /// successive-expansion chain.
    pub fn a_sequence(&self, k: usize) -> Result<ASequence, GapError> {
        if k > self.genus {
            return Err(GapError::KOutOfRange(k, self.genus));
        }
        let mk = self.mk(k)?;
        if k == self.genus {
            return Ok(ASequence {
                k,
                entries: Vec::new(),
                sign: 1,
            });
        }
        if mk == 0 {
            return Err(GapError::EmptyASequence(k));
        }
        let g = self.genus;
        let entries: Vec<u32> = (1..=mk)
            .map(|i| {
                let gap = self.b[g - k - i]; // b_{g-k+1-i}, 1-based
                let star = self.b_star(i);
                debug_assert!(gap > star);
                gap - star
            })
            .collect();
        let sign = self.sign_ck(k)?;
        let a = ASequence { k, entries, sign };
        a.validate(self, k)?;
        Ok(a)
    }

    /// Sign of the permutation sending
    /// `(b*_1, ..., b*_{m_k}, b_{g-k-m_k}, ..., b_1)` to `(g-k-1, ..., 1, 0)`.
    pub fn sign_ck(&self, k: usize) -> Result<i8, GapError> {
        if k > self.genus {
            return Err(GapError::KOutOfRange(k, self.genus));
        }
        if k == self.genus {
            return Ok(1);
        }
        let mk = self.mk(k)?;
        if mk == 0 {
            return Err(GapError::EmptyASequence(k));
        }
        let n = self.genus - k;
        let mut top: Vec<u32> = (1..=mk).map(|i| self.b_star(i)).collect();
        top.extend(self.b.iter().take(n - mk).rev());
        // both rows must enumerate {0, ..., n-1}
        let mut sorted = top.clone();
        sorted.sort_unstable();
        if sorted != (0..n as u32).collect::<Vec<_>>() {
            return Err(GapError::SignRowsNotPermutation(n - 1));
        }
        // bottom row (n-1, ..., 1, 0) is the full reversal
        let top_inv = count_inversions(&top);
        let bottom_inv = n * (n - 1) / 2;
        Ok(if (top_inv + bottom_inv) % 2 == 0 { 1 } else { -1 })
    }

    /// `N_{lambda,k}`: sum of the partition parts after the first `k`.
    pub fn n_lambda_k(&self, k: usize) -> u32 {
        self.partition().tail_weight(k)
    }
}

/// Multi-index of derivative directions for one level of the expansion chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASequence {
    pub k: usize,
    /// Strictly decreasing; every entry is a gap of the trivial bundle.
    pub entries: Vec<u32>,
    /// The permutation sign `c_k`.
    pub sign: i8,
}

impl ASequence {
    fn validate(&self, profile: &GapProfile, k: usize) -> Result<(), GapError> {
        for i in 1..self.entries.len() {
            if self.entries[i] >= self.entries[i - 1] {
                return Err(GapError::NotIncreasing(i));
            }
        }
        for &a in &self.entries {
            if !profile.w().contains(&a) {
                return Err(GapError::OutOfRange(a, 2 * profile.genus() as u32 - 1));
            }
        }
        let total: u32 = self.entries.iter().sum();
        debug_assert_eq!(total, profile.n_lambda_k(k), "a-sequence weight");
        Ok(())
    }
}

/// Merge-count of inversions, used for permutation signs.
fn count_inversions(seq: &[u32]) -> usize {
    fn rec(v: &mut Vec<u32>, buf: &mut Vec<u32>, lo: usize, hi: usize) -> usize {
        if hi - lo <= 1 {
            return 0;
        }
        let mid = (lo + hi) / 2;
        let mut inv = rec(v, buf, lo, mid) + rec(v, buf, mid, hi);
        buf.clear();
        let (mut i, mut j) = (lo, mid);
        while i < mid && j < hi {
            if v[i] <= v[j] {
                buf.push(v[i]);
                i += 1;
            } else {
                inv += mid - i;
                buf.push(v[j]);
                j += 1;
            }
        }
        buf.extend_from_slice(&v[i..mid]);
        buf.extend_from_slice(&v[j..hi]);
        v[lo..hi].copy_from_slice(buf);
        inv
    }
    let mut v = seq.to_vec();
    let mut buf = Vec::with_capacity(v.len());
    rec(&mut v, &mut buf, 0, seq.len())
}

/// Which family of theta-divisor strata a hyperelliptic point lives on:
/// `Odd` keeps all movable points finite with `2m0 - 2` copies of the
/// branch point at infinity, `Even` uses `2m0 - 1` copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumParity {
    Odd,
    Even,
}

/// A multiplicity stratum of the theta divisor of an odd hyperelliptic curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticStratum {
    pub genus: usize,
    pub m0: usize,
    pub parity: StratumParity,
}

impl HyperellipticStratum {
    pub fn new(genus: usize, m0: usize, parity: StratumParity) -> Result<Self, GapError> {
        if m0 < 1 {
            return Err(GapError::InvalidStratum("m0 >= 1"));
        }
        match parity {
            StratumParity::Odd if genus + 1 < 2 * m0 => {
                Err(GapError::InvalidStratum("g + 1 - 2*m0 >= 0"))
            }
            StratumParity::Even if genus < 2 * m0 => {
                Err(GapError::InvalidStratum("g - 2*m0 >= 0"))
            }
            _ => Ok(HyperellipticStratum { genus, m0, parity }),
        }
    }

    /// Gap profile of the stratum at the branch point at infinity.
    /// The trivial-bundle gaps there are the odd numbers `1, 3, ..., 2g-1`.
    pub fn profile(&self) -> GapProfile {
        let g = self.genus;
        let m0 = self.m0;
        let mut b: Vec<u32> = Vec::with_capacity(g);
        match self.parity {
            StratumParity::Odd => {
                // {0, ..., g-2m0} followed by g-2m0 + 2i, i = 1..2m0-1
                let base = g as i64 - 2 * m0 as i64;
                b.extend((0..=base).map(|n| n as u32));
                b.extend((1..=(2 * m0 as i64 - 1)).map(|i| (base + 2 * i) as u32));
            }
            StratumParity::Even => {
                let base = g as i64 - 1 - 2 * m0 as i64;
                b.extend((0..=base).map(|n| n as u32));
                b.extend((1..=(2 * m0 as i64)).map(|i| (base + 2 * i) as u32));
            }
        }
        let w: Vec<u32> = (0..g).map(|i| 2 * i as u32 + 1).collect();
        GapProfile::new(g, b, w).expect("stratum gaps are always a valid profile")
    }
}

/// Gap profile of the fundamental point `e = -delta` of an odd hyperelliptic
/// curve based at infinity; the partition is the full staircase `(g, ..., 1)`.
pub fn hyperelliptic_base_profile(genus: usize) -> GapProfile {
    let m0 = (genus + 1) / 2;
    let parity = if genus % 2 == 1 {
        StratumParity::Odd
    } else {
        StratumParity::Even
    };
    HyperellipticStratum::new(genus, m0, parity)
        .expect("base stratum is valid for every genus")
        .profile()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile_378() -> GapProfile {
        GapProfile::from_weierstrass_gaps(4, vec![1, 2, 4, 5]).unwrap()
    }

    #[test]
    fn partition_from_gaps_examples() {
        // gaps (1,2,4,5) at genus 4
        assert_eq!(
            profile_378().partition(),
            Partition::new(vec![2, 2, 1, 1]).unwrap()
        );
        // gaps (1, ..., g) give the column (1^g)
        for g in 1..=5 {
            let p = GapProfile::from_weierstrass_gaps(g, (1..=g as u32).collect()).unwrap();
            assert_eq!(p.partition(), Partition::new(vec![1; g]).unwrap());
        }
        // gaps (1,3,5) at genus 3: the staircase
        let p = GapProfile::from_weierstrass_gaps(3, vec![1, 3, 5]).unwrap();
        assert_eq!(p.partition(), Partition::new(vec![3, 2, 1]).unwrap());
    }

    #[test]
    fn rejects_malformed_gap_lists() {
        assert_eq!(
            GapProfile::new(2, vec![1, 1], vec![1, 3]).unwrap_err(),
            GapError::NotIncreasing(1)
        );
        assert!(matches!(
            GapProfile::new(2, vec![1, 5], vec![1, 3]).unwrap_err(),
            GapError::OutOfRange(5, 3)
        ));
        assert!(matches!(
            GapProfile::new(2, vec![1, 3], vec![0, 1]).unwrap_err(),
            GapError::TrivialBundleGaps
        ));
        // gaps (0, 3) at genus 2: lambda = (2, -? ) -> (3,0)-(1,0) fails decreasing? b=(0,3):
        // (3,0)-(1,0) = (2,0) is fine; use (2,3): (3,2)-(1,0)=(2,2) ok.
        // A genuinely non-partition case: b=(0,1) gives (1-1, 0-0) = (0,0), fine.
        // Closure violation: w* = {0,2,...} must act on b*; b=(2,3) has b*=(0,1),
        // and 2+1=3 is a gap -> rejected.
        assert!(matches!(
            GapProfile::new(2, vec![2, 3], vec![1, 3]).unwrap_err(),
            GapError::ClosureViolated(2, 1, 3)
        ));
    }

    #[test]
    fn b_star_tail_rule() {
        let p = hyperelliptic_base_profile(3); // b = (1,3,5)
        assert_eq!(p.b_star_prefix(), &[0, 2, 4]);
        assert_eq!(p.b_star(3), 4);
        assert_eq!(p.b_star(4), 6); // i + g - 1
        assert_eq!(p.b_star(5), 7);
    }

    #[test]
    fn mk_examples() {
        // staircase: m_0 = floor((g+1)/2)
        for g in 1..=6 {
            let p = hyperelliptic_base_profile(g);
            assert_eq!(p.mk(0).unwrap(), (g + 1) / 2, "g = {g}");
        }
        // lambda = (1^g): only 0 is a non-gap below g
        let p = GapProfile::from_weierstrass_gaps(4, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(p.mk(0).unwrap(), 1);
        // k = g-1 counts whether 0 is a non-gap
        assert_eq!(p.mk(3).unwrap(), 1);
        let q = profile_378();
        for k in 0..=3 {
            let m = q.mk(k).unwrap();
            assert!(m <= 4 - k);
        }
    }

    #[test]
    fn a_sequence_examples() {
        // genus 2 staircase: A_0 = (3), c_0 = -1
        let p = hyperelliptic_base_profile(2);
        assert_eq!(p.partition(), Partition::new(vec![2, 1]).unwrap());
        let a0 = p.a_sequence(0).unwrap();
        assert_eq!(a0.entries, vec![3]);
        assert_eq!(a0.sign, -1);
        let a1 = p.a_sequence(1).unwrap();
        assert_eq!(a1.entries, vec![1]);
        assert_eq!(a1.sign, 1);

        // lambda = (1^g): A_0 = (g), c_0 = (-1)^(g-1)
        for g in 2..=6 {
            let p = GapProfile::from_weierstrass_gaps(g, (1..=g as u32).collect()).unwrap();
            let a0 = p.a_sequence(0).unwrap();
            assert_eq!(a0.entries, vec![g as u32]);
            assert_eq!(a0.sign as i64, if g % 2 == 1 { 1 } else { -1 }, "g = {g}");
        }

        // genus 3 staircase: A_0 = (5, 1)
        let p = hyperelliptic_base_profile(3);
        assert_eq!(p.a_sequence(0).unwrap().entries, vec![5, 1]);
    }

    #[test]
    fn a_sequence_weight_identity() {
        for profile in [
            hyperelliptic_base_profile(2),
            hyperelliptic_base_profile(3),
            hyperelliptic_base_profile(4),
            hyperelliptic_base_profile(5),
            profile_378(),
        ] {
            for k in 0..profile.genus() {
                if profile.mk(k).unwrap() > 0 {
                    let a = profile.a_sequence(k).unwrap();
                    assert_eq!(
                        a.entries.iter().sum::<u32>(),
                        profile.n_lambda_k(k),
                        "profile {:?}, k = {k}",
                        profile.b()
                    );
                }
            }
        }
    }

    #[test]
    fn mk_bound_holds() {
        for profile in [
            hyperelliptic_base_profile(4),
            profile_378(),
            HyperellipticStratum::new(4, 1, StratumParity::Odd).unwrap().profile(),
        ] {
            for k in 0..profile.genus() {
                let m = profile.mk(k).unwrap();
                assert!(m <= profile.genus() - k);
            }
        }
    }

    #[test]
    fn strata_gap_sets() {
        let s = HyperellipticStratum::new(3, 2, StratumParity::Odd).unwrap();
        assert_eq!(s.profile().b(), &[1, 3, 5]);
        let s = HyperellipticStratum::new(2, 1, StratumParity::Even).unwrap();
        assert_eq!(s.profile().b(), &[1, 3]);
        assert_eq!(s.profile().partition(), Partition::new(vec![2, 1]).unwrap());
        let s = HyperellipticStratum::new(4, 1, StratumParity::Odd).unwrap();
        assert_eq!(s.profile().b(), &[0, 1, 2, 4]);
        assert_eq!(s.profile().partition(), Partition::new(vec![1]).unwrap());
        // partition is (2m0-1, ..., 1) resp. (2m0, ..., 1)
        for g in 1..=6 {
            for m0 in 1..=(g + 1) / 2 {
                let s = HyperellipticStratum::new(g, m0, StratumParity::Odd).unwrap();
                let expect: Vec<u32> = (1..=2 * m0 as u32 - 1).rev().collect();
                assert_eq!(s.profile().partition(), Partition::new(expect).unwrap());
                assert_eq!(s.profile().mk(0).unwrap(), m0);
            }
            for m0 in 1..=g / 2 {
                let s = HyperellipticStratum::new(g, m0, StratumParity::Even).unwrap();
                let expect: Vec<u32> = (1..=2 * m0 as u32).rev().collect();
                assert_eq!(s.profile().partition(), Partition::new(expect).unwrap());
                assert_eq!(s.profile().mk(0).unwrap(), m0);
            }
        }
    }

    #[test]
    fn staircase_is_self_conjugate() {
        for g in 1..=6 {
            let lam = hyperelliptic_base_profile(g).partition();
            assert_eq!(lam.conjugate(), lam);
        }
    }

    #[test]
    fn extended_chain_base() {
        let p = hyperelliptic_base_profile(2);
        let a = p.a_sequence(2).unwrap();
        assert!(a.entries.is_empty());
        assert_eq!(a.sign, 1);
    }

    #[test]
    fn profile_json_round_trip() {
        let p = profile_378();
        let js = serde_json::to_string(&p).unwrap();
        assert!(js.contains("b_star_prefix"));
        let q: GapProfile = serde_json::from_str(&js).unwrap();
        assert_eq!(p, q);
        // tampered prefix rejected
        let bad = js.replace("\"b_star_prefix\":[0,3,6,7]", "\"b_star_prefix\":[0,3,6,8]");
        assert!(serde_json::from_str::<GapProfile>(&bad).is_err());
    }
}
