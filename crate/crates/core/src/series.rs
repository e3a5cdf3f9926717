//! Sparse multivariate polynomials over arbitrary-precision rationals, graded
//! by weight and truncated at a weight cutoff.
//!
//! Three gradings cover every use in the crate: `Indexed` gives variable
//! `t_i` weight `i` (the KP times), `Unit` gives every variable weight 1
//! (adjoined point coordinates), and `PairedIndexed(m)` juxtaposes two
//! `Indexed` blocks of width `m` for bilinear identities in `(t, s)`.
//! Multiplication silently drops monomials above the cutoff; on the retained
//! range all ring laws hold exactly.

use arrayvec::ArrayVec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

pub type Q = BigRational;

pub fn qint(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qrat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Factorial as a rational, for derivative multiplicities.
pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

/// Weight assignment for the variable set of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// `wt(v_i) = i + 1` (0-based index `i` holds the variable `t_{i+1}`).
    Indexed,
    /// Every variable has weight 1.
    Unit,
    /// Two `Indexed` blocks of the given width: indices `0..m` are
    /// `t_1..t_m`, indices `m..2m` are `s_1..s_m`.
    PairedIndexed(u16),
}

impl Grading {
    #[inline]
    pub fn weight_of(&self, var: u16) -> u32 {
        match *self {
            Grading::Indexed => var as u32 + 1,
            Grading::Unit => 1,
            Grading::PairedIndexed(m) => {
                if var < m {
                    var as u32 + 1
                } else {
                    (var - m) as u32 + 1
                }
            }
        }
    }
}

/// Exponent vector, sparse and sorted by variable index.
///
/// Capacity 12 suffices for every cutoff this crate uses: under `Indexed`
/// grading a monomial of weight `<= 40` touches at most 8 distinct
/// variables, and the paired/unit gradings stay within the same bound.
pub type Monomial = ArrayVec<(u16, u8), 12>;

fn monomial_weight(grading: Grading, mono: &Monomial) -> u32 {
    mono.iter()
        .map(|&(v, e)| grading.weight_of(v) * e as u32)
        .sum()
}

fn monomial_degree(mono: &Monomial) -> u32 {
    mono.iter().map(|&(_, e)| e as u32).sum()
}

fn monomial_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Monomial::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (va, ea) = a[i];
        let (vb, eb) = b[j];
        if va < vb {
            out.push((va, ea));
            i += 1;
        } else if vb < va {
            out.push((vb, eb));
            j += 1;
        } else {
            out.push((va, ea + eb));
            i += 1;
            j += 1;
        }
    }
    out.extend(a[i..].iter().copied());
    out.extend(b[j..].iter().copied());
    out
}

/// Sparse weight-truncated polynomial.
#[derive(Clone)]
pub struct ExactSeries {
    grading: Grading,
    cutoff: u32,
    terms: HashMap<Monomial, Q>,
}

impl ExactSeries {
    pub fn zero(grading: Grading, cutoff: u32) -> Self {
        ExactSeries {
            grading,
            cutoff,
            terms: HashMap::new(),
        }
    }

    pub fn constant(grading: Grading, cutoff: u32, c: Q) -> Self {
        let mut s = Self::zero(grading, cutoff);
        if !c.is_zero() {
            s.terms.insert(Monomial::new(), c);
        }
        s
    }

    pub fn one(grading: Grading, cutoff: u32) -> Self {
        Self::constant(grading, cutoff, Q::one())
    }

    /// The variable with the given 0-based index.
    pub fn var(grading: Grading, cutoff: u32, v: u16) -> Self {
        let mut s = Self::zero(grading, cutoff);
        s.add_term(std::iter::once((v, 1)).collect(), Q::one());
        s
    }

    /// Single monomial `c * prod v_i^{e_i}`; `vars` are 0-based and need not
    /// be sorted.
    pub fn monomial(grading: Grading, cutoff: u32, vars: &[(u16, u8)], c: Q) -> Self {
        let mut sorted: Vec<(u16, u8)> = vars.iter().copied().filter(|&(_, e)| e > 0).collect();
        sorted.sort_unstable_by_key(|&(v, _)| v);
        let mut s = Self::zero(grading, cutoff);
        s.add_term(sorted.into_iter().collect(), c);
        s
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Add `c * mono`, respecting the cutoff and dropping cancellations.
    pub fn add_term(&mut self, mono: Monomial, c: Q) {
        if c.is_zero() || monomial_weight(self.grading, &mono) > self.cutoff {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &ExactSeries) {
        debug_assert_eq!(self.grading, rhs.grading);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, rhs: &ExactSeries) {
        debug_assert_eq!(self.grading, rhs.grading);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn add(&self, rhs: &ExactSeries) -> ExactSeries {
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(rhs.cutoff);
        out.terms.retain(|m, _| monomial_weight(self.grading, m) <= out.cutoff);
        out.add_assign(rhs);
        out
    }

    pub fn sub(&self, rhs: &ExactSeries) -> ExactSeries {
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(rhs.cutoff);
        out.terms.retain(|m, _| monomial_weight(self.grading, m) <= out.cutoff);
        out.sub_assign(rhs);
        out
    }

    pub fn neg(&self) -> ExactSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Q) -> ExactSeries {
        if c.is_zero() {
            return Self::zero(self.grading, self.cutoff);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Truncating product.
    pub fn mul(&self, rhs: &ExactSeries) -> ExactSeries {
        debug_assert_eq!(self.grading, rhs.grading);
        let cutoff = self.cutoff.min(rhs.cutoff);
        let mut out = ExactSeries::zero(self.grading, cutoff);
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (ma, ca) in &small.terms {
            let wa = monomial_weight(self.grading, ma);
            if wa > cutoff {
                continue;
            }
            for (mb, cb) in &large.terms {
                if wa + monomial_weight(self.grading, mb) > cutoff {
                    continue;
                }
                out.add_term(monomial_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Lower the cutoff, dropping terms above the new one.
    pub fn truncated(&self, cutoff: u32) -> ExactSeries {
        let mut out = self.clone();
        out.cutoff = cutoff.min(self.cutoff);
        out.terms
            .retain(|m, _| monomial_weight(self.grading, m) <= out.cutoff);
        out
    }

    pub fn coefficient(&self, mono: &Monomial) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::new())
    }

    /// Partial derivative with respect to the 0-based variable `v`.
    pub fn derive_var(&self, v: u16) -> ExactSeries {
        let mut out = ExactSeries::zero(self.grading, self.cutoff);
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|&(mv, _)| mv == v) {
                let e = m[pos].1;
                let mut m2 = m.clone();
                if e == 1 {
                    m2.remove(pos);
                } else {
                    m2[pos].1 = e - 1;
                }
                out.add_term(m2, c * qint(e as i64));
            }
        }
        out
    }

    /// Iterated derivative by a multi-index of 1-based variable indices.
    pub fn derive(&self, index: &[u32]) -> ExactSeries {
        let mut out = self.clone();
        for &i in index {
            debug_assert!(i >= 1);
            out = out.derive_var((i - 1) as u16);
        }
        out
    }

    /// Value of the `index`-derivative at the origin: the coefficient of the
    /// corresponding monomial times the multiplicity factorials.
    pub fn derivative_at_zero(&self, index: &[u32]) -> Q {
        let mut mult: HashMap<u16, u8> = HashMap::new();
        for &i in index {
            debug_assert!(i >= 1);
            *mult.entry((i - 1) as u16).or_insert(0) += 1;
        }
        let mut mono: Vec<(u16, u8)> = mult.into_iter().collect();
        mono.sort_unstable_by_key(|&(v, _)| v);
        let mono: Monomial = mono.into_iter().collect();
        let mut fact = Q::one();
        for &(_, e) in &mono {
            fact *= factorial(e as u64);
        }
        self.coefficient(&mono) * fact
    }

    /// Weight of each stored monomial is exactly `w`?
    pub fn is_weight_homogeneous(&self, w: u32) -> bool {
        self.terms
            .keys()
            .all(|m| monomial_weight(self.grading, m) == w)
    }

    /// Graded piece of the given weight.
    pub fn weight_component(&self, w: u32) -> ExactSeries {
        let mut out = ExactSeries::zero(self.grading, self.cutoff);
        for (m, c) in &self.terms {
            if monomial_weight(self.grading, m) == w {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Lowest total degree among stored terms, if any.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(monomial_degree).min()
    }

    /// Terms of minimal total degree.
    pub fn min_degree_component(&self) -> ExactSeries {
        let mut out = ExactSeries::zero(self.grading, self.cutoff);
        if let Some(d) = self.min_degree() {
            for (m, c) in &self.terms {
                if monomial_degree(m) == d {
                    out.terms.insert(m.clone(), c.clone());
                }
            }
        }
        out
    }

    /// Substitute `t -> -t`: each term picks up `(-1)^degree`.
    pub fn negate_vars(&self) -> ExactSeries {
        let mut out = self.clone();
        for (m, c) in out.terms.iter_mut() {
            if monomial_degree(m) % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Substitute every variable by the image series of the same grading as
    /// `images` (all images must share one grading and cutoff).  Variables
    /// with index at or past `images.len()` must not occur.
    pub fn substitute_vars(&self, images: &[ExactSeries], cutoff: u32) -> ExactSeries {
        let grading = images
            .first()
            .map(|s| s.grading)
            .unwrap_or(Grading::Unit);
        let mut out = ExactSeries::zero(grading, cutoff);
        let mut power_cache: HashMap<(u16, u8), ExactSeries> = HashMap::new();
        for (m, c) in &self.terms {
            let mut acc = ExactSeries::constant(grading, cutoff, c.clone());
            for &(v, e) in m {
                let img = power_cache
                    .entry((v, e))
                    .or_insert_with(|| {
                        let base = &images[v as usize];
                        let mut p = base.truncated(cutoff);
                        for _ in 1..e {
                            p = p.mul(&base.truncated(cutoff));
                        }
                        p
                    })
                    .clone();
                acc = acc.mul(&img);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Max variable index in use, if any.
    pub fn max_var(&self) -> Option<u16> {
        self.terms
            .keys()
            .filter_map(|m| m.last().map(|&(v, _)| v))
            .max()
    }

    /// Canonical term list (graded-lex order) for serialization and display.
    pub fn canonical_terms(&self) -> Vec<(Monomial, Q)> {
        let mut v: Vec<(Monomial, Q)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| {
            let wa = monomial_weight(self.grading, a);
            let wb = monomial_weight(self.grading, b);
            wa.cmp(&wb).then_with(|| a.as_slice().cmp(b.as_slice()))
        });
        v
    }

    pub fn to_repr(&self) -> SeriesRepr {
        SeriesRepr {
            terms: self
                .canonical_terms()
                .into_iter()
                .map(|(m, c)| TermRepr {
                    exponents: m.iter().map(|&(v, e)| (v as u32 + 1, e)).collect(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl PartialEq for ExactSeries {
    fn eq(&self, other: &Self) -> bool {
        self.grading == other.grading && self.terms == other.terms
    }
}

impl Eq for ExactSeries {}

impl fmt::Debug for ExactSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.canonical_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (v, e) in m {
                let name = match self.grading {
                    Grading::Unit => format!("x{}", v + 1),
                    Grading::Indexed => format!("t{}", v + 1),
                    Grading::PairedIndexed(mm) => {
                        if v < mm {
                            format!("t{}", v + 1)
                        } else {
                            format!("s{}", v - mm + 1)
                        }
                    }
                };
                write!(f, "*{}", name)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

/// Serialized form: `{ terms: [{exponents: {"i": e}, coeff: "p/q"}] }` in
/// canonical graded-lex order.
#[derive(Serialize, Deserialize)]
pub struct SeriesRepr {
    pub terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct TermRepr {
    pub exponents: std::collections::BTreeMap<u32, u8>,
    pub coeff: String,
}

/// Sign of a rational as -1/0/+1, used in a few report paths.
pub fn qsign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(vars: &[(u16, u8)], n: i64, d: i64) -> ExactSeries {
        ExactSeries::monomial(Grading::Indexed, 20, vars, qrat(n, d))
    }

    #[test]
    fn ring_basics() {
        let t1 = ExactSeries::var(Grading::Indexed, 20, 0);
        let t2 = ExactSeries::var(Grading::Indexed, 20, 1);
        let p = t1.add(&t2);
        let q = p.mul(&p);
        // (t1 + t2)^2 = t1^2 + 2 t1 t2 + t2^2
        assert_eq!(q.coefficient(&[(0u16, 2u8)].into_iter().collect()), qint(1));
        assert_eq!(
            q.coefficient(&[(0u16, 1u8), (1u16, 1u8)].into_iter().collect()),
            qint(2)
        );
        assert_eq!(q.coefficient(&[(1u16, 2u8)].into_iter().collect()), qint(1));
        assert_eq!(q.num_terms(), 3);
    }

    #[test]
    fn cutoff_drops_heavy_terms() {
        let t3 = ExactSeries::var(Grading::Indexed, 5, 2); // weight 3
        let sq = t3.mul(&t3); // weight 6 > 5
        assert!(sq.is_zero());
    }

    #[test]
    fn derivative_and_at_zero() {
        // f = t1^3/3 - t3
        let f = t([(0, 3)], 1, 3).sub(&t([(2, 1)], 1, 1));
        assert_eq!(f.derive(&[3]).constant_term(), qint(-1));
        assert_eq!(f.derive(&[1, 1, 1]).constant_term(), qint(2));
        assert_eq!(f.derivative_at_zero(&[3]), qint(-1));
        assert_eq!(f.derivative_at_zero(&[1, 1, 1]), qint(2));
        assert_eq!(f.derivative_at_zero(&[]), qint(0));
        assert_eq!(f.derive(&[]), f);
        // order independence
        let g = t([(0, 2), (1, 1)], 5, 2);
        assert_eq!(g.derive(&[1, 2, 1]), g.derive(&[2, 1, 1]));
    }

    #[test]
    fn negate_vars_flips_odd_degrees() {
        let f = t([(0, 1)], 1, 1).add(&t([(1, 1)], 1, 1)); // t1 + t2
        let g = f.negate_vars();
        assert_eq!(g.coefficient(&[(0u16, 1u8)].into_iter().collect()), qint(-1));
        assert_eq!(g.coefficient(&[(1u16, 1u8)].into_iter().collect()), qint(-1));
        let h = t([(0, 2)], 1, 1).negate_vars();
        assert_eq!(h.coefficient(&[(0u16, 2u8)].into_iter().collect()), qint(1));
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        // t1 -> x1 + x2, t2 -> (x1^2 + x2^2)/2
        let images = vec![
            ExactSeries::monomial(Grading::Unit, 10, &[(0, 1)], qint(1)).add(
                &ExactSeries::monomial(Grading::Unit, 10, &[(1, 1)], qint(1)),
            ),
            ExactSeries::monomial(Grading::Unit, 10, &[(0, 2)], qrat(1, 2)).add(
                &ExactSeries::monomial(Grading::Unit, 10, &[(1, 2)], qrat(1, 2)),
            ),
        ];
        let f = t([(0, 1)], 1, 1);
        let g = t([(1, 1)], 1, 1);
        let fg = f.mul(&g);
        let sub_fg = fg.substitute_vars(&images, 10);
        let sub_f = f.substitute_vars(&images, 10);
        let sub_g = g.substitute_vars(&images, 10);
        assert_eq!(sub_fg, sub_f.mul(&sub_g));
        // weight-w monomial maps to degree-w homogeneous polynomial
        assert!(sub_fg.terms().all(|(m, _)| monomial_degree(m) == 3));
    }

    #[test]
    fn canonical_order_is_stable() {
        let f = t([(2, 1)], -1, 1).add(&t([(0, 3)], 1, 3));
        let repr = serde_json::to_string(&f.to_repr()).unwrap();
        let again = serde_json::to_string(&f.to_repr()).unwrap();
        assert_eq!(repr, again);
        assert!(repr.contains("-1"));
    }
}
