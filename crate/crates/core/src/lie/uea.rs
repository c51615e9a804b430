//! Universal enveloping algebra in the PBW basis, and complete brackets.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{GradedLieAlgebra, LieElement};
use crate::ring::{factorial, Rational};

/// Exponent vector of an ordered monomial `ξ_1^{p_1} ⋯ ξ_d^{p_d}` in the basis order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial(pub Vec<u32>);

impl PbwMonomial {
    pub fn one(dim: usize) -> Self {
        PbwMonomial(alloc::vec![0; dim])
    }

    pub fn basis(dim: usize, j: usize) -> Self {
        let mut p = Self::one(dim);
        p.0[j] = 1;
        p
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weight(&self, lie: &GradedLieAlgebra) -> i64 {
        self.0.iter().enumerate().map(|(a, &e)| i64::from(e) * lie.weight_of(a)).sum()
    }

    /// `p!` = product of factorials.
    pub fn factorial(&self) -> Rational {
        self.0.iter().map(|&e| factorial(e)).fold(Rational::one(), |a, b| a * b)
    }

    /// The ordered word: each basis index repeated by its exponent.
    pub fn word(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(a, &e)| core::iter::repeat(a).take(e as usize)).collect()
    }

    pub fn from_word(dim: usize, word: &[usize]) -> Self {
        let mut p = Self::one(dim);
        for &a in word {
            p.0[a] += 1;
        }
        p
    }

    pub fn add(&self, other: &PbwMonomial) -> PbwMonomial {
        PbwMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` if componentwise nonnegative.
    pub fn checked_sub(&self, other: &PbwMonomial) -> Option<PbwMonomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(PbwMonomial)
    }

    /// Index of the highest level with a nonzero exponent (the `max` in the
    /// weighted-bracket identity), or `None` for the empty monomial.
    pub fn last_level(&self, lie: &GradedLieAlgebra) -> Option<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(a, _)| lie.level_of(a)).max()
    }

    /// All `q ≤ self` componentwise.
    pub fn divisors(&self) -> Vec<PbwMonomial> {
        let mut out = alloc::vec![PbwMonomial(Vec::new())];
        for &e in &self.0 {
            let mut next = Vec::new();
            for q in &out {
                for k in 0..=e {
                    let mut v = q.0.clone();
                    v.push(k);
                    next.push(PbwMonomial(v));
                }
            }
            out = next;
        }
        out
    }

    /// `C(p, q)` = product of binomials.
    pub fn binomial(&self, q: &PbwMonomial) -> Rational {
        self.0.iter().zip(&q.0).map(|(&n, &k)| crate::ring::binomial(n, k)).fold(Rational::one(), |a, b| a * b)
    }
}

/// PBW monomials of weight ≤ `max_weight` (and total degree ≤ `max_degree`),
/// sorted by weight, then degree, then exponent vector. Includes the identity.
pub fn pbw_monomials(lie: &GradedLieAlgebra, max_weight: i64, max_degree: u32) -> Vec<PbwMonomial> {
    let d = lie.dim();
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u32; d];
    fn rec(lie: &GradedLieAlgebra, a: usize, cur: &mut Vec<u32>, w: i64, deg: u32, maxw: i64, maxd: u32, out: &mut Vec<PbwMonomial>) {
        if a == cur.len() {
            out.push(PbwMonomial(cur.clone()));
            return;
        }
        let wa = lie.weight_of(a);
        let mut e = 0;
        while w + wa * i64::from(e) <= maxw && deg + e <= maxd {
            cur[a] = e;
            rec(lie, a + 1, cur, w + wa * i64::from(e), deg + e, maxw, maxd, out);
            e += 1;
        }
        cur[a] = 0;
    }
    if max_weight >= 0 {
        rec(lie, 0, &mut cur, 0, 0, max_weight, max_degree, &mut out);
    }
    out.sort_by(|p, q| p.weight(lie).cmp(&q.weight(lie)).then(p.degree().cmp(&q.degree())).then(p.cmp(q)));
    out
}

/// PBW monomials of exactly the given weight.
pub fn pbw_monomials_of_weight(lie: &GradedLieAlgebra, weight: i64, max_degree: u32) -> Vec<PbwMonomial> {
    pbw_monomials(lie, weight, max_degree).into_iter().filter(|p| p.weight(lie) == weight).collect()
}

/// An element of U(𝔲), expanded in the PBW basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement(pub BTreeMap<PbwMonomial, Rational>);

impl UeaElement {
    pub fn zero() -> Self {
        UeaElement(BTreeMap::new())
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        Self::monomial(PbwMonomial::one(dim), c)
    }

    pub fn monomial(p: PbwMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn from_lie(x: &LieElement) -> Self {
        let d = x.0.len();
        let mut e = Self::zero();
        for (a, c) in x.support() {
            e.add_term(PbwMonomial::basis(d, a), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, p: PbwMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let v = self.0.entry(p.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.0.remove(&p);
        }
    }

    pub fn add(&self, other: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (p, c) in &other.0 {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> UeaElement {
        UeaElement(self.0.iter().map(|(p, v)| (p.clone(), v * c)).filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, p: &PbwMonomial) -> Rational {
        self.0.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, other: &UeaElement, lie: &GradedLieAlgebra) -> UeaElement {
        let mut orderer = PbwOrderer::new(lie);
        let mut out = UeaElement::zero();
        for (p, c) in &self.0 {
            for (q, d) in &other.0 {
                let mut w = p.word();
                w.extend(q.word());
                out = out.add(&orderer.order(&w).scale(&(c * d)));
            }
        }
        out
    }
}

/// Rewrites words into PBW form with `ξ_b ξ_a → ξ_a ξ_b + [ξ_b, ξ_a]` for `b > a`,
/// memoising intermediate words.
pub struct PbwOrderer<'a> {
    lie: &'a GradedLieAlgebra,
    memo: BTreeMap<Vec<usize>, UeaElement>,
}

impl<'a> PbwOrderer<'a> {
    pub fn new(lie: &'a GradedLieAlgebra) -> Self {
        PbwOrderer { lie, memo: BTreeMap::new() }
    }

    pub fn order(&mut self, word: &[usize]) -> UeaElement {
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let d = self.lie.dim();
        let result = match (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1]) {
            None => UeaElement::monomial(PbwMonomial::from_word(d, word), Rational::one()),
            Some(i) => {
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut out = self.order(&swapped);
                let br = self.lie.basis_bracket(word[i], word[i + 1]).clone();
                for (k, c) in br.support() {
                    let mut w = word[..i].to_vec();
                    w.push(k);
                    w.extend_from_slice(&word[i + 2..]);
                    out = out.add(&self.order(&w).scale(c));
                }
                out
            }
        };
        self.memo.insert(word.to_vec(), result.clone());
        result
    }
}

/// `[a_1, …, a_m]] = ad_{a_1} ⋯ ad_{a_{m−1}}(a_m)` for a word of basis indices.
pub fn complete_bracket_word(lie: &GradedLieAlgebra, word: &[usize]) -> LieElement {
    let d = lie.dim();
    let Some((&last, rest)) = word.split_last() else { return LieElement::zero(d) };
    let mut cur = LieElement::basis(d, last);
    for &a in rest.iter().rev() {
        cur = lie.bracket(&LieElement::basis(d, a), &cur);
    }
    cur
}

/// Complete bracket of the ordered word of a PBW monomial.
pub fn complete_bracket(lie: &GradedLieAlgebra, p: &PbwMonomial) -> LieElement {
    complete_bracket_word(lie, &p.word())
}

/// Complete bracket extended linearly to U(𝔲) in the PBW basis.
pub fn complete_bracket_uea(lie: &GradedLieAlgebra, x: &UeaElement) -> LieElement {
    let mut out = LieElement::zero(lie.dim());
    for (p, c) in &x.0 {
        out = out.add(&complete_bracket(lie, p).scale(c));
    }
    out
}
