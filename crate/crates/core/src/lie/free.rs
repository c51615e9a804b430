//! Free associative algebra on numbered letters, used to check the two
//! complete-bracket identities by brute-force expansion.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::ring::{binomial, Rational};

/// A word in the free algebra: a sequence of letter indices.
pub type FreeWord = Vec<u8>;

/// Noncommutative polynomial: words with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreePoly(pub BTreeMap<FreeWord, Rational>);

impl FreePoly {
    pub fn word(w: FreeWord) -> Self {
        let mut p = FreePoly::default();
        p.0.insert(w, Rational::one());
        p
    }

    fn add_term(&mut self, w: FreeWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> FreePoly {
        let mut out = FreePoly::default();
        for (w, v) in &self.0 {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut out = FreePoly::default();
        for (a, c) in &self.0 {
            for (b, d) in &other.0 {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, c * d);
            }
        }
        out
    }

    pub fn commutator(&self, other: &FreePoly) -> FreePoly {
        self.mul(other).add(&other.mul(self).scale(&-Rational::one()))
    }
}

/// `[a_1, …, a_m]]` computed in the free algebra.
pub fn free_complete_bracket(word: &[u8]) -> FreePoly {
    let Some((&last, rest)) = word.split_last() else { return FreePoly::default() };
    let mut cur = FreePoly::word(alloc::vec![last]);
    for &a in rest.iter().rev() {
        cur = FreePoly::word(alloc::vec![a]).commutator(&cur);
    }
    cur
}

/// `y^k = y_1^{k_1} ⋯ y_n^{k_n}` as a word.
fn power_word(k: &[u32], offset: u8) -> FreeWord {
    let mut w = Vec::new();
    for (i, &e) in k.iter().enumerate() {
        for _ in 0..e {
            w.push(i as u8 + offset);
        }
    }
    w
}

/// All `s` with `0 ≤ s ≤ k` componentwise.
fn below(k: &[u32]) -> Vec<Vec<u32>> {
    let mut out = alloc::vec![Vec::new()];
    for &e in k {
        out = out
            .into_iter()
            .flat_map(|s: Vec<u32>| {
                (0..=e).map(move |v| {
                    let mut s = s.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

fn multi_binomial(k: &[u32], s: &[u32]) -> Rational {
    k.iter().zip(s).map(|(&n, &m)| binomial(n, m)).fold(Rational::one(), |a, b| a * b)
}

/// Why an identity check did not pass.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IdentityFailure {
    #[error("|k| = {0} exceeds the degree cap {1}")]
    OverCap(u32, u32),
    #[error("weights and exponents have different lengths")]
    Shape,
    #[error("coefficient of word {word:?} differs: lhs {lhs}, rhs {rhs}")]
    Mismatch { word: FreeWord, lhs: Rational, rhs: Rational },
}

fn compare(lhs: &FreePoly, rhs: &FreePoly) -> Result<(), IdentityFailure> {
    let diff = lhs.add(&rhs.scale(&-Rational::one()));
    match diff.0.keys().next() {
        None => Ok(()),
        Some(w) => Err(IdentityFailure::Mismatch {
            word: w.clone(),
            lhs: lhs.0.get(w).cloned().unwrap_or_else(Rational::zero),
            rhs: rhs.0.get(w).cloned().unwrap_or_else(Rational::zero),
        }),
    }
}

/// `(Σ k_i w_i)·y^k = Σ_{0<s≤k} C(k,s)·w_{max{i: s_i≠0}}·[y^s]]·y^{k−s}`.
pub fn verify_weighted_bracket_identity(weights: &[Rational], k: &[u32], degree_cap: u32) -> Result<(), IdentityFailure> {
    if weights.len() != k.len() {
        return Err(IdentityFailure::Shape);
    }
    let total: u32 = k.iter().sum();
    if total > degree_cap {
        return Err(IdentityFailure::OverCap(total, degree_cap));
    }
    let scale: Rational = k.iter().zip(weights).map(|(&e, w)| w * Rational::from_integer(e.into())).sum();
    let lhs = FreePoly::word(power_word(k, 0)).scale(&scale);
    let mut rhs = FreePoly::default();
    for s in below(k) {
        let Some(top) = s.iter().rposition(|&e| e > 0) else { continue };
        let rest: Vec<u32> = k.iter().zip(&s).map(|(a, b)| a - b).collect();
        let term = free_complete_bracket(&power_word(&s, 0)).mul(&FreePoly::word(power_word(&rest, 0)));
        rhs = rhs.add(&term.scale(&(multi_binomial(k, &s) * &weights[top])));
    }
    compare(&lhs, &rhs)
}

/// `x^k·y = Σ_{0≤s≤k} C(k,s)·[x^{k−s} y]]·x^s`, with `y` the letter after the `x`s.
pub fn verify_commutator_identity(k: &[u32], degree_cap: u32) -> Result<(), IdentityFailure> {
    let total: u32 = k.iter().sum();
    if total > degree_cap {
        return Err(IdentityFailure::OverCap(total, degree_cap));
    }
    let y = k.len() as u8;
    let mut lw = power_word(k, 0);
    lw.push(y);
    let lhs = FreePoly::word(lw);
    let mut rhs = FreePoly::default();
    for s in below(k) {
        let rest: Vec<u32> = k.iter().zip(&s).map(|(a, b)| a - b).collect();
        let mut bw = power_word(&rest, 0);
        bw.push(y);
        let term = free_complete_bracket(&bw).mul(&FreePoly::word(power_word(&s, 0)));
        rhs = rhs.add(&term.scale(&multi_binomial(k, &s)));
    }
    compare(&lhs, &rhs)
}

/// Every exponent vector with `n` entries and `|k| ≤ max_total`.
pub fn exponent_vectors(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    below(&alloc::vec![max_total; n]).into_iter().filter(|k| k.iter().sum::<u32>() <= max_total).collect()
}
