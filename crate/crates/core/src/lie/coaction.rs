//! Coaction in exponential coordinates of the second kind, and the
//! comultiplication coefficients of the group law in those coordinates.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{pbw_monomials, DerivationAction, GradedLieAlgebra, PbwMonomial, PbwOrderer};
use crate::ring::{Monomial, Polynomial, Rational};

/// `f ↦ Σ_α u^α ⊗ f_α` with `f_α = ξ^α.f / α!`. Terms with `f_α = 0` are omitted;
/// `max_degree` caps the PBW degree explored (it is never reached for graded
/// actions on nonpositively graded rings, where nilpotency ends the sum).
pub fn coaction_expand(action: &DerivationAction, f: &Polynomial, max_degree: u32) -> Vec<(PbwMonomial, Polynomial)> {
    let d = action.lie().dim();
    let mut out = Vec::new();
    let mut exps = alloc::vec![0u32; d];
    expand(action, action.algebra().reduce(f), d, &mut exps, 0, max_degree, &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn expand(
    action: &DerivationAction,
    g: Polynomial,
    a: usize,
    exps: &mut Vec<u32>,
    deg: u32,
    cap: u32,
    out: &mut Vec<(PbwMonomial, Polynomial)>,
) {
    if g.is_zero() {
        return;
    }
    if a == 0 {
        let p = PbwMonomial(exps.clone());
        let c = p.factorial().recip();
        out.push((p, g.scale(&c)));
        return;
    }
    // exponents of later basis vectors act first
    let j = a - 1;
    let mut cur = g;
    let mut e = 0;
    while !cur.is_zero() && deg + e <= cap {
        exps[j] = e;
        expand(action, cur.clone(), j, exps, deg + e, cap, out);
        cur = action.apply_basis(j, &cur);
        e += 1;
    }
    exps[j] = 0;
}

/// Table of `c^α_{β,γ}`: the coefficient of `u^β ⊗ u^γ` in `μ*(u^α)`.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub dim: usize,
    pub degree: u32,
    /// `w_j(u, v)` in `2·dim` variables (`u` first): the group law.
    pub group_law: Vec<Polynomial>,
    pub entries: BTreeMap<(Vec<u32>, Vec<u32>, Vec<u32>), Rational>,
}

impl CoefficientTable {
    pub fn get(&self, alpha: &[u32], beta: &[u32], gamma: &[u32]) -> Rational {
        self.entries.get(&(alpha.to_vec(), beta.to_vec(), gamma.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Multi-indices on `n` letters with `|α| ≤ d`.
pub fn multi_indices(n: usize, d: u32) -> Vec<Vec<u32>> {
    super::free::exponent_vectors(n, d)
}

/// Computes the group law `exp-coordinates(u)·exp-coordinates(v)` and expands
/// `μ*(u^α) = Π_j w_j(u,v)^{α_j}` for `|α| ≤ degree`.
pub fn comult_coefficients(lie: &GradedLieAlgebra, degree: u32) -> CoefficientTable {
    let d = lie.dim();
    let n = 2 * d;
    let top = lie.level_weights().first().copied().unwrap_or(0);
    let mons = pbw_monomials(lie, top, u32::MAX);
    let mut orderer = PbwOrderer::new(lie);
    let mut law: Vec<Polynomial> = (0..d).map(|_| Polynomial::zero(n)).collect();
    for p in &mons {
        for q in &mons {
            if p.weight(lie) + q.weight(lie) > top {
                continue;
            }
            let mut w = p.word();
            w.extend(q.word());
            let prod = orderer.order(&w);
            let denom = p.factorial() * q.factorial();
            let mut e: Vec<u32> = p.0.clone();
            e.extend_from_slice(&q.0);
            let mon = Monomial::from_exps(&e);
            for j in 0..d {
                let c = prod.coefficient(&PbwMonomial::basis(d, j));
                if !c.is_zero() {
                    law[j].add_term(mon.clone(), c / &denom);
                }
            }
        }
    }
    let mut entries = BTreeMap::new();
    for alpha in multi_indices(d, degree) {
        let mut prod = Polynomial::one(n);
        for (j, &e) in alpha.iter().enumerate() {
            prod = &prod * &law[j].pow(e);
        }
        for (m, c) in prod.terms() {
            let (b, g) = m.exps().split_at(d);
            if b.iter().sum::<u32>() <= degree && g.iter().sum::<u32>() <= degree {
                entries.insert((alpha.clone(), b.to_vec(), g.to_vec()), c.clone());
            }
        }
    }
    CoefficientTable { dim: d, degree, group_law: law, entries }
}

/// Checks multiplicativity, the counit, the degree bound and the `γ = e_j`
/// trichotomy on the whole table; returns descriptions of failures.
pub fn check_comult_lemmas(t: &CoefficientTable) -> Vec<alloc::string::String> {
    use alloc::format;
    let d = t.dim;
    let idx = multi_indices(d, t.degree);
    let norm = |a: &[u32]| a.iter().sum::<u32>();
    let zero = alloc::vec![0u32; d];
    let mut fails = Vec::new();
    for a in &idx {
        for g in &idx {
            let want = if a == g { Rational::one() } else { Rational::zero() };
            if t.get(a, &zero, g) != want || t.get(a, g, &zero) != want {
                fails.push(format!("counit fails at α={a:?}, γ={g:?}"));
            }
        }
    }
    for ((a, b, g), c) in &t.entries {
        if !c.is_zero() && norm(a) > norm(b) + norm(g) {
            fails.push(format!("degree bound fails at α={a:?}, β={b:?}, γ={g:?}"));
        }
    }
    // multiplicativity over nonzero entries
    let mut by_alpha: BTreeMap<&Vec<u32>, Vec<(&Vec<u32>, &Vec<u32>, &Rational)>> = BTreeMap::new();
    for ((a, b, g), c) in &t.entries {
        by_alpha.entry(a).or_default().push((b, g, c));
    }
    for a1 in &idx {
        for a2 in &idx {
            let sum: Vec<u32> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
            if norm(&sum) > t.degree || a1 > a2 {
                continue;
            }
            let mut expect: BTreeMap<(Vec<u32>, Vec<u32>), Rational> = BTreeMap::new();
            for (b1, g1, c1) in by_alpha.get(a1).map(Vec::as_slice).unwrap_or(&[]) {
                for (b2, g2, c2) in by_alpha.get(a2).map(Vec::as_slice).unwrap_or(&[]) {
                    let b: Vec<u32> = b1.iter().zip(b2.iter()).map(|(x, y)| x + y).collect();
                    let g: Vec<u32> = g1.iter().zip(g2.iter()).map(|(x, y)| x + y).collect();
                    if norm(&b) <= t.degree && norm(&g) <= t.degree {
                        *expect.entry((b, g)).or_insert_with(Rational::zero) += *c1 * *c2;
                    }
                }
            }
            expect.retain(|_, v| !v.is_zero());
            let actual: BTreeMap<(Vec<u32>, Vec<u32>), Rational> = by_alpha
                .get(&sum)
                .map(Vec::as_slice)
                .unwrap_or(&[])
                .iter()
                .filter(|(_, _, c)| !c.is_zero())
                .map(|(b, g, c)| (((*b).clone(), (*g).clone()), (*c).clone()))
                .collect();
            if actual != expect {
                fails.push(format!("multiplicativity fails for α₁={a1:?}, α₂={a2:?}"));
            }
        }
    }
    for a in &idx {
        for b in &idx {
            if norm(a) != norm(b) + 1 {
                continue;
            }
            for j in 0..d {
                let mut ej = zero.clone();
                ej[j] = 1;
                let c = t.get(a, b, &ej);
                let is_sum = a.iter().zip(b).enumerate().all(|(i, (x, y))| *x == y + u32::from(i == j));
                let formula = Rational::from_integer((1 + b[j]).into());
                let ok = if is_sum { c == formula } else { c.is_zero() };
                if !ok {
                    fails.push(format!("e_j trichotomy fails at α={a:?}, β={b:?}, j={j}"));
                }
            }
        }
    }
    fails
}
