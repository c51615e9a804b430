//! Blow-up along the U-sweep of the bad stratum: centre, E-operators, the
//! `b` elements with their identities, affine charts `A[J/a]` and the
//! stabiliser condition on a chart.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::infinitesimal::{
    check_cdrs, fitting_chain, level_report, min_nonzero_fitting, relative_map, stabiliser_at_point, LevelReport, PointEval,
};
use crate::lie::{
    complete_bracket, complete_bracket_word, pbw_monomials, pbw_monomials_of_weight, Derivation, DerivationAction,
    LieElement, PbwMonomial, UeaElement, Violation,
};
use crate::ring::{int, lift, linalg, saturate, Ideal, Monomial, Polynomial, PresentedAlgebra, Rational, Variable};

/// `rel + ⟨generators of negative weight⟩`, i.e. the ideal of `A_{λ<0}`.
pub fn negative_part(alg: &PresentedAlgebra) -> Ideal {
    let n = alg.nvars();
    let w = alg.weights();
    alg.ideal((0..n).filter(|&v| w[v] < 0).map(|v| Polynomial::var(n, v)).collect())
}

fn fitting_ideals(action: &DerivationAction) -> (Vec<usize>, Vec<Ideal>) {
    let mut ks = Vec::new();
    let mut ideals = Vec::new();
    for i in 0..action.lie().nlevels() {
        let chain = fitting_chain(action, &relative_map(action, i));
        let k = min_nonzero_fitting(&chain);
        ideals.push(chain.ideal(k as i64).cloned().expect("k ≥ 0"));
        ks.push(k);
    }
    (ks, ideals)
}

fn product_of(alg: &PresentedAlgebra, ideals: &[Ideal]) -> Ideal {
    let n = alg.nvars();
    let mut acc = alg.ideal(vec![Polynomial::one(n)]);
    for i in ideals {
        acc = alg.relations().sum(&acc.product(i));
    }
    acc
}

/// Outcome of [`check_wuu`].
#[derive(Clone, Debug)]
pub struct WuuReport {
    pub holds: bool,
    pub k_vector: Vec<usize>,
    /// Generators of `𝓘 = Π Fit_{k_i}(φ_i)` (relations included).
    pub product_ideal: Vec<Polynomial>,
    /// A generator of `𝓘` of weight 0 that survives modulo `A_{λ<0}`.
    pub surviving_generator: Option<Polynomial>,
    /// A rational point of `Z` with `dim Stab_{𝔲_{≤i}} = k_1 + … + k_i`.
    pub witness: Option<PointEval>,
}

/// Decides whether the weight-0 part of `𝓘` is nonzero modulo
/// `relations + A_{λ<0}`. With `samples > 0` it also looks for a witness point
/// on the weight-0 locus, trying the all-ones point first.
pub fn check_wuu<R: rand::Rng>(action: &DerivationAction, samples: usize, rng: &mut R) -> WuuReport {
    let alg = action.algebra();
    let (k_vector, ideals) = fitting_ideals(action);
    let prod = product_of(alg, &ideals);
    let neg = negative_part(alg);
    let surviving_generator = prod.generators().iter().find(|g| !neg.contains(g)).cloned();
    let holds = surviving_generator.is_some();
    let mut witness = None;
    if holds && samples > 0 {
        let n = alg.nvars();
        let w = alg.weights();
        let gens: Vec<Polynomial> = prod.generators().iter().filter(|g| !alg.is_zero(g)).cloned().collect();
        let prefix: Vec<usize> =
            k_vector.iter().scan(0, |acc, k| {
                *acc += k;
                Some(*acc)
            }).collect();
        for s in 0..samples {
            let point: Vec<Rational> = (0..n)
                .map(|v| if w[v] < 0 { Rational::zero() } else if s == 0 { Rational::one() } else { int(rng.gen_range(-3..=3)) })
                .collect();
            let pt = PointEval(point);
            if pt.check(alg).is_err() || gens.iter().all(|g| g.eval(&pt.0).is_zero()) {
                continue;
            }
            let dims_ok = (0..action.lie().nlevels())
                .all(|i| stabiliser_at_point(action, i, &pt).map(|st| st.dim == prefix[i]).unwrap_or(false));
            if dims_ok {
                witness = Some(pt);
                break;
            }
        }
    }
    WuuReport { holds, k_vector, product_ideal: prod.generators().to_vec(), surviving_generator, witness }
}

/// Centre of the blow-up on one chart.
#[derive(Clone, Debug)]
pub struct CentreData {
    /// The action with each level's basis reordered so the chosen rows come first.
    pub action: DerivationAction,
    /// `permutation[new] = old` basis index.
    pub permutation: Vec<usize>,
    pub k_vector: Vec<usize>,
    /// `Fit_{k_i}(φ_i)` per level.
    pub fitting: Vec<Ideal>,
    /// `𝓘 = Π Fit_{k_i}(φ_i)`.
    pub product_ideal: Ideal,
    /// `I = 𝓘 + A_{λ<0}`.
    pub centre_ideal: Ideal,
    /// `f⁽ⁱ⁾_j ∈ A_{λ=−w_i}`.
    pub witnesses: Vec<Vec<Polynomial>>,
    /// `a⁽ⁱ⁾`: the top-left minor of `(ξ⁽ⁱ⁾_μ.f⁽ⁱ⁾_ν)`.
    pub minors: Vec<Polynomial>,
    /// `a = Π a⁽ⁱ⁾`.
    pub a: Polynomial,
}

impl CentreData {
    /// `r_i − k_i`.
    pub fn size(&self, level: usize) -> usize {
        self.witnesses[level].len()
    }

    /// Basis index of `ξ⁽ⁱ⁾_μ`.
    pub fn row(&self, level: usize, mu: usize) -> usize {
        self.action.lie().level_range(level).start + mu
    }

    fn algebra(&self) -> &PresentedAlgebra {
        self.action.algebra()
    }

    /// `Π_{lo ≤ i < hi} a⁽ⁱ⁾`.
    pub fn minor_product(&self, lo: usize, hi: usize) -> Polynomial {
        let n = self.algebra().nvars();
        let p = (lo..hi).fold(Polynomial::one(n), |acc, i| &acc * &self.minors[i]);
        self.algebra().reduce(&p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentreError {
    #[error("the stabiliser condition already holds; no blow-up needed")]
    NoBlowupNeeded,
    #[error("the weight-0 part of the product of Fitting ideals vanishes modulo A_<0; no chart of the nice locus exists")]
    WuuFails,
    #[error("the ring has a generator of positive weight")]
    PositiveWeights,
    #[error("level {level}: no minor of degree <= {bound} survives modulo A_<0")]
    NoMinor { level: usize, bound: u32 },
    #[error("the product of the chosen minors lies in A_<0")]
    ProductVanishes,
}

/// Selects witnesses `f⁽ⁱ⁾` level by level: tuples of standard monomials of
/// weight `−w_i` by increasing degree, then row subsets, first minor outside
/// `A_{λ<0}` wins.
pub fn centre(action: &DerivationAction, degree_bound: u32) -> Result<CentreData, CentreError> {
    let alg = action.algebra();
    if !alg.ring().all_nonpositive() {
        return Err(CentreError::PositiveWeights);
    }
    if check_cdrs(action).holds() {
        return Err(CentreError::NoBlowupNeeded);
    }
    let (k_vector, fitting) = fitting_ideals(action);
    let product_ideal = product_of(alg, &fitting);
    let neg = negative_part(alg);
    if product_ideal.generators().iter().all(|g| neg.contains(g)) {
        return Err(CentreError::WuuFails);
    }
    let lie = action.lie();
    let n = alg.nvars();
    let mut permutation = Vec::new();
    let mut witnesses = Vec::new();
    let mut minors = Vec::new();
    for (i, &k) in k_vector.iter().enumerate() {
        let range = lie.level_range(i);
        let r = range.len();
        let s = r - k;
        if s == 0 {
            permutation.extend(range);
            witnesses.push(Vec::new());
            minors.push(Polynomial::one(n));
            continue;
        }
        let w = lie.level_weights()[i];
        let found = select_minor(action, i, s, -w, degree_bound, &neg, &fitting[i]);
        let Some((rows, fs, minor)) = found else {
            return Err(CentreError::NoMinor { level: i, bound: degree_bound });
        };
        permutation.extend(rows.iter().map(|&t| range.start + t));
        permutation.extend(range.clone().filter(|a| !rows.contains(&(a - range.start))));
        witnesses.push(fs);
        minors.push(minor);
    }
    let a = alg.reduce(&minors.iter().fold(Polynomial::one(n), |acc, m| &acc * m));
    if neg.contains(&a) {
        return Err(CentreError::ProductVanishes);
    }
    let centre_ideal = product_ideal.sum(&neg);
    Ok(CentreData {
        action: action.permuted(&permutation),
        permutation,
        k_vector,
        fitting,
        product_ideal,
        centre_ideal,
        witnesses,
        minors,
        a,
    })
}

fn select_minor(
    action: &DerivationAction,
    level: usize,
    s: usize,
    weight: i64,
    bound: u32,
    neg: &Ideal,
    fit: &Ideal,
) -> Option<(Vec<usize>, Vec<Polynomial>, Polynomial)> {
    let alg = action.algebra();
    let n = alg.nvars();
    let range = action.lie().level_range(level);
    let cands = alg.standard_monomials_of_weight(weight, bound);
    let polys: Vec<Polynomial> = cands.iter().map(|m| Polynomial::term(m.clone(), Rational::one())).collect();
    let images: Vec<Vec<Polynomial>> = polys.iter().map(|f| range.clone().map(|a| action.apply_basis(a, f)).collect()).collect();
    for d in 0..=bound {
        let upto = cands.iter().take_while(|m| m.degree() <= d).count();
        for cols in linalg::combinations(upto, s) {
            if cols.iter().all(|&c| cands[c].degree() < d) {
                continue;
            }
            for rows in linalg::combinations(range.len(), s) {
                let mat: Vec<Vec<Polynomial>> =
                    rows.iter().map(|&t| cols.iter().map(|&c| images[c][t].clone()).collect()).collect();
                let minor = alg.reduce(&linalg::det(&mat, n));
                if !minor.is_zero() && !neg.contains(&minor) && fit.contains(&minor) {
                    let fs = cols.iter().map(|&c| polys[c].clone()).collect();
                    return Some((rows, fs, minor));
                }
            }
        }
    }
    None
}

/// Certificate that `g ∉ J`: some `ξ^p.g` escapes the centre ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JWitness {
    pub monomial: PbwMonomial,
    pub image: Polynomial,
}

/// `g ∈ J` iff `ξ^p.g ∈ I` for every PBW monomial `p`; only `p` of weight at
/// most `−min weight(g)` can act nonzero. Returns the number of monomials
/// checked, or the first escaping one (ordered by weight, then degree).
pub fn j_membership(action: &DerivationAction, ideal: &Ideal, g: &Polynomial) -> Result<usize, JWitness> {
    let alg = action.algebra();
    let g = alg.reduce(g);
    let Some(mw) = g.min_weight(&alg.weights()) else { return Ok(0) };
    let top = (-mw).max(0);
    let ps = pbw_monomials(action.lie(), top, top as u32);
    for p in &ps {
        let image = action.apply_pbw(p, &g);
        if !ideal.contains(&image) {
            return Err(JWitness { monomial: p.clone(), image });
        }
    }
    Ok(ps.len())
}

/// `E⁽ⁱ⁾_μ(x)`: the determinant of `(ξ⁽ⁱ⁾_ρ.f⁽ⁱ⁾_ν)` with row `μ` replaced by `(x.f⁽ⁱ⁾_ν)`.
pub fn e_operator(centre: &CentreData, level: usize, mu: usize, x: &UeaElement) -> Polynomial {
    let act = &centre.action;
    let n = act.algebra().nvars();
    let fs = &centre.witnesses[level];
    let mat: Vec<Vec<Polynomial>> = (0..fs.len())
        .map(|rho| {
            fs.iter()
                .map(|f| if rho == mu { act.apply_uea(x, f) } else { act.apply_basis(centre.row(level, rho), f) })
                .collect()
        })
        .collect();
    act.algebra().reduce(&linalg::det(&mat, n))
}

fn e_lie(centre: &CentreData, level: usize, mu: usize, x: &LieElement) -> Polynomial {
    e_operator(centre, level, mu, &UeaElement::from_lie(x))
}

fn e_scalar(centre: &CentreData, level: usize, mu: usize, c: i64) -> Polynomial {
    e_operator(centre, level, mu, &UeaElement::scalar(centre.action.lie().dim(), int(c)))
}

/// `Σ_μ (ξ⁽ⁱ⁾_μ.h)·E⁽ⁱ⁾_μ(x) = (x.h)·a⁽ⁱ⁾` for `h` of weight `−w_i` and `x` of weight `w_i`.
pub fn verify_determinantal_sum(centre: &CentreData, level: usize, h: &Polynomial, x: &LieElement) -> bool {
    let act = &centre.action;
    let alg = act.algebra();
    let n = alg.nvars();
    let lhs = (0..centre.size(level)).fold(Polynomial::zero(n), |acc, mu| {
        acc + &act.apply_basis(centre.row(level, mu), h) * &e_lie(centre, level, mu, x)
    });
    let rhs = &act.apply_derivation(x, h) * &centre.minors[level];
    alg.is_zero(&(lhs - rhs))
}

/// `b⁽ⁱ⁾_μ` per level and the `J`-generators `(Π_{i′<i} a⁽ⁱ′⁾)·b⁽ⁱ⁾_μ`.
#[derive(Clone, Debug)]
pub struct BElements {
    pub b: Vec<Vec<Polynomial>>,
    pub scaled: Vec<Vec<Polynomial>>,
    /// `E⁽ⁱ⁾_μ(w_i)` used in the recursion.
    pub e_values: Vec<Vec<Polynomial>>,
    /// Number of identity instances verified (δ-identity, Fitting membership,
    /// J-membership orbit elements).
    pub checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BError {
    #[error("level {level}: ξ_{mu}.b_{nu} = {got}, expected w·δ·Π a")]
    Delta { level: usize, mu: usize, nu: usize, got: String },
    #[error("level {level}: ξ^{monomial:?}.b_{mu} is not in the product of Fitting ideals")]
    Fitting { level: usize, mu: usize, monomial: PbwMonomial },
    #[error("level {level}: scaled b_{mu} is not in J ({witness:?})")]
    NotInJ { level: usize, mu: usize, witness: JWitness },
}

/// The recursion `b⁽ⁱ⁾_μ = E⁽ⁱ⁾_μ(w_i) Π_{i′>i} a⁽ⁱ′⁾ − Σ_{i′>i} Σ_ρ E⁽ⁱ⁾_μ(ξ⁽ⁱ′⁾_ρ) Π_{i<i″<i′} a⁽ⁱ″⁾ b⁽ⁱ′⁾_ρ`,
/// followed by exact verification of its three defining properties.
pub fn construct_b(centre: &CentreData) -> Result<BElements, BError> {
    let act = &centre.action;
    let alg = act.algebra();
    let lie = act.lie();
    let nl = lie.nlevels();
    let n = alg.nvars();
    let weights = lie.level_weights().to_vec();
    let mut b: Vec<Vec<Polynomial>> = vec![Vec::new(); nl];
    let mut e_values: Vec<Vec<Polynomial>> = vec![Vec::new(); nl];
    for i in (0..nl).rev() {
        for mu in 0..centre.size(i) {
            let e = e_scalar(centre, i, mu, weights[i]);
            let mut v = &e * &centre.minor_product(i + 1, nl);
            for j in i + 1..nl {
                for rho in 0..centre.size(j) {
                    let x = LieElement::basis(lie.dim(), centre.row(j, rho));
                    let term = &(&e_lie(centre, i, mu, &x) * &centre.minor_product(i + 1, j)) * &b[j][rho];
                    v = v - term;
                }
            }
            b[i].push(alg.reduce(&v));
            e_values[i].push(e);
        }
    }
    let scaled: Vec<Vec<Polynomial>> =
        (0..nl).map(|i| b[i].iter().map(|bi| alg.reduce(&(&centre.minor_product(0, i) * bi))).collect()).collect();
    let mut checked = 0;
    for i in 0..nl {
        let tail = centre.minor_product(i, nl);
        let fit_tail = product_of(alg, &centre.fitting[i..]);
        let ps = pbw_monomials_of_weight(lie, weights[i], weights[i] as u32);
        for (nu, bv) in b[i].iter().enumerate() {
            for mu in 0..centre.size(i) {
                let got = act.apply_basis(centre.row(i, mu), bv);
                let want = if mu == nu { tail.scale(&int(weights[i])) } else { Polynomial::zero(n) };
                if !alg.is_zero(&(&got - &want)) {
                    return Err(BError::Delta { level: i, mu, nu, got: alg.show(&got) });
                }
                checked += 1;
            }
            for p in &ps {
                if !fit_tail.contains(&act.apply_pbw(p, bv)) {
                    return Err(BError::Fitting { level: i, mu: nu, monomial: p.clone() });
                }
                checked += 1;
            }
            checked += j_membership(act, &centre.centre_ideal, &scaled[i][nu])
                .map_err(|witness| BError::NotInJ { level: i, mu: nu, witness })?;
        }
    }
    Ok(BElements { b, scaled, e_values, checked })
}

/// `β⁽ⁱ⁾_μ(ξ^p)` by its recursion over the lower levels, using complete brackets.
pub fn beta(centre: &CentreData, level: usize, mu: usize, p: &PbwMonomial) -> Polynomial {
    let act = &centre.action;
    let alg = act.algebra();
    let lie = act.lie();
    let nl = lie.nlevels();
    let n = alg.nvars();
    let Some(top) = p.last_level(lie) else { return Polynomial::zero(n) };
    let wmax = lie.level_weights()[top];
    let head = e_lie(centre, level, mu, &complete_bracket(lie, p).scale(&int(wmax)));
    let mut out = &head * &centre.minor_product(level + 1, nl);
    for j in level + 1..nl {
        let wj = lie.level_weights()[j];
        for q in p.divisors() {
            if q.weight(lie) != wj {
                continue;
            }
            let rest = p.checked_sub(&q).expect("q divides p");
            let coeff = p.binomial(&q);
            for rho in 0..centre.size(j) {
                // the word ξ^{p−q} followed by ξ_ρ, bracketed as written (not PBW-reordered)
                let mut word = rest.word();
                word.push(centre.row(j, rho));
                let e = e_lie(centre, level, mu, &complete_bracket_word(lie, &word));
                let term = &(&e * &centre.minor_product(level + 1, j)) * &beta(centre, j, rho, &q);
                out = out - term.scale(&coeff);
            }
        }
    }
    alg.reduce(&out)
}

/// Compares `ξ^p.b⁽ⁱ⁾_μ` with `β⁽ⁱ⁾_μ(ξ^p)` for `p` of weight `w_i`.
pub fn beta_check(centre: &CentreData, bs: &BElements, level: usize, mu: usize, p: &PbwMonomial) -> bool {
    let act = &centre.action;
    let lhs = act.apply_pbw(p, &bs.b[level][mu]);
    act.algebra().is_zero(&(lhs - beta(centre, level, mu, p)))
}

/// Every PBW monomial of weight `w_i`, for every level and row. Returns the
/// number of instances and the failing ones.
pub fn beta_check_all(centre: &CentreData, bs: &BElements) -> (usize, Vec<(usize, usize, PbwMonomial)>) {
    let lie = centre.action.lie();
    let mut count = 0;
    let mut failures = Vec::new();
    for i in 0..lie.nlevels() {
        let w = lie.level_weights()[i];
        for p in pbw_monomials_of_weight(lie, w, w as u32) {
            for mu in 0..centre.size(i) {
                count += 1;
                if !beta_check(centre, bs, i, mu, &p) {
                    failures.push((i, mu, p.clone()));
                }
            }
        }
    }
    (count, failures)
}

/// Extra members of `J` found by linear algebra on each weight piece of the
/// standard monomials of degree ≤ `max_degree`, skipping those already in the
/// ideal generated by `known`.
pub fn j_search(centre: &CentreData, known: &[Polynomial], max_degree: u32) -> Vec<Polynomial> {
    let act = &centre.action;
    let alg = act.algebra();
    let n = alg.nvars();
    let w = alg.weights();
    let mut pieces: Vec<(i64, Vec<Monomial>)> = Vec::new();
    for m in alg.standard_monomials(max_degree) {
        let wt = m.weight(&w);
        match pieces.iter_mut().find(|(x, _)| *x == wt) {
            Some((_, v)) => v.push(m),
            None => pieces.push((wt, vec![m])),
        }
    }
    pieces.sort_by(|a, b| b.0.cmp(&a.0));
    let mut have = alg.ideal(known.to_vec());
    let mut out = Vec::new();
    for (wt, monos) in pieces {
        let top = (-wt).max(0);
        let ps = pbw_monomials(act.lie(), top, top as u32);
        let mut eqs: Vec<(usize, Monomial)> = Vec::new();
        let images: Vec<Vec<Polynomial>> = monos
            .iter()
            .map(|m| {
                let f = Polynomial::term(m.clone(), Rational::one());
                ps.iter().map(|p| centre.centre_ideal.normal_form(&act.apply_pbw(p, &f))).collect()
            })
            .collect();
        for per in &images {
            for (k, img) in per.iter().enumerate() {
                for (m, _) in img.terms() {
                    if !eqs.iter().any(|(a, b)| *a == k && b == m) {
                        eqs.push((k, m.clone()));
                    }
                }
            }
        }
        let mat: Vec<Vec<Rational>> = eqs.iter().map(|(k, m)| images.iter().map(|per| per[*k].coefficient(m)).collect()).collect();
        let basis = if mat.is_empty() {
            (0..monos.len())
                .map(|j| (0..monos.len()).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect()
        } else {
            linalg::nullspace(&mat, monos.len())
        };
        for v in basis {
            let g = alg.reduce(&Polynomial::from_terms(n, monos.iter().cloned().zip(v)));
            if g.is_zero() || have.contains(&g) {
                continue;
            }
            have = have.with_generators([g.clone()]);
            out.push(g);
        }
    }
    out
}

/// One affine chart `A[J/a]` of the blow-up.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub a: Polynomial,
    /// The generators of `J` used, `a` first; closed under the action.
    pub generators: Vec<Polynomial>,
    /// Name given to `g/a` for each generator after the first.
    pub fraction_names: Vec<String>,
    /// The chart action (same Lie algebra as the centre's action).
    pub action: DerivationAction,
    /// Each base generator, then each fraction `g/a`, written in the chart generators.
    pub images: Vec<Polynomial>,
    /// Index into `generators` of each scaled `b⁽ⁱ⁾_μ`.
    pub b_index: Vec<Vec<usize>>,
}

impl BlowupChart {
    /// `g_j/a` in the chart generators (`j = 0` is `a/a = 1`).
    pub fn fraction(&self, j: usize) -> Polynomial {
        let nbase = self.images.len() - (self.generators.len() - 1);
        if j == 0 {
            Polynomial::one(self.action.algebra().nvars())
        } else {
            self.images[nbase + j - 1].clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("a is not a weight-0 member of J ({0})")]
    CentreNotInJ(String),
    #[error("generator {0} is not in J")]
    NotInJ(String),
    #[error("the chart is the zero ring")]
    EmptyChart,
    #[error("the extended derivations are invalid ({} violations)", .0.len())]
    Invalid(Vec<Violation>),
}

/// `A[J/a]` presented by adjoining `t_g = g/a` with `a·t_g − g`, saturating by
/// `a`, and dropping generators solved linearly. `ξ.t_g = (ξ.g)/a` is written
/// through the cofactors of `ξ.g` in the generator list.
pub fn build_chart(centre: &CentreData, bs: &BElements, extra: &[Polynomial]) -> Result<BlowupChart, ChartError> {
    let act = &centre.action;
    let alg = act.algebra();
    let n = alg.nvars();
    let w = alg.weights();
    let a = centre.a.clone();
    if a.homogeneous_weight(&w) != Some(0) || j_membership(act, &centre.centre_ideal, &a).is_err() {
        return Err(ChartError::CentreNotInJ(alg.show(&a)));
    }
    let mut gens = vec![a.clone()];
    let mut b_index = Vec::new();
    for level in &bs.scaled {
        let mut idx = Vec::new();
        for g in level {
            idx.push(gens.len());
            gens.push(g.clone());
        }
        b_index.push(idx);
    }
    for g in extra {
        if j_membership(act, &centre.centre_ideal, g).is_err() {
            return Err(ChartError::NotInJ(alg.show(g)));
        }
        gens.push(alg.reduce(g));
    }
    // close under the action: J is U-stable, so ξ.g ∈ J
    let mut at = 0;
    while at < gens.len() {
        for x in 0..act.lie().dim() {
            let h = act.apply_basis(x, &gens[at]);
            if !h.is_zero() && !alg.ideal(gens.clone()).contains(&h) {
                gens.push(h);
            }
        }
        at += 1;
    }
    let mut with_rel = gens.clone();
    with_rel.extend(alg.relations().generators().iter().cloned());
    let m = gens.len() - 1;
    let big = n + m;
    // fraction of Σ c_h h over a: Σ c_h t_h with t_a = 1
    let fraction = |p: &Polynomial| -> Polynomial {
        let cof = lift(n, &with_rel, p, alg.ring().order()).expect("closed generator list");
        let mut out = Polynomial::zero(big);
        for (j, c) in cof.iter().take(gens.len()).enumerate() {
            let t = if j == 0 { Polynomial::one(big) } else { Polynomial::var(big, n + j - 1) };
            out = out + &c.extend(big) * &t;
        }
        out
    };
    let taken: Vec<String> = alg.names();
    let mut fraction_names = Vec::new();
    let mut extra_vars = Vec::new();
    for (j, g) in gens.iter().enumerate().skip(1) {
        let mut name = format!("t{j}");
        while taken.contains(&name) {
            name.push('\'');
        }
        extra_vars.push(Variable { name: name.clone(), weight: g.homogeneous_weight(&w).unwrap_or(0) });
        fraction_names.push(name);
    }
    let ring = alg.ring().extended(&extra_vars);
    let mut rels: Vec<Polynomial> = alg.relations().generators().iter().map(|r| r.extend(big)).collect();
    for (j, g) in gens.iter().enumerate().skip(1) {
        rels.push(&a.extend(big) * &Polynomial::var(big, n + j - 1) - g.extend(big));
    }
    let sat = saturate(&Ideal::new(big, rels, ring.order().clone()), &a.extend(big));
    let presented = PresentedAlgebra::new(ring, sat.generators().to_vec());
    if presented.is_zero_ring() {
        return Err(ChartError::EmptyChart);
    }
    let mut table: Vec<Vec<Polynomial>> = Vec::new();
    for x in 0..act.lie().dim() {
        let mut row: Vec<Polynomial> = act.derivation(x).images.iter().map(|p| p.extend(big)).collect();
        for g in gens.iter().skip(1) {
            row.push(fraction(&act.apply_basis(x, g)));
        }
        table.push(row);
    }
    let simple = presented.drop_linear_generators();
    let chart_alg = simple.algebra;
    let derivations: Vec<Derivation> = table
        .iter()
        .map(|row| Derivation {
            images: simple.kept.iter().map(|&o| chart_alg.reduce(&row[o].substitute(&simple.images))).collect(),
        })
        .collect();
    let chart_action = DerivationAction::with_parts(chart_alg, act.lie().clone(), derivations);
    let violations = chart_action.validate();
    if !violations.is_empty() {
        return Err(ChartError::Invalid(violations));
    }
    Ok(BlowupChart { a, generators: gens, fraction_names, action: chart_action, images: simple.images, b_index })
}

/// `A → A[J/a]` kills the relations and commutes with every derivation on generators.
pub fn chart_consistent(centre: &CentreData, chart: &BlowupChart) -> bool {
    let base = &centre.action;
    let ch = &chart.action;
    let n = base.algebra().nvars();
    let img = &chart.images[..n];
    let rel_ok = base.algebra().relations().generators().iter().all(|r| ch.algebra().is_zero(&r.substitute(img)));
    let der_ok = (0..base.lie().dim()).all(|x| {
        (0..n).all(|v| {
            let lhs = ch.apply_basis(x, &img[v]);
            let rhs = base.derivation(x).images[v].substitute(img);
            ch.algebra().is_zero(&(lhs - rhs))
        })
    });
    let frac_ok = (1..chart.generators.len())
        .all(|j| ch.algebra().is_zero(&(&chart.a.substitute(img) * &chart.fraction(j) - chart.generators[j].substitute(img))));
    rel_ok && der_ok && frac_ok
}

/// Stabiliser condition on a chart at the original `k_i`, with the pairing
/// matrices `ξ⁽ⁱ⁾_μ.(c⁽ⁱ⁾_ν/a)` that should equal `w_i·Id`.
#[derive(Clone, Debug)]
pub struct ChartReport {
    pub levels: Vec<LevelReport>,
    pub certificates: Vec<Vec<Vec<Polynomial>>>,
    pub certificate_ok: Vec<bool>,
}

impl ChartReport {
    pub fn passes(&self) -> bool {
        self.levels.iter().all(|l| l.fit_below_zero && l.fit_unit) && self.certificate_ok.iter().all(|&b| b)
    }
}

pub fn verify_chart_cdrs(centre: &CentreData, chart: &BlowupChart) -> ChartReport {
    let act = &chart.action;
    let alg = act.algebra();
    let n = alg.nvars();
    let lie = act.lie();
    let mut levels = Vec::new();
    let mut certificates = Vec::new();
    let mut certificate_ok = Vec::new();
    for (i, &k) in centre.k_vector.iter().enumerate() {
        let chain = fitting_chain(act, &relative_map(act, i));
        levels.push(level_report(i, &chain, Some(k)));
        let s = centre.size(i);
        let w = lie.level_weights()[i];
        let mat: Vec<Vec<Polynomial>> = (0..s)
            .map(|mu| (0..s).map(|nu| act.apply_basis(centre.row(i, mu), &chart.fraction(chart.b_index[i][nu]))).collect())
            .collect();
        let ok = mat.iter().enumerate().all(|(mu, row)| {
            row.iter().enumerate().all(|(nu, e)| {
                let want = if mu == nu { Polynomial::constant(n, int(w)) } else { Polynomial::zero(n) };
                alg.is_zero(&(e - &want))
            })
        });
        certificates.push(mat);
        certificate_ok.push(ok);
    }
    ChartReport { levels, certificates, certificate_ok }
}
