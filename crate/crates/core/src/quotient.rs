//! Slices, the Dixmier projection and the staged invariant quotient along the
//! weight filtration.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::infinitesimal::{check_cdrs, fitting_chain, fitting_chain_of_matrix, min_nonzero_fitting, relative_map, CdrsReport};
use crate::lie::{Derivation, DerivationAction, Violation};
use crate::ring::{
    eliminate, factorial, linalg, Ideal, Monomial, MonomialOrder, Polynomial, PresentedAlgebra, Rational,
};

/// Functions `f_ν` of weight `−w_i` with `ξ_μ.f_ν = δ_{μν}` for the chosen rows.
#[derive(Clone, Debug)]
pub struct SliceSet {
    pub level: usize,
    /// Basis vectors spanning the complement of the generic stabiliser (`𝔲′`).
    pub rows: Vec<usize>,
    /// The remaining basis vectors of the level (`𝔰`).
    pub complement: Vec<usize>,
    pub functions: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceFailure {
    #[error("level {level}: Fit_{k} is not the unit ideal, so no slices exist")]
    ConditionFails { level: usize, k: usize },
    #[error("level {level}: a lower level fails the Fitting condition")]
    LowerLevel { level: usize },
    #[error("level {level}: no coordinate subset of the level spans a unit minor ideal")]
    NoCoordinateSplit { level: usize },
    #[error("level {level}: no slice of degree <= {bound} exists")]
    BoundExhausted { level: usize, bound: u32 },
    #[error("level {level}: the ring has positive weights, slices are not bounded")]
    PositiveWeights { level: usize },
}

/// Finds slices for `level`, trying the smallest degree first.
pub fn find_slices(action: &DerivationAction, level: usize, degree_bound: u32) -> Result<SliceSet, SliceFailure> {
    let alg = action.algebra();
    if !alg.ring().all_nonpositive() {
        return Err(SliceFailure::PositiveWeights { level });
    }
    for lower in 0..level {
        let c = fitting_chain(action, &relative_map(action, lower));
        if !c.is_unit(min_nonzero_fitting(&c) as i64) {
            return Err(SliceFailure::LowerLevel { level });
        }
    }
    let map = relative_map(action, level);
    let chain = fitting_chain(action, &map);
    let k = min_nonzero_fitting(&chain);
    if !chain.is_unit(k as i64) {
        return Err(SliceFailure::ConditionFails { level, k });
    }
    let r = map.target_rank();
    let size = r - k;
    let level_rows: Vec<usize> = action.lie().level_range(level).collect();
    let chosen = linalg::combinations(r, size)
        .into_iter()
        .find(|t| {
            let sub: Vec<Vec<Polynomial>> = t.iter().map(|&i| map.matrix[i].clone()).collect();
            fitting_chain_of_matrix(alg, &sub, map.ncols()).is_unit(0)
        })
        .ok_or(SliceFailure::NoCoordinateSplit { level })?;
    let rows: Vec<usize> = chosen.iter().map(|&i| level_rows[i]).collect();
    let complement: Vec<usize> = level_rows.iter().copied().filter(|a| !rows.contains(a)).collect();
    let w = action.lie().level_weights()[level];
    let mut functions = Vec::new();
    for nu in 0..size {
        let f = (0..=degree_bound)
            .find_map(|d| solve_slice(action, &rows, nu, -w, d))
            .ok_or(SliceFailure::BoundExhausted { level, bound: degree_bound })?;
        functions.push(f);
    }
    Ok(SliceSet { level, rows, complement, functions })
}

/// Solves `ξ_μ.f = δ_{μν}` over standard monomials of weight `weight`, degree ≤ `d`.
fn solve_slice(action: &DerivationAction, rows: &[usize], nu: usize, weight: i64, d: u32) -> Option<Polynomial> {
    let alg = action.algebra();
    let cands = alg.standard_monomials_of_weight(weight, d);
    if cands.is_empty() {
        return None;
    }
    let n = alg.nvars();
    let images: Vec<Vec<Polynomial>> = cands
        .iter()
        .map(|m| rows.iter().map(|&a| action.apply_basis(a, &Polynomial::term(m.clone(), Rational::one()))).collect())
        .collect();
    let mut eqs: Vec<(usize, Monomial)> = Vec::new();
    for per in &images {
        for (mu, p) in per.iter().enumerate() {
            for (m, _) in p.terms() {
                if !eqs.iter().any(|(a, b)| *a == mu && b == m) {
                    eqs.push((mu, m.clone()));
                }
            }
        }
    }
    let one = Monomial::one(n);
    for mu in 0..rows.len() {
        if !eqs.iter().any(|(a, b)| *a == mu && *b == one) {
            eqs.push((mu, one.clone()));
        }
    }
    let mat: Vec<Vec<Rational>> = eqs.iter().map(|(mu, m)| images.iter().map(|per| per[*mu].coefficient(m)).collect()).collect();
    let rhs: Vec<Rational> =
        eqs.iter().map(|(mu, m)| if *mu == nu && *m == one { Rational::one() } else { Rational::zero() }).collect();
    let x = linalg::solve(&mat, &rhs, cands.len())?;
    let f = Polynomial::from_terms(n, cands.into_iter().zip(x));
    Some(alg.reduce(&f))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("derivations {0} and {1} do not commute on generator {2}")]
    NotCommuting(usize, usize, usize),
    #[error("derivation {0} applied to slice {1} is not the Kronecker delta")]
    NotDelta(usize, usize),
    #[error("derivation {0} is not nilpotent within {1} steps")]
    NotNilpotent(usize, u32),
    #[error("{0} derivations but {1} slices")]
    Count(usize, usize),
}

const NILPOTENCY_CAP: u32 = 512;

/// The retraction `π(g) = Σ_n (−1)^{|n|}/n! (ξ^n.g) f^n` onto the joint kernel
/// of commuting derivations admitting slices.
pub struct DixmierProjector<'a> {
    algebra: &'a PresentedAlgebra,
    derivations: Vec<Derivation>,
    slices: Vec<Polynomial>,
}

impl<'a> DixmierProjector<'a> {
    pub fn new(algebra: &'a PresentedAlgebra, derivations: Vec<Derivation>, slices: Vec<Polynomial>) -> Result<Self, ProjectionError> {
        if derivations.len() != slices.len() {
            return Err(ProjectionError::Count(derivations.len(), slices.len()));
        }
        let n = algebra.nvars();
        for i in 0..derivations.len() {
            for j in i + 1..derivations.len() {
                for g in 0..n {
                    let x = Polynomial::var(n, g);
                    let (a, b) = (&derivations[i], &derivations[j]);
                    let c = a.apply(algebra, &b.apply(algebra, &x)) - b.apply(algebra, &a.apply(algebra, &x));
                    if !algebra.is_zero(&c) {
                        return Err(ProjectionError::NotCommuting(i, j, g));
                    }
                }
            }
            for (j, f) in slices.iter().enumerate() {
                let v = derivations[i].apply(algebra, f);
                let want = if i == j { Polynomial::one(n) } else { Polynomial::zero(n) };
                if !algebra.is_zero(&(v - want)) {
                    return Err(ProjectionError::NotDelta(i, j));
                }
            }
        }
        Ok(DixmierProjector { algebra, derivations, slices })
    }

    /// All nonzero `(n, ξ^n.g)`.
    pub fn orbit(&self, g: &Polynomial) -> Result<Vec<(Vec<u32>, Polynomial)>, ProjectionError> {
        let mut out = Vec::new();
        let mut exps = alloc::vec![0u32; self.derivations.len()];
        self.walk(self.algebra.reduce(g), 0, &mut exps, &mut out)?;
        Ok(out)
    }

    fn walk(&self, g: Polynomial, i: usize, exps: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, Polynomial)>) -> Result<(), ProjectionError> {
        if g.is_zero() {
            return Ok(());
        }
        if i == self.derivations.len() {
            out.push((exps.clone(), g));
            return Ok(());
        }
        let mut cur = g;
        let mut e = 0;
        while !cur.is_zero() {
            if e > NILPOTENCY_CAP {
                return Err(ProjectionError::NotNilpotent(i, NILPOTENCY_CAP));
            }
            exps[i] = e;
            self.walk(cur.clone(), i + 1, exps, out)?;
            cur = self.derivations[i].apply(self.algebra, &cur);
            e += 1;
        }
        exps[i] = 0;
        Ok(())
    }

    fn slice_power(&self, n: &[u32]) -> Polynomial {
        let mut p = Polynomial::one(self.algebra.nvars());
        for (f, &e) in self.slices.iter().zip(n) {
            p = &p * &f.pow(e);
        }
        p
    }

    pub fn project(&self, g: &Polynomial) -> Result<Polynomial, ProjectionError> {
        let mut out = Polynomial::zero(self.algebra.nvars());
        for (n, h) in self.orbit(g)? {
            let total: u32 = n.iter().sum();
            let fact = n.iter().map(|&e| factorial(e)).fold(Rational::one(), |a, b| a * b);
            let sign = if total % 2 == 0 { Rational::one() } else { -Rational::one() };
            out = out + &h * &self.slice_power(&n).scale(&(sign / fact));
        }
        Ok(self.algebra.reduce(&out))
    }

    /// `g = Σ_n (1/n!) π(ξ^n.g) f^n`: the coefficients `(n, π(ξ^n.g)/n!)`.
    pub fn expansion(&self, g: &Polynomial) -> Result<Vec<(Vec<u32>, Polynomial)>, ProjectionError> {
        let mut out = Vec::new();
        for (n, h) in self.orbit(g)? {
            let fact = n.iter().map(|&e| factorial(e)).fold(Rational::one(), |a, b| a * b);
            let p = self.project(&h)?.scale(&fact.recip());
            if !p.is_zero() {
                out.push((n, p));
            }
        }
        Ok(out)
    }

    pub fn slices(&self) -> &[Polynomial] {
        &self.slices
    }
}

/// One-shot projection.
pub fn dixmier_project(
    algebra: &PresentedAlgebra,
    derivations: &[Derivation],
    slices: &[Polynomial],
    g: &Polynomial,
) -> Result<Polynomial, ProjectionError> {
    DixmierProjector::new(algebra, derivations.to_vec(), slices.to_vec())?.project(g)
}

/// `A^{U′}` presented on a subset of the input generators.
#[derive(Clone, Debug)]
pub struct InvariantPresentation {
    pub algebra: PresentedAlgebra,
    /// Input generator index behind each new generator.
    pub kept: Vec<usize>,
    /// `π(g)` in the input algebra for each new generator.
    pub representatives: Vec<Polynomial>,
    /// For every input generator `v`: `π(v)` written in the new generators.
    pub substitution: Vec<Polynomial>,
    /// For every input generator `g`: a polynomial in the new generators followed
    /// by one variable per slice, evaluating to `g`.
    pub reconstruction: Vec<Polynomial>,
}

impl InvariantPresentation {
    /// Rewrites an invariant element of the input algebra in the new generators.
    pub fn express(&self, p: &Polynomial) -> Polynomial {
        self.algebra.reduce(&p.substitute(&self.substitution))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error("generator {0} is not reconstructed from the invariants and slices")]
    Reconstruction(String),
}

/// Presents the invariants of one level. Uses `A^{U′} ≅ A/⟨f⟩` (via `π`) so the
/// relations are `(rel + ⟨f⟩) ∩ k[kept]`, then drops generators that are
/// solved for linearly by a relation.
pub fn invariant_presentation(action: &DerivationAction, slices: &SliceSet) -> Result<InvariantPresentation, PresentationError> {
    let alg = action.algebra();
    let n = alg.nvars();
    let ders: Vec<Derivation> = slices.rows.iter().map(|&a| action.derivation(a).clone()).collect();
    let proj = DixmierProjector::new(alg, ders, slices.functions.clone())?;
    let pis: Vec<Polynomial> = (0..n).map(|v| proj.project(&Polynomial::var(n, v))).collect::<Result<_, _>>()?;

    // which generators survive: constants and duplicates are dropped
    let mut kept: Vec<usize> = Vec::new();
    let mut alias: Vec<Option<usize>> = alloc::vec![None; n];
    for v in 0..n {
        if pis[v].is_constant() {
            continue;
        }
        match kept.iter().position(|&u| pis[u] == pis[v]) {
            Some(k) => alias[v] = Some(k),
            None => {
                alias[v] = Some(kept.len());
                kept.push(v);
            }
        }
    }
    let mut keep_mask = alloc::vec![false; n];
    for &v in &kept {
        keep_mask[v] = true;
    }
    let kernel = alg.relations().with_generators(slices.functions.iter().cloned());
    let cut = eliminate(&kernel, &keep_mask);
    let m = kept.len();
    let mut index = alloc::vec![0usize; n];
    for (k, &v) in kept.iter().enumerate() {
        index[v] = k;
    }
    let ring = alg.ring().restricted(&kept);
    let rels: Vec<Polynomial> = cut.generators().iter().map(|g| g.remap(&index, m)).collect();
    let substitution: Vec<Polynomial> = (0..n)
        .map(|v| match alias[v] {
            Some(k) => Polynomial::var(m, k),
            None => Polynomial::constant(m, pis[v].constant_term()),
        })
        .collect();
    let simple = PresentedAlgebra::new(ring, rels).drop_linear_generators();
    let algebra = simple.algebra;
    let representatives: Vec<Polynomial> = simple.kept.iter().map(|&k| pis[kept[k]].clone()).collect();
    let kept: Vec<usize> = simple.kept.iter().map(|&k| kept[k]).collect();
    let substitution: Vec<Polynomial> = substitution.iter().map(|p| p.substitute(&simple.images)).collect();
    let substitution: Vec<Polynomial> = substitution.iter().map(|p| algebra.reduce(p)).collect();

    // g = Σ_n (1/n!) (ξ^n g)(π(vars)) f^n, written with slice variables appended
    let m = algebra.nvars();
    let r = slices.functions.len();
    let big: Vec<Polynomial> = substitution.iter().map(|p| p.extend(m + r)).collect();
    let mut reconstruction = Vec::new();
    for v in 0..n {
        let mut acc = Polynomial::zero(m + r);
        for (exps, h) in proj.orbit(&Polynomial::var(n, v))? {
            let fact = exps.iter().map(|&e| factorial(e)).fold(Rational::one(), |a, b| a * b);
            let mut e = alloc::vec![0u32; m + r];
            e[m..].copy_from_slice(&exps);
            let mono = Polynomial::term(Monomial::from_exps(&e), fact.recip());
            acc = acc + &h.substitute(&big) * &mono;
        }
        reconstruction.push(acc);
    }
    let pres = InvariantPresentation { algebra, kept, representatives, substitution, reconstruction };
    for v in 0..n {
        if !reconstruction_holds(alg, &pres, &slices.functions, v) {
            return Err(PresentationError::Reconstruction(alg.names()[v].clone()));
        }
    }
    Ok(pres)
}

fn reconstruction_holds(input: &PresentedAlgebra, pres: &InvariantPresentation, slices: &[Polynomial], v: usize) -> bool {
    let mut images = pres.representatives.clone();
    images.extend(slices.iter().cloned());
    let n = input.nvars();
    let back = if images.is_empty() { pres.reconstruction[v].remap(&[], n) } else { pres.reconstruction[v].substitute(&images) };
    input.is_zero(&(back - Polynomial::var(n, v)))
}

/// One level of the staged quotient.
#[derive(Clone, Debug)]
pub struct QuotientStage {
    pub input: DerivationAction,
    pub slices: SliceSet,
    pub presentation: InvariantPresentation,
    /// The remaining levels acting on the invariant ring.
    pub output: DerivationAction,
    pub cdrs_after: CdrsReport,
}

#[derive(Clone, Debug)]
pub struct QuotientChain {
    pub stages: Vec<QuotientStage>,
}

impl QuotientChain {
    /// The final invariant ring (the input itself when there are no stages).
    pub fn final_algebra(&self) -> Option<&PresentedAlgebra> {
        self.stages.last().map(|s| s.presentation.algebra())
    }

    /// `Σ_i |slices_i|`: the dimension of the affine-space factor.
    pub fn fibre_dimension(&self) -> usize {
        self.stages.iter().map(|s| s.slices.functions.len()).sum()
    }

    /// Representatives of the final generators in the original algebra.
    pub fn final_representatives(&self) -> Vec<Polynomial> {
        let Some(last) = self.stages.last() else { return Vec::new() };
        let mut reps = last.presentation.representatives.clone();
        for st in self.stages[..self.stages.len() - 1].iter().rev() {
            reps = reps.iter().map(|p| p.substitute(&st.presentation.representatives)).collect();
        }
        let first = &self.stages[0].input;
        reps.iter().map(|p| first.algebra().reduce(p)).collect()
    }
}

impl InvariantPresentation {
    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("the Fitting condition fails at level {level}")]
    ConditionFails { level: usize },
    #[error("the ring has a generator of positive weight")]
    PositiveWeights,
    #[error("stage {stage}: {source}")]
    Slices { stage: usize, source: SliceFailure },
    #[error("stage {stage}: {source}")]
    Presentation { stage: usize, source: PresentationError },
    #[error("stage {stage}: the descended action is invalid ({count} violations)")]
    Descent { stage: usize, count: usize, violations: Vec<Violation> },
    #[error("stage {stage}: the Fitting condition is not inherited by the quotient")]
    NotInherited { stage: usize },
}

impl QuotientError {
    /// Condition refusals (as opposed to exhausted search bounds).
    pub fn is_bound_exhaustion(&self) -> bool {
        matches!(self, QuotientError::Slices { source: SliceFailure::BoundExhausted { .. }, .. })
            || matches!(self, QuotientError::Presentation { source: PresentationError::Reconstruction(_), .. })
    }
}

/// `A ⊇ A^{U_1} ⊇ … ⊇ A^{U_n}`, one stage per level.
pub fn staged_quotient(action: &DerivationAction, degree_bound: u32) -> Result<QuotientChain, QuotientError> {
    if !action.algebra().ring().all_nonpositive() {
        return Err(QuotientError::PositiveWeights);
    }
    let report = check_cdrs(action);
    if let Some(l) = report.first_failure() {
        return Err(QuotientError::ConditionFails { level: l.level });
    }
    let mut stages = Vec::new();
    let mut cur = action.clone();
    for stage in 0..action.lie().nlevels() {
        if cur.algebra().is_zero_ring() {
            break;
        }
        let slices = find_slices(&cur, 0, degree_bound).map_err(|source| QuotientError::Slices { stage, source })?;
        let presentation =
            invariant_presentation(&cur, &slices).map_err(|source| QuotientError::Presentation { stage, source })?;
        let output = descend(&cur, &presentation);
        let violations = output.validate();
        if !violations.is_empty() {
            return Err(QuotientError::Descent { stage, count: violations.len(), violations });
        }
        let cdrs_after = check_cdrs(&output);
        if !cdrs_after.holds() {
            return Err(QuotientError::NotInherited { stage });
        }
        stages.push(QuotientStage { input: cur, slices, presentation, output: output.clone(), cdrs_after });
        cur = output;
    }
    Ok(QuotientChain { stages })
}

/// Action of the lower levels on the invariant ring: `ξ.y = (ξ.π(v))` rewritten
/// in the new generators.
fn descend(action: &DerivationAction, pres: &InvariantPresentation) -> DerivationAction {
    let lie = action.lie().drop_top_levels(1);
    let off = action.lie().level_range(0).end;
    let derivations = (0..lie.dim())
        .map(|a| Derivation {
            images: pres.representatives.iter().map(|rep| pres.express(&action.apply_basis(a + off, rep))).collect(),
        })
        .collect();
    DerivationAction::with_parts(pres.algebra.clone(), lie, derivations)
}

/// Outcome of [`verify_quotient`] for one stage.
#[derive(Clone, Debug, Default)]
pub struct StageCheck {
    /// Every representative is killed by the whole level, complement included.
    pub invariants_killed: bool,
    /// `det(ξ_μ.f_ν)` is a nonzero constant.
    pub slice_det_unit: bool,
    /// Each input generator equals its reconstruction polynomial.
    pub reconstruction_identities: bool,
    /// The relations of the invariant ring are exactly the kernel of
    /// `k[invariants, slices] → A` (computed independently by elimination).
    pub presentation_complete: bool,
    pub failures: Vec<String>,
}

impl StageCheck {
    pub fn passes(&self) -> bool {
        self.invariants_killed && self.slice_det_unit && self.reconstruction_identities && self.presentation_complete
    }
}

pub fn verify_quotient(chain: &QuotientChain) -> Vec<StageCheck> {
    chain.stages.iter().map(verify_stage).collect()
}

fn verify_stage(st: &QuotientStage) -> StageCheck {
    use alloc::format;
    let act = &st.input;
    let alg = act.algebra();
    let n = alg.nvars();
    let pres = &st.presentation;
    let mut c = StageCheck::default();
    let level: Vec<usize> = act.lie().level_range(st.slices.level).collect();
    c.invariants_killed = true;
    for (k, rep) in pres.representatives.iter().enumerate() {
        for &a in &level {
            if !act.apply_basis(a, rep).is_zero() {
                c.invariants_killed = false;
                c.failures.push(format!("{} is moved by {}", pres.algebra.names()[k], act.lie().names()[a]));
            }
        }
    }
    let mat: Vec<Vec<Polynomial>> =
        st.slices.rows.iter().map(|&a| st.slices.functions.iter().map(|f| act.apply_basis(a, f)).collect()).collect();
    let det = alg.reduce(&linalg::det(&mat, n));
    c.slice_det_unit = det.is_constant() && !det.is_zero();
    if !c.slice_det_unit {
        c.failures.push(String::from("slice determinant is not a unit"));
    }
    c.reconstruction_identities = (0..n).all(|v| reconstruction_holds(alg, pres, &st.slices.functions, v));
    if !c.reconstruction_identities {
        c.failures.push(String::from("reconstruction identity fails"));
    }
    // kernel of k[Y, S] → A by elimination of A's generators
    let m = pres.algebra.nvars();
    let r = st.slices.functions.len();
    let total = n + m + r;
    let mut gens: Vec<Polynomial> = alg.relations().generators().iter().map(|g| g.extend(total)).collect();
    for (k, rep) in pres.representatives.iter().enumerate() {
        gens.push(Polynomial::var(total, n + k) - rep.extend(total));
    }
    for (j, f) in st.slices.functions.iter().enumerate() {
        gens.push(Polynomial::var(total, n + m + j) - f.extend(total));
    }
    let big = Ideal::new(total, gens, MonomialOrder::DegRevLex);
    let keep: Vec<bool> = (0..total).map(|i| i >= n).collect();
    let kernel = eliminate(&big, &keep);
    let shift: Vec<usize> = (0..total).map(|i| i.saturating_sub(n)).collect();
    let kernel_gens: Vec<Polynomial> = kernel.generators().iter().map(|g| g.remap(&shift, m + r)).collect();
    let kernel = Ideal::new(m + r, kernel_gens, MonomialOrder::DegRevLex);
    let claimed =
        Ideal::new(m + r, pres.algebra.relations().generators().iter().map(|g| g.extend(m + r)).collect(), MonomialOrder::DegRevLex);
    c.presentation_complete = kernel.same_as(&claimed);
    if !c.presentation_complete {
        c.failures.push(String::from("reconstruction isomorphism fails: presented relations differ from the true kernel"));
    }
    c
}

/// Weight of each slice (for reporting).
pub fn slice_weights(action: &DerivationAction, s: &SliceSet) -> Vec<Option<i64>> {
    let w = action.algebra().weights();
    s.functions.iter().map(|f| f.homogeneous_weight(&w)).collect()
}
