//! Infinitesimal action matrices, the relative maps between consecutive levels
//! of the weight filtration, their Fitting ideals, and pointwise stabilisers.

use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::lie::{DerivationAction, LieElement};
use crate::ring::{linalg, lift, syzygy_kernel, FreeModuleMap, Ideal, Polynomial, PresentedAlgebra, Rational, Submodule};

/// Rows: Lie basis vectors; columns: ring generators; entry `(ξ, g) = ξ.g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalMatrix {
    pub rows: Vec<usize>,
    pub entries: Vec<Vec<Polynomial>>,
}

/// Matrix of the filtration piece made of levels `0..=level`.
pub fn infinitesimal_matrix(action: &DerivationAction, level: usize) -> InfinitesimalMatrix {
    matrix_for_rows(action, action.lie().filtration_range(level).collect())
}

/// Matrix of the whole Lie algebra.
pub fn full_matrix(action: &DerivationAction) -> InfinitesimalMatrix {
    matrix_for_rows(action, (0..action.lie().dim()).collect())
}

fn matrix_for_rows(action: &DerivationAction, rows: Vec<usize>) -> InfinitesimalMatrix {
    let entries = rows.iter().map(|&a| action.derivation(a).images.clone()).collect();
    InfinitesimalMatrix { rows, entries }
}

/// `φ_i : K_{i−1} → (𝔲_i/𝔲_{i−1})^* ⊗ A`, with `K_{i−1} ⊆ Ω` given by generators
/// (coefficient vectors on the `dg`) and the pairing against the level's rows.
#[derive(Clone, Debug)]
pub struct PresentedModuleMap {
    pub level: usize,
    pub rows: Vec<usize>,
    pub domain_generators: Vec<Vec<Polynomial>>,
    /// `rows.len() × domain_generators.len()`.
    pub matrix: Vec<Vec<Polynomial>>,
}

impl PresentedModuleMap {
    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.domain_generators.len()
    }

    /// Same map with extra domain generators appended (their images computed).
    pub fn with_extra_generators(&self, action: &DerivationAction, extra: Vec<Vec<Polynomial>>) -> Self {
        let mut gens = self.domain_generators.clone();
        gens.extend(extra);
        let matrix = pairing(action, &self.rows, &gens);
        PresentedModuleMap { level: self.level, rows: self.rows.clone(), domain_generators: gens, matrix }
    }
}

fn pairing(action: &DerivationAction, rows: &[usize], gens: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let alg = action.algebra();
    rows.iter()
        .map(|&a| {
            let img = &action.derivation(a).images;
            gens.iter()
                .map(|k| alg.reduce(&k.iter().zip(img).fold(Polynomial::zero(alg.nvars()), |acc, (c, e)| acc + c * e)))
                .collect()
        })
        .collect()
}

/// Generators of `K_{i−1}`: kernel of the infinitesimal matrix of `𝔲_{i−1}` on `Ω`.
pub fn kernel_generators(action: &DerivationAction, level: usize) -> Vec<Vec<Polynomial>> {
    let alg = action.algebra();
    let n = alg.nvars();
    if level == 0 {
        return (0..n)
            .map(|j| (0..n).map(|g| if g == j { Polynomial::one(n) } else { Polynomial::zero(n) }).collect())
            .collect();
    }
    let m = infinitesimal_matrix(action, level - 1);
    syzygy_kernel(&FreeModuleMap::new(n, n, m.entries), alg.relations())
}

pub fn relative_map(action: &DerivationAction, level: usize) -> PresentedModuleMap {
    let rows: Vec<usize> = action.lie().level_range(level).collect();
    let gens = kernel_generators(action, level);
    let matrix = pairing(action, &rows, &gens);
    PresentedModuleMap { level, rows, domain_generators: gens, matrix }
}

/// `Fit_{−1} = 0 ⊆ Fit_0 ⊆ … ⊆ Fit_r = ⟨1⟩` for a map into a rank-`r` free module.
#[derive(Clone, Debug)]
pub struct FittingChain {
    target_rank: usize,
    /// Nonzero normal forms of the `(r−k)`-minors, deduplicated up to scalars.
    minors: Vec<Vec<Polynomial>>,
    ideals: Vec<Ideal>,
}

impl FittingChain {
    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    /// `Fit_k` including the relations; `None` stands for `Fit_{−1} = 0`.
    pub fn ideal(&self, k: i64) -> Option<&Ideal> {
        usize::try_from(k).ok().map(|k| &self.ideals[k.min(self.target_rank)])
    }

    /// Generators of `Fit_k` modulo the relations (no relations included).
    pub fn minors(&self, k: usize) -> &[Polynomial] {
        &self.minors[k.min(self.target_rank)]
    }

    pub fn is_zero(&self, k: i64) -> bool {
        match usize::try_from(k) {
            Err(_) => true,
            Ok(k) => self.minors(k).is_empty(),
        }
    }

    pub fn is_unit(&self, k: i64) -> bool {
        self.ideal(k).is_some_and(Ideal::is_unit)
    }
}

/// Fitting ideals of the cokernel of a polynomial matrix over a presented algebra.
pub fn fitting_chain_of_matrix(alg: &PresentedAlgebra, matrix: &[Vec<Polynomial>], cols: usize) -> FittingChain {
    let r = matrix.len();
    let order = alg.ring().order().clone();
    let mut minors = Vec::new();
    let mut ideals = Vec::new();
    for k in 0..=r {
        let size = r - k;
        let mut ms: Vec<Polynomial> = Vec::new();
        if size <= cols {
            for m in linalg::minors(matrix, cols, size, alg.nvars()) {
                let m = alg.reduce(&m);
                if m.is_zero() {
                    continue;
                }
                let m = m.monic(&order);
                if !ms.contains(&m) {
                    ms.push(m);
                }
            }
        }
        ideals.push(alg.ideal(ms.clone()));
        minors.push(ms);
    }
    FittingChain { target_rank: r, minors, ideals }
}

pub fn fitting_chain(action: &DerivationAction, m: &PresentedModuleMap) -> FittingChain {
    fitting_chain_of_matrix(action.algebra(), &m.matrix, m.ncols())
}

/// `k = min{k ≥ 0 : Fit_k ≠ 0}`; on the zero ring every ideal vanishes and the
/// target rank is returned.
pub fn min_nonzero_fitting(chain: &FittingChain) -> usize {
    (0..=chain.target_rank).find(|&k| !chain.is_zero(k as i64)).unwrap_or(chain.target_rank)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("point has {found} coordinates, ring has {expected} generators")]
    Arity { expected: usize, found: usize },
    #[error("relation #{0} does not vanish at the point")]
    Relation(usize),
}

/// A rational point of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointEval(pub Vec<Rational>);

impl PointEval {
    pub fn check(&self, alg: &PresentedAlgebra) -> Result<(), PointError> {
        if self.0.len() != alg.nvars() {
            return Err(PointError::Arity { expected: alg.nvars(), found: self.0.len() });
        }
        for (i, r) in alg.relations().generators().iter().enumerate() {
            if !r.eval(&self.0).is_zero() {
                return Err(PointError::Relation(i));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabiliser {
    pub dim: usize,
    /// Basis of the stabiliser as elements of the whole Lie algebra.
    pub basis: Vec<LieElement>,
}

/// Stabiliser of the filtration piece `0..=level` at a point: the left null
/// space of the evaluated infinitesimal matrix.
pub fn stabiliser_at_point(action: &DerivationAction, level: usize, x: &PointEval) -> Result<Stabiliser, PointError> {
    x.check(action.algebra())?;
    let m = infinitesimal_matrix(action, level);
    let ev = linalg::eval_matrix(&m.entries, &x.0);
    let n = action.algebra().nvars();
    let left = linalg::nullspace(&linalg::transpose(&ev, n), m.rows.len());
    let dim = action.lie().dim();
    let basis = left
        .into_iter()
        .map(|v| {
            let mut e = LieElement::zero(dim);
            for (c, &a) in v.into_iter().zip(&m.rows) {
                e.0[a] = c;
            }
            e
        })
        .collect::<Vec<_>>();
    Ok(Stabiliser { dim: basis.len(), basis })
}

/// `dim coker(x^*φ_i)`, with the Fitting-ideal criterion checked at every `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeStabiliser {
    pub coker_dim: usize,
    /// For each `k = 0..=r_i`: does "all of `Fit_k` vanishes at x" match "`dim > k`"?
    pub criterion: Vec<bool>,
}

impl RelativeStabiliser {
    pub fn consistent(&self) -> bool {
        self.criterion.iter().all(|&b| b)
    }
}

pub fn relative_stabiliser_dim(
    action: &DerivationAction,
    map: &PresentedModuleMap,
    chain: &FittingChain,
    x: &PointEval,
) -> Result<RelativeStabiliser, PointError> {
    x.check(action.algebra())?;
    let ev = linalg::eval_matrix(&map.matrix, &x.0);
    let r = map.target_rank();
    let coker_dim = r - linalg::rank(&ev);
    let criterion = (0..=r)
        .map(|k| {
            let vanishes = chain.minors(k).iter().all(|g| g.eval(&x.0).is_zero());
            vanishes == (coker_dim > k)
        })
        .collect();
    Ok(RelativeStabiliser { coker_dim, criterion })
}

#[derive(Clone, Debug)]
pub struct SsReport {
    pub holds: bool,
    pub empty_chart: bool,
    /// Generators of `Fit_0` of the full matrix, modulo relations.
    pub fit0: Vec<Polynomial>,
    /// When it holds: `1 = Σ c_j g_j` over `fit0` followed by the relation generators.
    pub certificate: Option<Vec<Polynomial>>,
}

/// "Semistable = stable" on the chart: `Fit_0` of the whole infinitesimal matrix is the unit ideal.
pub fn check_ss_eq_s(action: &DerivationAction) -> SsReport {
    let alg = action.algebra();
    if alg.is_zero_ring() || action.lie().dim() == 0 {
        return SsReport { holds: true, empty_chart: alg.is_zero_ring(), fit0: Vec::new(), certificate: None };
    }
    let m = full_matrix(action);
    let chain = fitting_chain_of_matrix(alg, &m.entries, alg.nvars());
    let fit0 = chain.minors(0).to_vec();
    let holds = chain.is_unit(0);
    let certificate = holds.then(|| {
        let mut gens = fit0.clone();
        gens.extend(alg.relations().generators().iter().cloned());
        lift(alg.nvars(), &gens, &Polynomial::one(alg.nvars()), alg.ring().order()).expect("unit ideal lifts")
    });
    SsReport { holds, empty_chart: false, fit0, certificate }
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    pub rank: usize,
    pub k: usize,
    pub fit_below_zero: bool,
    pub fit_unit: bool,
    /// Generators of `Fit_k` modulo the relations.
    pub fit_k: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct CdrsReport {
    pub levels: Vec<LevelReport>,
    pub empty_chart: bool,
}

impl CdrsReport {
    pub fn holds(&self) -> bool {
        self.levels.iter().all(|l| l.fit_below_zero && l.fit_unit)
    }

    pub fn k_vector(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.k).collect()
    }

    pub fn first_failure(&self) -> Option<&LevelReport> {
        self.levels.iter().find(|l| !(l.fit_below_zero && l.fit_unit))
    }
}

/// Per level: `k_i` and whether `Fit_{k_i−1}(φ_i) = 0` and `Fit_{k_i}(φ_i) = ⟨1⟩`.
pub fn check_cdrs(action: &DerivationAction) -> CdrsReport {
    let alg = action.algebra();
    if alg.is_zero_ring() {
        return CdrsReport { levels: Vec::new(), empty_chart: true };
    }
    let levels = (0..action.lie().nlevels())
        .map(|i| {
            let m = relative_map(action, i);
            let chain = fitting_chain(action, &m);
            level_report(i, &chain, None)
        })
        .collect();
    CdrsReport { levels, empty_chart: false }
}

/// Level report at a prescribed `k` (or the chain's own `k_i` when `None`).
pub fn level_report(level: usize, chain: &FittingChain, k: Option<usize>) -> LevelReport {
    let k = k.unwrap_or_else(|| min_nonzero_fitting(chain));
    LevelReport {
        level,
        rank: chain.target_rank(),
        k,
        fit_below_zero: chain.is_zero(k as i64 - 1),
        fit_unit: chain.is_unit(k as i64),
        fit_k: chain.minors(k).to_vec(),
    }
}

/// Exactness of `0 → coker φ_i → Q(𝔲_i) → Q(𝔲_{i−1}) → 0`, checked as modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeReport {
    /// `(0, b) ∈ im φ_{𝔲_i}` forces `b ∈ im φ_i`.
    pub injective: bool,
    /// The kernel of `Q(𝔲_i) → Q(𝔲_{i−1})` is the image of the level's coordinates.
    pub middle_exact: bool,
    /// Projection onto the first coordinates is onto (always, but checked).
    pub surjective: bool,
}

impl SnakeReport {
    pub fn exact(&self) -> bool {
        self.injective && self.middle_exact && self.surjective
    }
}

pub fn verify_snake_exactness(action: &DerivationAction, level: usize) -> SnakeReport {
    let alg = action.algebra();
    let n = alg.nvars();
    let big = infinitesimal_matrix(action, level);
    let rows_total = big.rows.len();
    let top = action.lie().level_range(level).start;
    let columns: Vec<Vec<Polynomial>> = (0..n).map(|g| big.entries.iter().map(|r| r[g].clone()).collect()).collect();
    let image = Submodule::new(rows_total, &columns, alg.relations());

    // im(φ_{𝔲_i}) ∩ (0 ⊕ A^{r_i}) read off a position-over-term basis, compared
    // both ways with the image of φ_i computed through syzygies.
    let phi = relative_map(action, level);
    let phi_cols: Vec<Vec<Polynomial>> = (0..phi.ncols()).map(|j| phi.matrix.iter().map(|r| r[j].clone()).collect()).collect();
    let im_phi = Submodule::new(rows_total - top, &phi_cols, alg.relations());
    let zero_top = |b: &[Polynomial]| {
        let mut v: Vec<Polynomial> = (0..top).map(|_| Polynomial::zero(n)).collect();
        v.extend_from_slice(b);
        v
    };
    let injective = image.tail_generators(top).iter().all(|b| im_phi.contains(b))
        && phi_cols.iter().all(|b| image.contains(&zero_top(b)));

    // kernel of A^{𝔲_i} → Q(𝔲_{i−1}) is generated by the level's coordinates and
    // the columns of the lower piece; the latter must lie in im φ_{𝔲_i} + (0 ⊕ A^{r_i})
    let mut gens = columns.clone();
    for j in top..rows_total {
        let mut v: Vec<Polynomial> = (0..rows_total).map(|_| Polynomial::zero(n)).collect();
        v[j] = Polynomial::one(n);
        gens.push(v);
    }
    let sub = Submodule::new(rows_total, &gens, alg.relations());
    let middle_exact = columns.iter().all(|c| {
        let mut v = c.clone();
        for p in v.iter_mut().skip(top) {
            *p = Polynomial::zero(n);
        }
        sub.contains(&v)
    });
    // Q(𝔲_i) → Q(𝔲_{i−1}) is induced by a coordinate projection of free modules
    // compatible with the images, hence onto.
    let surjective = columns.iter().all(|c| c.len() == rows_total);
    SnakeReport { injective, middle_exact, surjective }
}

#[cfg(test)]
mod tests;
