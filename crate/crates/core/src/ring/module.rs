use alloc::vec::Vec;

use super::groebner::{self, Vector};
use super::{Ideal, MonomialOrder, Polynomial};

/// A matrix `codomain_rank × domain_rank` of polynomials, read as a map of free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleMap {
    nvars: usize,
    matrix: Vec<Vec<Polynomial>>,
    domain_rank: usize,
}

impl FreeModuleMap {
    pub fn new(nvars: usize, domain_rank: usize, matrix: Vec<Vec<Polynomial>>) -> Self {
        assert!(matrix.iter().all(|r| r.len() == domain_rank), "ragged matrix");
        FreeModuleMap { nvars, matrix, domain_rank }
    }

    pub fn from_columns(nvars: usize, codomain_rank: usize, columns: &[Vec<Polynomial>]) -> Self {
        let matrix = (0..codomain_rank).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        Self::new(nvars, columns.len(), matrix)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain_rank(&self) -> usize {
        self.domain_rank
    }

    pub fn codomain_rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Polynomial>] {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(Polynomial::zero(self.nvars), |acc, (a, b)| acc + a * b))
            .collect()
    }
}

/// Generators of `{v : map(v) ≡ 0 mod relations}`, reduced modulo the relations.
pub fn syzygy_kernel(map: &FreeModuleMap, relations: &Ideal) -> Vec<Vec<Polynomial>> {
    let (l, m, n) = (map.codomain_rank(), map.domain_rank(), map.nvars());
    let order = relations.order();
    let mut gens = Vec::new();
    for j in 0..m {
        let mut v = map.column(j);
        v.resize(l + m, Polynomial::zero(n));
        v[l + j] = Polynomial::one(n);
        gens.push(Vector::from_polys(&v, order));
    }
    for r in relations.generators() {
        for k in 0..l {
            let mut v: Vec<Polynomial> = (0..l).map(|_| Polynomial::zero(n)).collect();
            v[k] = r.clone();
            gens.push(Vector::from_polys(&v, order));
        }
    }
    let gb = groebner::groebner(gens, order, l + m);
    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    for g in gb {
        if g.lead().comp < l {
            continue;
        }
        let v: Vec<Polynomial> = g.to_polys(l + m, n)[l..].iter().map(|p| relations.normal_form(p)).collect();
        if v.iter().any(|p| !p.is_zero()) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// A submodule of `A^rank` (with `A` presented by `relations`), ready for membership tests.
pub struct Submodule {
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
    gb: Vec<Vector>,
}

impl Submodule {
    pub fn new(rank: usize, generators: &[Vec<Polynomial>], relations: &Ideal) -> Self {
        let order = relations.order().clone();
        let n = relations.nvars();
        let mut gens: Vec<Vector> = generators.iter().map(|g| Vector::from_polys(g, &order)).collect();
        for r in relations.generators() {
            for k in 0..rank {
                let mut v: Vec<Polynomial> = (0..rank).map(|_| Polynomial::zero(n)).collect();
                v[k] = r.clone();
                gens.push(Vector::from_polys(&v, &order));
            }
        }
        let gb = groebner::groebner(gens, &order, rank);
        Submodule { rank, nvars: n, order, gb }
    }

    pub fn reduce(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        groebner::normal_form(Vector::from_polys(v, &self.order), &self.gb, &self.order).to_polys(self.rank, self.nvars)
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.reduce(v).iter().all(Polynomial::is_zero)
    }

    /// Generators of the intersection with the last coordinates `start..rank`,
    /// restricted to those coordinates (position-over-term elimination).
    pub fn tail_generators(&self, start: usize) -> Vec<Vec<Polynomial>> {
        self.gb
            .iter()
            .filter(|g| g.lead().comp >= start)
            .map(|g| g.to_polys(self.rank, self.nvars)[start..].to_vec())
            .collect()
    }

    /// Is the submodule everything?
    pub fn is_full(&self) -> bool {
        (0..self.rank).all(|k| {
            let mut e: Vec<Polynomial> = (0..self.rank).map(|_| Polynomial::zero(self.nvars)).collect();
            e[k] = Polynomial::one(self.nvars);
            self.contains(&e)
        })
    }
}

/// Cofactors `c` with `p = Σ c_i · gens_i`, or `None` when `p ∉ ⟨gens⟩`.
pub fn lift(nvars: usize, gens: &[Polynomial], p: &Polynomial, order: &MonomialOrder) -> Option<Vec<Polynomial>> {
    let m = gens.len();
    let tagged: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut v: Vec<Polynomial> = (0..=m).map(|_| Polynomial::zero(nvars)).collect();
            v[0] = g.clone();
            v[i + 1] = Polynomial::one(nvars);
            Vector::from_polys(&v, order)
        })
        .collect();
    let gb = groebner::groebner(tagged, order, m + 1);
    let mut target: Vec<Polynomial> = (0..=m).map(|_| Polynomial::zero(nvars)).collect();
    target[0] = p.clone();
    let active = alloc::vec![true; gb.len()];
    let r = groebner::reduce(Vector::from_polys(&target, order), &gb, &active, order, true, 1);
    let r = r.to_polys(m + 1, nvars);
    if !r[0].is_zero() {
        return None;
    }
    Some(r[1..].iter().map(|c| -c).collect())
}
