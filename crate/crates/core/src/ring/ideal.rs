use alloc::boxed::Box;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::groebner::{self, Vector};
use super::{MonomialOrder, Polynomial};

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    nvars: usize,
    polys: Vec<Polynomial>,
    vecs: Vec<Vector>,
}

impl GroebnerBasis {
    fn compute(nvars: usize, gens: &[Polynomial], order: &MonomialOrder) -> Self {
        let vecs = groebner::groebner(gens.iter().map(|g| Vector::from_poly(g, order)).collect(), order, 1);
        let polys = vecs.iter().map(|v| v.to_polys(1, nvars).remove(0)).collect();
        GroebnerBasis { order: order.clone(), nvars, polys, vecs }
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        if self.vecs.is_empty() || p.is_zero() {
            return p.clone();
        }
        let v = groebner::normal_form(Vector::from_poly(p, &self.order), &self.vecs, &self.order);
        v.to_polys(1, self.nvars).remove(0)
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }
}

/// An ideal given by generators, with a lazily computed reduced Gröbner basis.
/// The cache is filled at most once and is safe to read concurrently.
pub struct Ideal {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    cache: OnceBox<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = OnceBox::new();
        if let Some(gb) = self.cache.get() {
            let _ = cache.set(Box::new(gb.clone()));
        }
        Ideal { nvars: self.nvars, order: self.order.clone(), generators: self.generators.clone(), cache }
    }
}

impl core::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Ideal").field("generators", &self.generators).finish()
    }
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, order, generators, cache: OnceBox::new() }
    }

    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Self::new(nvars, Vec::new(), order)
    }

    pub fn unit(nvars: usize, order: MonomialOrder) -> Self {
        Self::new(nvars, alloc::vec![Polynomial::one(nvars)], order)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.cache.get_or_init(|| Box::new(GroebnerBasis::compute(self.nvars, &self.generators, &self.order)))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        if self.generators.is_empty() {
            return p.clone();
        }
        self.groebner().normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.generators.is_empty() && self.groebner().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(extra);
        Ideal::new(self.nvars, g, self.order.clone())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        self.with_generators(other.generators.iter().cloned())
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                g.push(a * b);
            }
        }
        Ideal::new(self.nvars, g, self.order.clone())
    }

    /// Same ideal, recomputed under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        Ideal::new(self.nvars, self.generators.clone(), order)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality of ideals, decided by comparing reduced Gröbner bases.
    pub fn same_as(&self, other: &Ideal) -> bool {
        if self.order == other.order {
            self.groebner().polys() == other.groebner().polys()
        } else {
            self.contains_ideal(other) && other.contains_ideal(self)
        }
    }
}

/// The reduced Gröbner basis; empty for the zero ideal.
pub fn groebner_basis(ideal: &Ideal) -> Vec<Polynomial> {
    if ideal.is_zero() {
        return Vec::new();
    }
    ideal.groebner().polys().to_vec()
}

pub fn normal_form(p: &Polynomial, ideal: &Ideal) -> Polynomial {
    ideal.normal_form(p)
}

pub fn is_unit_ideal(ideal: &Ideal) -> bool {
    ideal.is_unit()
}

/// `ideal ∩ k[keep]`, as generators in the same ring (involving kept variables only).
pub fn eliminate(ideal: &Ideal, keep: &[bool]) -> Ideal {
    let drop: Vec<bool> = keep.iter().map(|k| !k).collect();
    if drop.iter().all(|d| !d) {
        return ideal.clone();
    }
    let elim = ideal.with_order(MonomialOrder::Elimination(drop.clone()));
    let gens: Vec<Polynomial> = if elim.is_zero() {
        Vec::new()
    } else {
        elim.groebner()
            .polys()
            .iter()
            .filter(|g| g.support().iter().all(|&i| !drop[i]))
            .cloned()
            .collect()
    };
    Ideal::new(ideal.nvars, gens, ideal.order.clone())
}

/// `ideal : f^∞`, via an auxiliary variable `s` with `s·f − 1`.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Ideal {
    let n = ideal.nvars;
    let s = Polynomial::var(n + 1, n);
    let mut gens: Vec<Polynomial> = ideal.generators.iter().map(|g| g.extend(n + 1)).collect();
    gens.push(&(&s * &f.extend(n + 1)) - &Polynomial::one(n + 1));
    let big = Ideal::new(n + 1, gens, ideal.order.extended(1));
    let mut keep = alloc::vec![true; n + 1];
    keep[n] = false;
    let cut = eliminate(&big, &keep);
    let map: Vec<usize> = (0..=n).map(|i| i.min(n.saturating_sub(1))).collect();
    let gens = cut.generators.iter().map(|g| g.remap(&map, n)).collect();
    Ideal::new(n, gens, ideal.order.clone())
}
