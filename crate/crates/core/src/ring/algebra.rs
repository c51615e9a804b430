use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{Ideal, Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub weight: i64,
}

/// Polynomial ring over ℚ with a λ-weight per variable and a chosen term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    vars: Vec<Variable>,
    order: MonomialOrder,
}

impl GradedRing {
    pub fn new(vars: Vec<Variable>, order: MonomialOrder) -> Self {
        for (i, v) in vars.iter().enumerate() {
            assert!(!vars[..i].iter().any(|u| u.name == v.name), "duplicate variable name {}", v.name);
        }
        GradedRing { vars, order }
    }

    pub fn degrevlex(vars: Vec<Variable>) -> Self {
        Self::new(vars, MonomialOrder::DegRevLex)
    }

    /// Orders by `−λ` first (nonnegative on rings with nonpositive weights).
    pub fn weighted_order(vars: &[Variable]) -> MonomialOrder {
        MonomialOrder::Weighted(vars.iter().map(|v| u32::try_from((-v.weight).max(0)).unwrap_or(u32::MAX)).collect())
    }

    pub fn from_pairs(pairs: &[(&str, i64)]) -> Self {
        Self::degrevlex(pairs.iter().map(|(n, w)| Variable { name: (*n).into(), weight: *w }).collect())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn var(&self, name: &str) -> Polynomial {
        let i = self.index_of(name).unwrap_or_else(|| panic!("no variable {name}"));
        Polynomial::var(self.nvars(), i)
    }

    pub fn all_nonpositive(&self) -> bool {
        self.vars.iter().all(|v| v.weight <= 0)
    }

    /// Ring with the extra variables appended (order extended consistently).
    pub fn extended(&self, extra: &[Variable]) -> GradedRing {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        let order = match &self.order {
            MonomialOrder::Weighted(_) => GradedRing::weighted_order(&vars),
            o => o.extended(extra.len()),
        };
        GradedRing::new(vars, order)
    }

    /// Ring on a subset of the variables, keeping their relative order.
    pub fn restricted(&self, keep: &[usize]) -> GradedRing {
        let vars: Vec<Variable> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let order = match &self.order {
            MonomialOrder::Weighted(_) => GradedRing::weighted_order(&vars),
            MonomialOrder::Elimination(m) => MonomialOrder::Elimination(keep.iter().map(|&i| m[i]).collect()),
            o => o.clone(),
        };
        GradedRing::new(vars, order)
    }
}

/// `ring / relations`. Elements are kept as normal forms.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    ring: GradedRing,
    relations: Ideal,
}

impl PresentedAlgebra {
    pub fn new(ring: GradedRing, relations: Vec<Polynomial>) -> Self {
        let relations = Ideal::new(ring.nvars(), relations, ring.order().clone());
        PresentedAlgebra { ring, relations }
    }

    pub fn free(ring: GradedRing) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.ring.weights()
    }

    pub fn names(&self) -> Vec<String> {
        self.ring.names()
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.relations.normal_form(p)
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.relations.contains(p)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.relations.is_unit()
    }

    pub fn ideal(&self, gens: Vec<Polynomial>) -> Ideal {
        self.relations.with_generators(gens)
    }

    pub fn show(&self, p: &Polynomial) -> String {
        alloc::format!("{}", p.display(&self.ring.names()))
    }

    /// Relations whose weight components do not all lie in the relation ideal.
    pub fn inhomogeneous_relations(&self) -> Vec<Polynomial> {
        let w = self.weights();
        self.relations
            .generators()
            .iter()
            .filter(|g| g.weight_decompose(&w).values().any(|c| !self.relations.contains(c)))
            .cloned()
            .collect()
    }

    /// Monomials of total degree ≤ `max_degree` that are not leading terms of the
    /// relations, sorted by degree and then by the ring order.
    pub fn standard_monomials(&self, max_degree: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let leads: Vec<Monomial> = if self.relations.is_zero() {
            Vec::new()
        } else {
            let order = self.ring.order();
            self.relations.groebner().polys().iter().filter_map(|g| g.leading_term(order).map(|(m, _)| m.clone())).collect()
        };
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut layer = Vec::new();
            monomials_of_degree(n, d, &mut Vec::new(), &mut layer);
            layer.retain(|m: &Monomial| !leads.iter().any(|l| l.divides(m)));
            layer.sort_by(|a, b| self.ring.order().cmp(a, b));
            out.extend(layer);
        }
        out
    }

    /// Standard monomials of a given weight and degree ≤ `max_degree`.
    pub fn standard_monomials_of_weight(&self, weight: i64, max_degree: u32) -> Vec<Monomial> {
        let w = self.weights();
        self.standard_monomials(max_degree).into_iter().filter(|m| m.weight(&w) == weight).collect()
    }
}

/// Result of [`PresentedAlgebra::drop_linear_generators`].
#[derive(Clone, Debug)]
pub struct Simplified {
    pub algebra: PresentedAlgebra,
    /// Old generator index of each surviving generator.
    pub kept: Vec<usize>,
    /// Every old generator written in the surviving ones.
    pub images: Vec<Polynomial>,
}

impl PresentedAlgebra {
    /// Repeatedly removes a generator `y` for which some relation reads
    /// `c·y − h` with `c` a constant and `h` free of `y`, substituting `h/c`.
    /// Later generators are removed first.
    pub fn drop_linear_generators(&self) -> Simplified {
        let n = self.nvars();
        let mut ring = self.ring.clone();
        let mut rels: Vec<Polynomial> = self.relations.generators().to_vec();
        let mut kept: Vec<usize> = (0..n).collect();
        let mut images: Vec<Polynomial> = (0..n).map(|v| Polynomial::var(n, v)).collect();
        loop {
            let m = ring.nvars();
            let ideal = Ideal::new(m, rels.clone(), ring.order().clone());
            let gb = if ideal.is_zero() { Vec::new() } else { ideal.groebner().polys().to_vec() };
            let found = if gb.iter().any(|g| g.is_constant()) {
                None
            } else {
                (0..m).rev().find_map(|y| {
                    gb.iter().find_map(|g| {
                        let lin = Monomial::var(m, y, 1);
                        let c = g.coefficient(&lin);
                        let rest = g - &Polynomial::term(lin, c.clone());
                        (!c.is_zero() && rest.terms().all(|(mm, _)| mm.exps()[y] == 0))
                            .then(|| (y, rest.scale(&-c.recip())))
                    })
                })
            };
            let Some((y, value)) = found else {
                let algebra = PresentedAlgebra::new(ring, gb);
                let images = images.iter().map(|p| algebra.reduce(p)).collect();
                return Simplified { algebra, kept, images };
            };
            let others: Vec<usize> = (0..m).filter(|&i| i != y).collect();
            let map: Vec<usize> = (0..m).map(|i| if i > y { i - 1 } else { i }).collect();
            let subst: Vec<Polynomial> =
                (0..m).map(|i| if i == y { value.clone() } else { Polynomial::var(m, i) }).collect();
            let reindex = |p: &Polynomial| p.substitute(&subst).remap(&map, m - 1);
            rels = gb.iter().map(reindex).filter(|p| !p.is_zero()).collect();
            images = images.iter().map(reindex).collect();
            kept.remove(y);
            ring = ring.restricted(&others);
        }
    }
}

fn monomials_of_degree(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == n {
        prefix.push(d);
        out.push(Monomial::from_exps(prefix));
        prefix.pop();
        return;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e);
        monomials_of_degree(n, d - e, prefix, out);
        prefix.pop();
    }
}
