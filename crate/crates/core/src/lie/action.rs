use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::{GradedLieAlgebra, LieElement, LieViolation, PbwMonomial, UeaElement};
use crate::ring::{Polynomial, PresentedAlgebra};

/// A derivation given by its values on the ring generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub images: Vec<Polynomial>,
}

impl Derivation {
    /// Leibniz extension, reduced modulo the relations.
    pub fn apply(&self, algebra: &PresentedAlgebra, p: &Polynomial) -> Polynomial {
        algebra.reduce(&self.apply_raw(p))
    }

    fn apply_raw(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.nvars());
        for (v, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = p.derivative(v);
            if !d.is_zero() {
                out = out + &d * img;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action table has {found} rows, expected one per basis vector ({expected})")]
    RowCount { expected: usize, found: usize },
    #[error("action row for {0} does not list every ring generator")]
    RowLength(String),
}

/// Everything [`DerivationAction::validate`] can object to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Lie(LieViolation),
    /// `ξ.g` has a component of the wrong λ-weight.
    Weight { basis: String, generator: String, expected: i64, found: Vec<i64> },
    /// `ξ.r` is not in the relation ideal.
    RelationNotPreserved { basis: String, relation: usize },
    /// `ξη − ηξ` and `[ξ,η]` disagree on a generator.
    Bracket { a: String, b: String, generator: String },
    InhomogeneousRelation { relation: usize },
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::Lie(LieViolation::Antisymmetry { a, b }) => write!(f, "bracket [{a},{b}] is not antisymmetric"),
            Violation::Lie(LieViolation::Jacobi { a, b, c }) => write!(f, "Jacobi identity fails on ({a},{b},{c})"),
            Violation::Lie(LieViolation::WeightAdditivity { a, b }) => {
                write!(f, "bracket [{a},{b}] leaves the weight {a}+{b}")
            }
            Violation::Weight { basis, generator, expected, found } => {
                write!(f, "{basis}.{generator} should have weight {expected} but has components of weight {found:?}")
            }
            Violation::RelationNotPreserved { basis, relation } => {
                write!(f, "{basis} does not preserve relation #{}", relation + 1)
            }
            Violation::Bracket { a, b, generator } => {
                write!(f, "[{a},{b}] does not act as {a}{b}-{b}{a} on {generator}")
            }
            Violation::InhomogeneousRelation { relation } => write!(f, "relation #{} is not λ-homogeneous", relation + 1),
        }
    }
}

/// A graded Lie algebra acting on a presented algebra by derivations.
#[derive(Clone, Debug)]
pub struct DerivationAction {
    algebra: PresentedAlgebra,
    lie: GradedLieAlgebra,
    derivations: Vec<Derivation>,
}

impl DerivationAction {
    /// `table[a][g]` is the image of generator `g` under basis vector `a`.
    pub fn new(algebra: PresentedAlgebra, lie: GradedLieAlgebra, table: Vec<Vec<Polynomial>>) -> Result<Self, ActionError> {
        if table.len() != lie.dim() {
            return Err(ActionError::RowCount { expected: lie.dim(), found: table.len() });
        }
        let mut derivations = Vec::new();
        for (a, row) in table.into_iter().enumerate() {
            if row.len() != algebra.nvars() {
                return Err(ActionError::RowLength(lie.names()[a].clone()));
            }
            derivations.push(Derivation { images: row.iter().map(|p| algebra.reduce(p)).collect() });
        }
        Ok(DerivationAction { algebra, lie, derivations })
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn lie(&self) -> &GradedLieAlgebra {
        &self.lie
    }

    pub fn derivation(&self, a: usize) -> &Derivation {
        &self.derivations[a]
    }

    pub fn table(&self) -> Vec<Vec<Polynomial>> {
        self.derivations.iter().map(|d| d.images.clone()).collect()
    }

    pub fn apply_basis(&self, a: usize, p: &Polynomial) -> Polynomial {
        self.derivations[a].apply(&self.algebra, p)
    }

    pub fn apply_derivation(&self, x: &LieElement, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.nvars());
        for (a, c) in x.support() {
            out = out + self.derivations[a].apply_raw(p).scale(c);
        }
        self.algebra.reduce(&out)
    }

    /// `ξ^p.f`, the rightmost factor acting first.
    pub fn apply_pbw(&self, p: &PbwMonomial, f: &Polynomial) -> Polynomial {
        let weights = self.algebra.weights();
        if self.algebra.ring().all_nonpositive() {
            if let Some(mw) = f.min_weight(&weights) {
                if p.weight(&self.lie) + mw > 0 {
                    return Polynomial::zero(f.nvars());
                }
            }
        }
        let mut cur = self.algebra.reduce(f);
        for (a, &e) in p.0.iter().enumerate().rev() {
            for _ in 0..e {
                if cur.is_zero() {
                    return cur;
                }
                cur = self.apply_basis(a, &cur);
            }
        }
        cur
    }

    pub fn apply_uea(&self, x: &UeaElement, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (p, c) in &x.0 {
            out = out + self.apply_pbw(p, f).scale(c);
        }
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = self.lie.validate().into_iter().map(Violation::Lie).collect();
        let alg = &self.algebra;
        let weights = alg.weights();
        let vnames = alg.names();
        let bnames = self.lie.names();
        for (r, g) in alg.relations().generators().iter().enumerate() {
            if g.weight_decompose(&weights).values().any(|c| !alg.is_zero(c)) {
                out.push(Violation::InhomogeneousRelation { relation: r });
            }
        }
        for a in 0..self.lie.dim() {
            let wa = self.lie.weight_of(a);
            for (g, img) in self.derivations[a].images.iter().enumerate() {
                let expected = weights[g] + wa;
                let found: Vec<i64> =
                    img.weight_decompose(&weights).iter().filter(|(_, c)| !alg.is_zero(c)).map(|(w, _)| *w).collect();
                if found.iter().any(|w| *w != expected) {
                    out.push(Violation::Weight { basis: bnames[a].clone(), generator: vnames[g].clone(), expected, found });
                }
            }
            for (r, rel) in alg.relations().generators().iter().enumerate() {
                if !self.apply_basis(a, rel).is_zero() {
                    out.push(Violation::RelationNotPreserved { basis: bnames[a].clone(), relation: r });
                }
            }
        }
        for a in 0..self.lie.dim() {
            for b in a + 1..self.lie.dim() {
                let br = self.lie.basis_bracket(a, b).clone();
                for g in 0..alg.nvars() {
                    let x = Polynomial::var(alg.nvars(), g);
                    let lhs = self.apply_basis(a, &self.apply_basis(b, &x)) - self.apply_basis(b, &self.apply_basis(a, &x));
                    let rhs = self.apply_derivation(&br, &x);
                    if !alg.is_zero(&(lhs - rhs)) {
                        out.push(Violation::Bracket { a: bnames[a].clone(), b: bnames[b].clone(), generator: vnames[g].clone() });
                    }
                }
            }
        }
        out
    }

    /// Same action with the basis relabelled (see [`GradedLieAlgebra::permuted`]).
    pub fn permuted(&self, perm: &[usize]) -> DerivationAction {
        DerivationAction {
            algebra: self.algebra.clone(),
            lie: self.lie.permuted(perm),
            derivations: perm.iter().map(|&o| self.derivations[o].clone()).collect(),
        }
    }

    /// Rebuilds over another algebra, keeping the Lie data.
    pub fn with_parts(algebra: PresentedAlgebra, lie: GradedLieAlgebra, derivations: Vec<Derivation>) -> Self {
        DerivationAction { algebra, lie, derivations }
    }
}
