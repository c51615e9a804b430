use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::ring::Rational;

/// Element of a Lie algebra, as coefficients on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement(pub Vec<Rational>);

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        LieElement(alloc::vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = crate::ring::int(1);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        LieElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        LieElement(self.0.iter().map(|a| a * c).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// Problems found by [`GradedLieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieViolation {
    Antisymmetry { a: String, b: String },
    Jacobi { a: String, b: String, c: String },
    WeightAdditivity { a: String, b: String },
}

/// Positively graded nilpotent Lie algebra. Level `i` (0-based) holds the basis
/// vectors of weight `weights[i]`, with weights strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    weights: Vec<i64>,
    names: Vec<String>,
    level_of: Vec<usize>,
    starts: Vec<usize>,
    table: Vec<Vec<LieElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("weights must be strictly decreasing positive integers")]
    BadWeights,
    #[error("level {0} has no basis vectors")]
    EmptyLevel(usize),
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("bracket index out of range")]
    BadIndex,
}

impl GradedLieAlgebra {
    /// `levels` lists `(weight, basis names)` from the highest weight down.
    /// Brackets are given for ordered pairs; the reverse pair is filled in by
    /// antisymmetry unless given explicitly as well.
    pub fn new(levels: Vec<(i64, Vec<String>)>, brackets: Vec<(usize, usize, LieElement)>) -> Result<Self, LieError> {
        let mut weights = Vec::new();
        let mut names: Vec<String> = Vec::new();
        let mut level_of = Vec::new();
        let mut starts = Vec::new();
        for (i, (w, ns)) in levels.into_iter().enumerate() {
            if w <= 0 || weights.last().is_some_and(|&prev| prev <= w) {
                return Err(LieError::BadWeights);
            }
            if ns.is_empty() {
                return Err(LieError::EmptyLevel(i));
            }
            weights.push(w);
            starts.push(names.len());
            for n in ns {
                if names.contains(&n) {
                    return Err(LieError::DuplicateName(n));
                }
                names.push(n);
                level_of.push(i);
            }
        }
        starts.push(names.len());
        let dim = names.len();
        let mut table = alloc::vec![alloc::vec![LieElement::zero(dim); dim]; dim];
        let mut explicit = alloc::vec![alloc::vec![false; dim]; dim];
        for (a, b, v) in brackets {
            if a >= dim || b >= dim || v.0.len() != dim {
                return Err(LieError::BadIndex);
            }
            table[a][b] = v.clone();
            explicit[a][b] = true;
            if !explicit[b][a] {
                table[b][a] = v.scale(&crate::ring::int(-1));
            }
        }
        Ok(GradedLieAlgebra { weights, names, level_of, starts, table })
    }

    /// Commutative algebra with the given levels.
    pub fn abelian(levels: Vec<(i64, Vec<String>)>) -> Result<Self, LieError> {
        Self::new(levels, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn nlevels(&self) -> usize {
        self.weights.len()
    }

    pub fn level_weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn level_of(&self, a: usize) -> usize {
        self.level_of[a]
    }

    pub fn weight_of(&self, a: usize) -> i64 {
        self.weights[self.level_of[a]]
    }

    /// Basis indices of level `i`.
    pub fn level_range(&self, i: usize) -> core::ops::Range<usize> {
        self.starts[i]..self.starts[i + 1]
    }

    /// Basis indices of the filtration piece made of levels `0..=i`.
    pub fn filtration_range(&self, i: usize) -> core::ops::Range<usize> {
        0..self.starts[i + 1]
    }

    pub fn level_dim(&self, i: usize) -> usize {
        self.starts[i + 1] - self.starts[i]
    }

    pub fn basis_bracket(&self, a: usize, b: usize) -> &LieElement {
        &self.table[a][b]
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero(self.dim());
        for (a, ca) in x.support() {
            for (b, cb) in y.support() {
                out = out.add(&self.table[a][b].scale(&(ca * cb)));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(LieElement::is_zero)
    }

    pub fn validate(&self) -> Vec<LieViolation> {
        let d = self.dim();
        let mut out = Vec::new();
        let name = |i: usize| self.names[i].clone();
        for a in 0..d {
            for b in 0..d {
                if self.table[a][b] != self.table[b][a].scale(&crate::ring::int(-1)) && a <= b {
                    out.push(LieViolation::Antisymmetry { a: name(a), b: name(b) });
                }
                let target = self.weight_of(a) + self.weight_of(b);
                if self.table[a][b].support().any(|(k, _)| self.weight_of(k) != target) && a < b {
                    out.push(LieViolation::WeightAdditivity { a: name(a), b: name(b) });
                }
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let (ea, eb, ec) = (LieElement::basis(d, a), LieElement::basis(d, b), LieElement::basis(d, c));
                    let j = self
                        .bracket(&ea, &self.bracket(&eb, &ec))
                        .add(&self.bracket(&eb, &self.bracket(&ec, &ea)))
                        .add(&self.bracket(&ec, &self.bracket(&ea, &eb)));
                    if !j.is_zero() {
                        out.push(LieViolation::Jacobi { a: name(a), b: name(b), c: name(c) });
                    }
                }
            }
        }
        out
    }

    /// Brackets as `(a, b, [a,b])` for `a < b` with nonzero bracket.
    pub fn bracket_list(&self) -> Vec<(usize, usize, LieElement)> {
        let mut out = Vec::new();
        for a in 0..self.dim() {
            for b in a + 1..self.dim() {
                if !self.table[a][b].is_zero() {
                    out.push((a, b, self.table[a][b].clone()));
                }
            }
        }
        out
    }

    pub fn levels(&self) -> Vec<(i64, Vec<String>)> {
        (0..self.nlevels()).map(|i| (self.weights[i], self.names[self.level_range(i)].to_vec())).collect()
    }

    /// The quotient by the first `drop` levels (an ideal, since it is the top of
    /// the weight filtration). Basis vectors are renumbered from zero.
    pub fn drop_top_levels(&self, drop: usize) -> GradedLieAlgebra {
        let off = self.starts[drop];
        let dim = self.dim() - off;
        let levels = self.levels()[drop..].to_vec();
        let brackets = self
            .bracket_list()
            .into_iter()
            .filter(|(a, b, _)| *a >= off && *b >= off)
            .map(|(a, b, v)| (a - off, b - off, LieElement(v.0[off..].to_vec())))
            .filter(|(_, _, v)| !v.is_zero())
            .collect();
        let out = GradedLieAlgebra::new(levels, brackets).expect("sub-levels of a valid algebra");
        debug_assert_eq!(out.dim(), dim);
        out
    }

    /// Relabels the basis: new index `k` is old index `perm[k]`. The permutation
    /// must keep every basis vector inside its level.
    pub fn permuted(&self, perm: &[usize]) -> GradedLieAlgebra {
        let d = self.dim();
        let mut inv = alloc::vec![0; d];
        for (k, &o) in perm.iter().enumerate() {
            assert_eq!(self.level_of[o], self.level_of[k], "permutation must preserve levels");
            inv[o] = k;
        }
        let map = |v: &LieElement| {
            let mut w = LieElement::zero(d);
            for (o, c) in v.support() {
                w.0[inv[o]] = c.clone();
            }
            w
        };
        let mut out = self.clone();
        out.names = perm.iter().map(|&o| self.names[o].clone()).collect();
        for a in 0..d {
            for b in 0..d {
                out.table[a][b] = map(&self.table[perm[a]][perm[b]]);
            }
        }
        out
    }
}
