//! Small reference actions used throughout the tests and by the CLI.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lie::{DerivationAction, GradedLieAlgebra, LieElement};
use crate::ring::{int, GradedRing, Polynomial, PresentedAlgebra};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| String::from(*s)).collect()
}

/// `𝔾_a` on `ℚ[x, y]`, weights `0, −1`, with `ξ.y = x`.
pub fn additive_line() -> DerivationAction {
    let ring = GradedRing::from_pairs(&[("x", 0), ("y", -1)]);
    let lie = GradedLieAlgebra::abelian(vec![(1, names(&["xi"]))]).unwrap();
    let x = ring.var("x");
    let zero = x.scale(&int(0));
    DerivationAction::new(PresentedAlgebra::free(ring), lie, vec![vec![zero, x]]).unwrap()
}

/// `𝔾_a` on `ℚ[x, y]` with `ξ.y = 1`: a free action with slice `y`.
pub fn translation_line() -> DerivationAction {
    let ring = GradedRing::from_pairs(&[("x", 0), ("y", -1)]);
    let lie = GradedLieAlgebra::abelian(vec![(1, names(&["xi"]))]).unwrap();
    let n = ring.nvars();
    let table = vec![vec![crate::ring::Polynomial::zero(n), crate::ring::Polynomial::one(n)]];
    DerivationAction::new(PresentedAlgebra::free(ring), lie, table).unwrap()
}

/// Two weights on `ℚ[x, y, z]` (weights `0, −1, −2`): `xi1` of weight 2 sends
/// `z ↦ x`; `xi2` of weight 1 sends `z ↦ y ↦ x ↦ 0`.
pub fn two_weight() -> DerivationAction {
    let ring = GradedRing::from_pairs(&[("x", 0), ("y", -1), ("z", -2)]);
    let lie = GradedLieAlgebra::abelian(vec![(2, names(&["xi1"])), (1, names(&["xi2"]))]).unwrap();
    let (x, y) = (ring.var("x"), ring.var("y"));
    let zero = x.scale(&int(0));
    let table = vec![vec![zero.clone(), zero.clone(), x.clone()], vec![zero, x, y]];
    DerivationAction::new(PresentedAlgebra::free(ring), lie, table).unwrap()
}

/// Abelian Lie algebra with one vector of weight 2 and one of weight 1.
pub fn ga_pair_lie() -> GradedLieAlgebra {
    GradedLieAlgebra::abelian(vec![(2, names(&["xi1"])), (1, names(&["xi2"]))]).unwrap()
}

/// Heisenberg algebra: `Z` of weight 2, `X, Y` of weight 1, `[X, Y] = Z`.
pub fn heisenberg_lie() -> GradedLieAlgebra {
    GradedLieAlgebra::new(
        vec![(2, names(&["Z"])), (1, names(&["X", "Y"]))],
        vec![(1, 2, LieElement(vec![int(1), int(0), int(0)]))],
    )
    .unwrap()
}

/// One-dimensional algebra of weight 1.
pub fn ga_lie() -> GradedLieAlgebra {
    GradedLieAlgebra::abelian(vec![(1, names(&["xi"]))]).unwrap()
}

/// Heisenberg action on `ℚ[x, y1, y2, z]` (weights `0, −1, −1, −2`):
/// `X: y1 ↦ x`, `Y: y2 ↦ x, z ↦ y1`, `Z: z ↦ x`.
pub fn heisenberg_action() -> DerivationAction {
    let ring = GradedRing::from_pairs(&[("x", 0), ("y1", -1), ("y2", -1), ("z", -2)]);
    let (x, y1) = (ring.var("x"), ring.var("y1"));
    let o = x.scale(&int(0));
    let table = vec![
        vec![o.clone(), o.clone(), o.clone(), x.clone()],
        vec![o.clone(), x.clone(), o.clone(), o.clone()],
        vec![o.clone(), o.clone(), x, y1],
    ];
    DerivationAction::new(PresentedAlgebra::free(ring), heisenberg_lie(), table).unwrap()
}

/// Heisenberg acting by translations on `ℚ[y1, y2, z]`:
/// `X: y1 ↦ 1`, `Y: y2 ↦ 1, z ↦ y1`, `Z: z ↦ 1`.
pub fn heisenberg_translation() -> DerivationAction {
    let ring = GradedRing::from_pairs(&[("y1", -1), ("y2", -1), ("z", -2)]);
    let n = ring.nvars();
    let (o, one, y1) = (Polynomial::zero(n), Polynomial::one(n), ring.var("y1"));
    let table = vec![
        vec![o.clone(), o.clone(), one.clone()],
        vec![one.clone(), o.clone(), o.clone()],
        vec![o.clone(), one, y1],
    ];
    DerivationAction::new(PresentedAlgebra::free(ring), heisenberg_lie(), table).unwrap()
}

/// Two levels on `ℚ[x, y, z]` (weights `0, −1, −2`): `xi1: z ↦ 1`, `xi2: y ↦ 1, z ↦ y`.
pub fn two_step_translation() -> DerivationAction {
    let ring = GradedRing::from_pairs(&[("x", 0), ("y", -1), ("z", -2)]);
    let n = ring.nvars();
    let (o, one, y) = (Polynomial::zero(n), Polynomial::one(n), ring.var("y"));
    let table = vec![vec![o.clone(), o.clone(), one.clone()], vec![o, one, y]];
    DerivationAction::new(PresentedAlgebra::free(ring), ga_pair_lie(), table).unwrap()
}

/// Valid two-level abelian family on `ℚ[x, y, z]` (weights `0, −1, −2`):
/// `xi1` (weight 2) sends `z ↦ c·x^e`; `xi2` (weight 1) sends `y ↦ x^e`, `z ↦ y·x^d`.
pub fn two_level_family(c: i64, e: u32, d: u32) -> DerivationAction {
    let ring = GradedRing::from_pairs(&[("x", 0), ("y", -1), ("z", -2)]);
    let (x, y) = (ring.var("x"), ring.var("y"));
    let o = Polynomial::zero(3);
    let xe = x.pow(e);
    let table = vec![vec![o.clone(), o.clone(), xe.scale(&int(c))], vec![o, xe, &y * &x.pow(d)]];
    DerivationAction::new(PresentedAlgebra::free(ring), ga_pair_lie(), table).unwrap()
}

/// `ℚ[x1..x_nx, y1..y_r]` with `ξ_i = σ ∂_{y_i} σ⁻¹` for a random unipotent
/// `σ(y) = L y`, `L` lower triangular over `ℚ[x]`. Returns the action and the
/// known slices `σ(y_j)`.
pub fn conjugated_translation<R: rand::Rng>(rng: &mut R, nx: usize, r: usize) -> (DerivationAction, Vec<Polynomial>) {
    let mut pairs: Vec<(String, i64)> = (1..=nx).map(|i| (alloc::format!("x{i}"), 0)).collect();
    pairs.extend((1..=r).map(|j| (alloc::format!("y{j}"), -1)));
    let refs: Vec<(&str, i64)> = pairs.iter().map(|(s, w)| (s.as_str(), *w)).collect();
    let ring = GradedRing::from_pairs(&refs);
    let n = ring.nvars();
    let xpoly = |rng: &mut R| {
        let mut p = Polynomial::constant(n, int(rng.gen_range(-2..=2)));
        for _ in 0..2 {
            let mut e = vec![0u32; n];
            for slot in e.iter_mut().take(nx) {
                *slot = rng.gen_range(0..=1);
            }
            p = p + Polynomial::term(crate::ring::Monomial::from_exps(&e), int(rng.gen_range(-3..=3)));
        }
        p
    };
    let mut l = vec![vec![Polynomial::zero(n); r]; r];
    for j in 0..r {
        l[j][j] = Polynomial::one(n);
        for k in 0..j {
            l[j][k] = xpoly(rng);
        }
    }
    // forward substitution for L⁻¹
    let mut inv = vec![vec![Polynomial::zero(n); r]; r];
    for j in 0..r {
        inv[j][j] = Polynomial::one(n);
        for i in 0..j {
            let mut s = Polynomial::zero(n);
            for k in i..j {
                s = s + &l[j][k] * &inv[k][i];
            }
            inv[j][i] = -s;
        }
    }
    let names_y: Vec<String> = (1..=r).map(|j| alloc::format!("xi{j}")).collect();
    let lie = GradedLieAlgebra::abelian(vec![(1, names_y)]).unwrap();
    let table: Vec<Vec<Polynomial>> = (0..r)
        .map(|i| (0..n).map(|v| if v < nx { Polynomial::zero(n) } else { inv[v - nx][i].clone() }).collect())
        .collect();
    let slices = (0..r)
        .map(|j| (0..r).fold(Polynomial::zero(n), |acc, k| acc + &l[j][k] * &Polynomial::var(n, nx + k)))
        .collect();
    (DerivationAction::new(PresentedAlgebra::free(ring), lie, table).unwrap(), slices)
}
