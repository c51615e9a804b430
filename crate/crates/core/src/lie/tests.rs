use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::fixtures;
use crate::ring::{int, parse_polynomial, rat, GradedRing, Monomial, Polynomial, PresentedAlgebra, Rational};

fn poly(action: &DerivationAction, s: &str) -> Polynomial {
    parse_polynomial(s, &action.algebra().names()).unwrap()
}

#[test]
fn validation_examples() {
    assert!(fixtures::additive_line().validate().is_empty());
    assert!(fixtures::two_weight().validate().is_empty());
    assert!(fixtures::heisenberg_action().validate().is_empty());

    let ring = GradedRing::from_pairs(&[("x", 0), ("y", -1)]);
    let y = ring.var("y");
    let bad = DerivationAction::new(PresentedAlgebra::free(ring), fixtures::ga_lie(), vec![vec![Polynomial::zero(2), y]]).unwrap();
    let v = bad.validate();
    assert_eq!(v.len(), 1);
    assert!(matches!(&v[0], Violation::Weight { generator, expected: 0, .. } if generator == "y"));

    let lie = GradedLieAlgebra::new(
        vec![(1, vec!["a".into(), "b".into()])],
        vec![(0, 1, LieElement(vec![int(0), int(1)]))],
    )
    .unwrap();
    assert!(lie.validate().iter().any(|v| matches!(v, LieViolation::WeightAdditivity { .. })));
}

#[test]
fn bracket_incompatibility_is_reported() {
    // Heisenberg brackets but an action where X and Y commute on z.
    let h = fixtures::heisenberg_action();
    let mut table = h.table();
    table[0][3] = Polynomial::zero(4);
    let bad = DerivationAction::new(h.algebra().clone(), h.lie().clone(), table).unwrap();
    assert!(bad.validate().iter().any(|v| matches!(v, Violation::Bracket { .. })));
}

#[test]
fn derivation_examples() {
    let a = fixtures::additive_line();
    let xi = LieElement::basis(1, 0);
    assert_eq!(a.apply_derivation(&xi, &poly(&a, "y^2")), poly(&a, "2*x*y"));
    assert!(a.apply_derivation(&xi, &poly(&a, "x")).is_zero());
    let t = fixtures::two_weight();
    assert!(t.apply_basis(1, &poly(&t, "2*x*z - y^2")).is_zero());
}

#[test]
fn pbw_action_examples() {
    let a = fixtures::additive_line();
    assert!(a.apply_pbw(&PbwMonomial(vec![2]), &poly(&a, "y")).is_zero());
    let t = fixtures::two_weight();
    assert_eq!(t.apply_pbw(&PbwMonomial(vec![0, 2]), &poly(&t, "z")), poly(&t, "x"));
    assert_eq!(t.apply_pbw(&PbwMonomial(vec![0, 0]), &poly(&t, "z")), poly(&t, "z"));
}

#[test]
fn complete_bracket_examples() {
    let h = fixtures::heisenberg_lie();
    assert_eq!(complete_bracket_word(&h, &[1]), LieElement::basis(3, 1));
    // [Y, X] = −Z
    assert_eq!(complete_bracket_word(&h, &[2, 1]), LieElement(vec![int(-1), int(0), int(0)]));
    assert!(complete_bracket_word(&fixtures::ga_pair_lie(), &[0, 1]).is_zero());
}

#[test]
fn pbw_rewriting_in_heisenberg() {
    let h = fixtures::heisenberg_lie();
    let mut o = PbwOrderer::new(&h);
    // Y·X = X·Y − Z
    let e = o.order(&[2, 1]);
    assert_eq!(e.coefficient(&PbwMonomial(vec![0, 1, 1])), int(1));
    assert_eq!(e.coefficient(&PbwMonomial(vec![1, 0, 0])), int(-1));
    assert_eq!(e.0.len(), 2);
}

#[test]
fn identity_examples() {
    assert!(verify_weighted_bracket_identity(&[int(5)], &[1], 4).is_ok());
    assert!(verify_weighted_bracket_identity(&[int(2), int(1)], &[1, 1], 4).is_ok());
    assert!(verify_weighted_bracket_identity(&[int(3), int(1)], &[2, 1], 4).is_ok());
    assert!(verify_commutator_identity(&[], 4).is_ok());
    assert!(verify_commutator_identity(&[1], 4).is_ok());
    assert!(verify_commutator_identity(&[1, 1], 4).is_ok());
    assert!(matches!(verify_commutator_identity(&[3, 3], 4), Err(IdentityFailure::OverCap(6, 4))));
}

#[test]
fn coaction_examples() {
    let a = fixtures::additive_line();
    let c = coaction_expand(&a, &poly(&a, "y"), 32);
    assert_eq!(c, vec![(PbwMonomial(vec![0]), poly(&a, "y")), (PbwMonomial(vec![1]), poly(&a, "x"))]);
    assert_eq!(coaction_expand(&a, &poly(&a, "x^3"), 32), vec![(PbwMonomial(vec![0]), poly(&a, "x^3"))]);
    let t = fixtures::two_weight();
    let c = coaction_expand(&t, &poly(&t, "z"), 32);
    assert_eq!(
        c,
        vec![
            (PbwMonomial(vec![0, 0]), poly(&t, "z")),
            (PbwMonomial(vec![0, 1]), poly(&t, "y")),
            (PbwMonomial(vec![0, 2]), poly(&t, "1/2*x")),
            (PbwMonomial(vec![1, 0]), poly(&t, "x")),
        ]
    );
}

#[test]
fn additive_group_coefficients_are_binomial() {
    let t = comult_coefficients(&fixtures::ga_lie(), 5);
    for k in 0..=5u32 {
        for j in 0..=5u32 {
            for l in 0..=5u32 {
                let want = if j + l == k { crate::ring::binomial(k, j) } else { Rational::from_integer(0.into()) };
                assert_eq!(t.get(&[k], &[j], &[l]), want);
            }
        }
    }
    assert!(check_comult_lemmas(&t).is_empty());
}

#[test]
fn heisenberg_group_law() {
    // exp(uZ)exp(uX X)exp(uY Y)·exp(vZ)exp(vX X)exp(vY Y): moving exp(uY Y) past
    // exp(vX X) costs exp(−uY vX Z).
    let t = comult_coefficients(&fixtures::heisenberg_lie(), 3);
    let names: Vec<alloc::string::String> = ["uZ", "uX", "uY", "vZ", "vX", "vY"].iter().map(|s| (*s).into()).collect();
    let p = |s: &str| parse_polynomial(s, &names).unwrap();
    assert_eq!(t.group_law, vec![p("uZ + vZ - uY*vX"), p("uX + vX"), p("uY + vY")]);
    assert_eq!(t.get(&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]), int(-1));
    assert!(check_comult_lemmas(&t).is_empty());
    let t2 = comult_coefficients(&fixtures::ga_pair_lie(), 3);
    assert!(check_comult_lemmas(&t2).is_empty());
}

#[test]
fn pbw_enumeration_weights() {
    let h = fixtures::heisenberg_lie();
    let ms = pbw_monomials(&h, 2, 10);
    // 1, X, Y, Z, X², XY, Y²
    assert_eq!(ms.len(), 7);
    assert!(ms.windows(2).all(|w| w[0].weight(&h) <= w[1].weight(&h)));
}

fn coaction_poly(action: &DerivationAction, f: &Polynomial, offset: usize, total: usize) -> Polynomial {
    // Σ u^α f_α as a polynomial in ring vars ⊕ (u at `offset`)
    let mut out = Polynomial::zero(total);
    for (alpha, fa) in coaction_expand(action, f, 64) {
        let mut e = vec![0u32; total];
        for (j, &a) in alpha.0.iter().enumerate() {
            e[offset + j] = a;
        }
        out = out + &fa.extend(total) * &Polynomial::term(Monomial::from_exps(&e), int(1));
    }
    out
}

fn check_coassociativity(action: &DerivationAction, f: &Polynomial) {
    let n = action.algebra().nvars();
    let d = action.lie().dim();
    let total = n + 2 * d;
    let law = comult_coefficients(action.lie(), 1).group_law;
    // E(u)·E(v) = E(w(u, v)): u sits at offset n, v at offset n + d
    let images: Vec<Polynomial> = (0..2 * d).map(|i| Polynomial::var(total, n + i)).collect();
    let mut lhs = Polynomial::zero(total);
    for (alpha, fa) in coaction_expand(action, f, 64) {
        let mut m = fa.extend(total);
        for (j, &a) in alpha.0.iter().enumerate() {
            m = &m * &law[j].substitute(&images).pow(a);
        }
        lhs = lhs + m;
    }
    // E(u)(E(v) f) = Σ_β v^β Σ_α u^α (f_β)_α
    let mut rhs = Polynomial::zero(total);
    for (beta, fb) in coaction_expand(action, f, 64) {
        let inner = coaction_poly(action, &fb, n, total);
        let mut e = vec![0u32; total];
        for (j, &b) in beta.0.iter().enumerate() {
            e[n + d + j] = b;
        }
        rhs = rhs + &inner * &Polynomial::term(Monomial::from_exps(&e), int(1));
    }
    assert_eq!(lhs, rhs);
}

fn arb_small_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), -3i64..=3), 0..4).prop_map(move |ts| {
        Polynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coaction_is_coassociative_heisenberg(f in arb_small_poly(4)) {
        check_coassociativity(&fixtures::heisenberg_action(), &f);
    }

    #[test]
    fn coaction_is_coassociative_two_weight(f in arb_small_poly(3)) {
        check_coassociativity(&fixtures::two_weight(), &f);
    }

    #[test]
    fn coaction_components_lie_in_the_orbit_span(f in arb_small_poly(4)) {
        let h = fixtures::heisenberg_action();
        let w = h.algebra().weights();
        let bound = f.min_weight(&w).map_or(0, |m| -m);
        let span: Vec<Polynomial> = pbw_monomials(h.lie(), bound, 64).iter().map(|p| h.apply_pbw(p, &f)).collect();
        let mut mons: Vec<Monomial> = Vec::new();
        for s in &span {
            for (m, _) in s.terms() {
                if !mons.contains(m) { mons.push(m.clone()); }
            }
        }
        for (_, fa) in coaction_expand(&h, &f, 64) {
            let mat: Vec<Vec<Rational>> = mons.iter().map(|m| span.iter().map(|s| s.coefficient(m)).collect()).collect();
            let rhs: Vec<Rational> = mons.iter().map(|m| fa.coefficient(m)).collect();
            prop_assert!(fa.terms().all(|(m, _)| mons.contains(m)));
            prop_assert!(crate::ring::linalg::solve(&mat, &rhs, span.len()).is_some());
        }
    }

    #[test]
    fn pbw_action_composes(f in arb_small_poly(4), p in prop::collection::vec(0u32..=2, 3), j in 0usize..3) {
        let h = fixtures::heisenberg_action();
        // ξ_j · ξ^p expanded in PBW form must act as ξ_j applied after ξ^p
        let x = UeaElement::monomial(PbwMonomial::basis(3, j), int(1))
            .mul(&UeaElement::monomial(PbwMonomial(p.clone()), int(1)), h.lie());
        prop_assert_eq!(h.apply_uea(&x, &f), h.apply_basis(j, &h.apply_pbw(&PbwMonomial(p), &f)));
    }

    #[test]
    fn complete_brackets_preserve_weight(word in prop::collection::vec(0usize..3, 1..5)) {
        let h = fixtures::heisenberg_lie();
        let w: i64 = word.iter().map(|&a| h.weight_of(a)).sum();
        let b = complete_bracket_word(&h, &word);
        prop_assert!(b.support().all(|(k, _)| h.weight_of(k) == w));
    }

    #[test]
    fn weighted_identity_random_weights(w in prop::collection::vec(-5i64..=5, 3), k in prop::collection::vec(0u32..=2, 3)) {
        let ws: Vec<Rational> = w.iter().map(|&v| rat(v, 3)).collect();
        prop_assert!(verify_weighted_bracket_identity(&ws, &k, 6).is_ok());
    }
}
