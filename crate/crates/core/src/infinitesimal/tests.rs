use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::fixtures;
use crate::lie::GradedLieAlgebra;
use crate::ring::{int, parse_polynomial, rat, GradedRing};

fn poly(action: &DerivationAction, s: &str) -> Polynomial {
    parse_polynomial(s, &action.algebra().names()).unwrap()
}

fn pt(v: &[i64]) -> PointEval {
    PointEval(v.iter().map(|&x| int(x)).collect())
}

#[test]
fn matrices_of_the_fixtures() {
    let a = fixtures::additive_line();
    assert_eq!(infinitesimal_matrix(&a, 0).entries, vec![vec![Polynomial::zero(2), poly(&a, "x")]]);
    let t = fixtures::two_weight();
    assert_eq!(infinitesimal_matrix(&t, 0).entries, vec![vec![Polynomial::zero(3), Polynomial::zero(3), poly(&t, "x")]]);
}

#[test]
fn relative_map_of_two_weight_fixture() {
    let t = fixtures::two_weight();
    let m = relative_map(&t, 1);
    // K_1 is generated by dx and dy; the weight-1 row pairs them to (0, x)
    let sub = Submodule::new(3, &m.domain_generators, t.algebra().relations());
    let dx = vec![int(1), int(0), int(0)].into_iter().map(|c| Polynomial::constant(3, c)).collect::<Vec<_>>();
    let dy = vec![int(0), int(1), int(0)].into_iter().map(|c| Polynomial::constant(3, c)).collect::<Vec<_>>();
    assert!(sub.contains(&dx) && sub.contains(&dy));
    assert_eq!(m.domain_generators.len(), 2);
    let chain = fitting_chain(&t, &m);
    assert_eq!(chain.minors(0), &[poly(&t, "x")]);
    assert!(relative_map(&t, 0).domain_generators.len() == 3);
}

#[test]
fn fitting_chain_examples() {
    let a = fixtures::additive_line();
    let chain = fitting_chain(&a, &relative_map(&a, 0));
    assert!(chain.is_zero(-1));
    assert_eq!(chain.minors(0), &[poly(&a, "x")]);
    assert!(!chain.is_unit(0));
    assert!(chain.is_unit(1));
    assert_eq!(min_nonzero_fitting(&chain), 0);

    let alg = a.algebra();
    let zero = vec![vec![Polynomial::zero(2); 3]; 2];
    let c = fitting_chain_of_matrix(alg, &zero, 3);
    assert!(c.is_zero(0) && c.is_zero(1) && c.is_unit(2));
    assert_eq!(min_nonzero_fitting(&c), 2);

    let id = vec![vec![Polynomial::one(2), Polynomial::zero(2)], vec![Polynomial::zero(2), Polynomial::one(2)]];
    let c = fitting_chain_of_matrix(alg, &id, 2);
    assert!((0..=2).all(|k| c.is_unit(k)));
}

#[test]
fn stabilisers_at_points() {
    let a = fixtures::additive_line();
    assert_eq!(stabiliser_at_point(&a, 0, &pt(&[1, 0])).unwrap().dim, 0);
    assert_eq!(stabiliser_at_point(&a, 0, &pt(&[0, 0])).unwrap().dim, 1);
    let ring = GradedRing::from_pairs(&[("x", 0)]);
    let trivial = DerivationAction::new(crate::ring::PresentedAlgebra::free(ring), fixtures::ga_lie(), vec![vec![Polynomial::zero(1)]]).unwrap();
    assert_eq!(stabiliser_at_point(&trivial, 0, &pt(&[3])).unwrap().dim, 1);
    assert_eq!(stabiliser_at_point(&a, 0, &pt(&[1])), Err(PointError::Arity { expected: 2, found: 1 }));
}

#[test]
fn relative_stabilisers_of_two_weight_fixture() {
    let t = fixtures::two_weight();
    let m = relative_map(&t, 1);
    let c = fitting_chain(&t, &m);
    let r = relative_stabiliser_dim(&t, &m, &c, &pt(&[1, 0, 0])).unwrap();
    assert_eq!(r.coker_dim, 0);
    assert!(r.consistent());
    let r = relative_stabiliser_dim(&t, &m, &c, &pt(&[0, 2, 5])).unwrap();
    assert_eq!(r.coker_dim, 1);
    assert!(r.consistent());
}

#[test]
fn ss_and_cdrs_examples() {
    let free = fixtures::translation_line();
    let r = check_ss_eq_s(&free);
    assert!(r.holds);
    let cert = r.certificate.unwrap();
    let total = cert.iter().zip(&r.fit0).fold(Polynomial::zero(2), |a, (c, g)| a + c * g);
    assert_eq!(total, Polynomial::one(2));
    assert!(check_cdrs(&free).holds());
    assert_eq!(check_cdrs(&free).k_vector(), vec![0]);

    let a = fixtures::additive_line();
    let r = check_ss_eq_s(&a);
    assert!(!r.holds);
    assert_eq!(r.fit0, vec![poly(&a, "x")]);
    let c = check_cdrs(&a);
    assert!(!c.holds());
    assert_eq!(c.first_failure().unwrap().level, 0);

    let t = fixtures::two_weight();
    let c = check_cdrs(&t);
    assert!(c.levels.iter().all(|l| !l.fit_unit && l.fit_k == vec![poly(&t, "x")]));
    assert_eq!(c.k_vector(), vec![0, 0]);
}

#[test]
fn empty_lie_algebra_is_vacuous() {
    let ring = GradedRing::from_pairs(&[("x", 0)]);
    let lie = GradedLieAlgebra::abelian(vec![]).unwrap();
    let act = DerivationAction::new(crate::ring::PresentedAlgebra::free(ring), lie, vec![]).unwrap();
    assert!(check_ss_eq_s(&act).holds);
    assert!(check_cdrs(&act).holds());
}

#[test]
fn zero_ring_is_an_empty_chart() {
    let ring = GradedRing::from_pairs(&[("x", 0), ("y", -1)]);
    let a = fixtures::additive_line();
    let alg = crate::ring::PresentedAlgebra::new(ring, vec![Polynomial::one(2)]);
    let act = DerivationAction::new(alg, a.lie().clone(), a.table()).unwrap();
    let c = check_cdrs(&act);
    assert!(c.empty_chart && c.holds());
    assert!(check_ss_eq_s(&act).empty_chart);
}

#[test]
fn snake_sequences_are_exact() {
    for act in [fixtures::additive_line(), fixtures::two_weight(), fixtures::heisenberg_action(), fixtures::translation_line()] {
        for i in 0..act.lie().nlevels() {
            let r = verify_snake_exactness(&act, i);
            assert!(r.exact(), "level {i}: {r:?}");
        }
    }
}

#[test]
fn matrix_entries_have_the_expected_weight() {
    for act in [fixtures::additive_line(), fixtures::two_weight(), fixtures::heisenberg_action()] {
        let w = act.algebra().weights();
        let m = full_matrix(&act);
        for (row, &a) in m.entries.iter().zip(&m.rows) {
            for (g, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    assert_eq!(e.homogeneous_weight(&w), Some(w[g] + act.lie().weight_of(a)));
                }
            }
        }
    }
}

#[test]
fn ss_implies_trivial_stabilisers() {
    let free = fixtures::translation_line();
    assert!(check_ss_eq_s(&free).holds);
    for x in -3..=3 {
        for y in -3..=3 {
            assert_eq!(stabiliser_at_point(&free, 0, &pt(&[x, y])).unwrap().dim, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fitting_ideals_ignore_redundant_generators(c in prop::collection::vec(-2i64..=2, 4)) {
        let t = fixtures::heisenberg_action();
        let m = relative_map(&t, 1);
        let n = t.algebra().nvars();
        let combo: Vec<Polynomial> = (0..n)
            .map(|g| {
                m.domain_generators.iter().zip(&c).fold(Polynomial::zero(n), |acc, (k, &ci)| acc + k[g].scale(&int(ci)) * Polynomial::var(n, 0))
            })
            .collect();
        let m2 = m.with_extra_generators(&t, vec![combo]);
        let (a, b) = (fitting_chain(&t, &m), fitting_chain(&t, &m2));
        for k in 0..=2 {
            prop_assert!(a.ideal(k).unwrap().same_as(b.ideal(k).unwrap()));
        }
    }

    #[test]
    fn point_criterion_matches_fitting_ideals(x in -4i64..=4, y1 in -4i64..=4, y2 in -4i64..=4, z in -4i64..=4, d in 1i64..=3) {
        let t = fixtures::heisenberg_action();
        let p = PointEval(vec![rat(x, d), int(y1), int(y2), int(z)]);
        for i in 0..2 {
            let m = relative_map(&t, i);
            let c = fitting_chain(&t, &m);
            prop_assert!(relative_stabiliser_dim(&t, &m, &c, &p).unwrap().consistent());
        }
    }
}

#[test]
fn quotienting_the_target_enlarges_fitting_ideals() {
    let t = fixtures::two_weight();
    let m = relative_map(&t, 1);
    let mut matrix = m.matrix.clone();
    // the extra column is an arbitrary new relation on the target
    matrix[0].push(poly(&t, "y"));
    let a = fitting_chain(&t, &m);
    let b = fitting_chain_of_matrix(t.algebra(), &matrix, m.ncols() + 1);
    for k in 0..=1 {
        assert!(b.ideal(k).unwrap().contains_ideal(a.ideal(k).unwrap()));
    }
}
