use alloc::vec::Vec;
use std::string::String;

use proptest::prelude::*;

use super::*;
use super::parse::names_of;

fn names(v: &[&str]) -> Vec<String> {
    names_of(v)
}

fn p(text: &str, vars: &[&str]) -> Polynomial {
    parse_polynomial(text, &names(vars)).unwrap()
}

fn ideal(gens: &[&str], vars: &[&str]) -> Ideal {
    Ideal::new(vars.len(), gens.iter().map(|g| p(g, vars)).collect(), MonomialOrder::DegRevLex)
}

const XY: &[&str] = &["x", "y"];

#[test]
fn zero_and_unit_ideals() {
    assert!(groebner_basis(&ideal(&["0"], XY)).is_empty());
    assert_eq!(groebner_basis(&ideal(&["x", "x+1"], XY)), vec![Polynomial::one(2)]);
    assert!(is_unit_ideal(&ideal(&["x", "1-x"], XY)));
    assert!(!is_unit_ideal(&ideal(&["x*y"], XY)));
    assert!(!is_unit_ideal(&ideal(&["x^2+1"], &["x"])));
}

#[test]
fn hand_buchberger_basis() {
    // S(x²−y, xy−1) = x − y² gives y² − x; the remaining pair reduces to zero.
    let gb = groebner_basis(&ideal(&["x^2-y", "x*y-1"], XY));
    let mut expect = vec![p("y^2-x", XY), p("x*y-1", XY), p("x^2-y", XY)];
    expect.sort_by(|a, b| {
        let o = MonomialOrder::DegRevLex;
        o.cmp(a.leading_term(&o).unwrap().0, b.leading_term(&o).unwrap().0)
    });
    assert_eq!(gb, expect);
    assert_eq!(normal_form(&p("x*y-1", XY), &ideal(&["x^2-y"], XY)), p("x*y-1", XY));
    assert_eq!(normal_form(&p("x^3", XY), &ideal(&["x^2-y", "x*y-1"], XY)), Polynomial::one(2));
}

#[test]
fn normal_form_examples() {
    assert!(normal_form(&p("x^2", XY), &ideal(&["x"], XY)).is_zero());
    assert_eq!(normal_form(&p("y", XY), &ideal(&["x"], XY)), p("y", XY));
}

#[test]
fn syzygy_examples() {
    let v3 = ["x", "y", "z"];
    let n = 3;
    let z = Polynomial::zero(n);
    let zero_rel = Ideal::zero(n, MonomialOrder::DegRevLex);
    let m = FreeModuleMap::new(n, 3, vec![vec![z.clone(), z.clone(), p("x", &v3)]]);
    let k = syzygy_kernel(&m, &zero_rel);
    let one = Polynomial::one(n);
    assert_eq!(k, vec![vec![z.clone(), one.clone(), z.clone()], vec![one.clone(), z.clone(), z.clone()]]
        .into_iter()
        .filter(|v| k.contains(v))
        .collect::<Vec<_>>());
    assert_eq!(k.len(), 2);
    let zero_map = FreeModuleMap::new(n, 2, vec![vec![z.clone(), z.clone()]]);
    assert_eq!(syzygy_kernel(&zero_map, &zero_rel).len(), 2);
    let id = FreeModuleMap::new(n, 1, vec![vec![one]]);
    assert!(syzygy_kernel(&id, &zero_rel).is_empty());
}

#[test]
fn syzygies_modulo_relations() {
    // Over ℚ[x,y]/(xy), multiplication by x has kernel generated by y.
    let rel = ideal(&["x*y"], XY);
    let m = FreeModuleMap::new(2, 1, vec![vec![p("x", XY)]]);
    assert_eq!(syzygy_kernel(&m, &rel), vec![vec![p("y", XY)]]);
}

#[test]
fn elimination_examples() {
    let v = ["t", "x", "y"];
    let e = eliminate(&ideal(&["t-x^2", "t-y"], &v), &[false, true, true]);
    assert!(e.same_as(&ideal(&["x^2-y"], &v)));
    assert!(eliminate(&ideal(&["x"], XY), &[false, true]).is_zero());
    assert!(eliminate(&ideal(&["1"], XY), &[false, true]).is_unit());
}

#[test]
fn saturation_removes_component() {
    // (x·y, x²) : x^∞ = (1)
    assert!(saturate(&ideal(&["x*y", "x^2"], XY), &p("x", XY)).is_unit());
    // (x·y) : x^∞ = (y)
    assert!(saturate(&ideal(&["x*y"], XY), &p("x", XY)).same_as(&ideal(&["y"], XY)));
}

#[test]
fn weight_decompose_examples() {
    let w = [0, -1];
    let d = p("x+y", XY).weight_decompose(&w);
    assert_eq!(d.len(), 2);
    assert_eq!(d[&0], p("x", XY));
    assert_eq!(d[&-1], p("y", XY));
    assert!(Polynomial::zero(2).weight_decompose(&w).is_empty());
    let d = p("x*y^2", XY).weight_decompose(&w);
    assert_eq!(d.keys().copied().collect::<Vec<_>>(), vec![-2]);
}

#[test]
fn lift_expresses_membership() {
    let gens: Vec<Polynomial> = ["x", "1-x"].iter().map(|g| p(g, XY)).collect();
    let c = lift(2, &gens, &Polynomial::one(2), &MonomialOrder::DegRevLex).unwrap();
    let total = c.iter().zip(&gens).fold(Polynomial::zero(2), |a, (c, g)| a + c * g);
    assert_eq!(total, Polynomial::one(2));
    assert!(lift(2, &[p("x*y", XY)], &Polynomial::one(2), &MonomialOrder::DegRevLex).is_none());
}

#[test]
fn parser_round_trip() {
    let v = names(&["x", "y", "z"]);
    let q = parse_polynomial("2*x*z - y^2 + 1/2", &v).unwrap();
    let shown = std::format!("{}", q.display(&v));
    assert_eq!(parse_polynomial(&shown, &v).unwrap(), q);
    assert!(parse_polynomial("x/y", &v).is_err());
    assert!(parse_polynomial("w", &v).is_err());
    assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
}

fn arb_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -4i64..=4), 0..5).prop_map(move |ts| {
        Polynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_linear_and_multiplicative(a in arb_poly(3, 2), b in arb_poly(3, 2), g1 in arb_poly(3, 2), g2 in arb_poly(3, 2)) {
        let i = Ideal::new(3, vec![g1, g2], MonomialOrder::DegRevLex);
        let nf = |q: &Polynomial| i.normal_form(q);
        prop_assert_eq!(nf(&(&a + &b)), nf(&(nf(&a) + nf(&b))));
        prop_assert_eq!(nf(&(&a * &b)), nf(&(&nf(&a) * &nf(&b))));
    }

    #[test]
    fn groebner_is_independent_of_generator_order(g in prop::collection::vec(arb_poly(3, 2), 1..4)) {
        let a = Ideal::new(3, g.clone(), MonomialOrder::DegRevLex);
        let mut r = g.clone();
        r.reverse();
        let b = Ideal::new(3, r, MonomialOrder::DegRevLex);
        prop_assert_eq!(groebner_basis(&a), groebner_basis(&b));
        for x in &g {
            prop_assert!(a.contains(x));
        }
    }

    #[test]
    fn weight_decomposition_is_a_grading(a in arb_poly(3, 2), b in arb_poly(3, 2)) {
        let w = [0, -1, -2];
        let da = a.weight_decompose(&w);
        let db = b.weight_decompose(&w);
        let dab = (&a * &b).weight_decompose(&w);
        let mut expect: std::collections::BTreeMap<i64, Polynomial> = Default::default();
        for (u, pu) in &da {
            for (v, qv) in &db {
                let e = expect.entry(u + v).or_insert_with(|| Polynomial::zero(3));
                *e = &*e + &(pu * qv);
            }
        }
        expect.retain(|_, v| !v.is_zero());
        prop_assert_eq!(dab, expect);
    }

    #[test]
    fn syzygies_map_to_zero(c in prop::collection::vec(arb_poly(2, 2), 2..4)) {
        let n = 2;
        let m = FreeModuleMap::new(n, c.len(), vec![c.clone()]);
        let rel = Ideal::zero(n, MonomialOrder::DegRevLex);
        for k in syzygy_kernel(&m, &rel) {
            prop_assert!(m.apply(&k)[0].is_zero());
        }
    }
}

/// Degree-bounded linear algebra: every kernel vector of low degree lies in the
/// submodule generated by the computed syzygies.
#[test]
fn syzygy_completeness_against_enumeration() {
    let cols = [p("x^2", XY), p("x*y", XY), p("y^2", XY)];
    let m = FreeModuleMap::new(2, 3, vec![cols.to_vec()]);
    let rel = Ideal::zero(2, MonomialOrder::DegRevLex);
    let k = syzygy_kernel(&m, &rel);
    let sub = Submodule::new(3, &k, &rel);
    let alg = PresentedAlgebra::free(GradedRing::from_pairs(&[("x", 0), ("y", 0)]));
    let mons = alg.standard_monomials(2);
    // unknown coefficient per (component, monomial)
    let unknowns: Vec<(usize, Monomial)> = (0..3).flat_map(|c| mons.iter().map(move |m| (c, m.clone()))).collect();
    let mut out_mons: Vec<Monomial> = Vec::new();
    let images: Vec<Polynomial> = unknowns.iter().map(|(c, mm)| cols[*c].mul_term(mm, &int(1))).collect();
    for im in &images {
        for (mm, _) in im.terms() {
            if !out_mons.contains(mm) {
                out_mons.push(mm.clone());
            }
        }
    }
    let mat: Vec<Vec<Rational>> = out_mons.iter().map(|om| images.iter().map(|im| im.coefficient(om)).collect()).collect();
    let ns = linalg::nullspace(&mat, unknowns.len());
    assert!(!ns.is_empty());
    for v in ns {
        let mut vec3: Vec<Polynomial> = (0..3).map(|_| Polynomial::zero(2)).collect();
        for ((c, mm), coef) in unknowns.iter().zip(&v) {
            vec3[*c].add_term(mm.clone(), coef.clone());
        }
        assert!(sub.contains(&vec3));
    }
}
