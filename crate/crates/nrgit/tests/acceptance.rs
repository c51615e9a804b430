//! Acceptance checks 1–8. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nrgit::commands;
use nrgit::report::Status;
use nrgit::scenario::{parse_scenario, Scenario};
use nrgit_core::blowup::{
    beta_check_all, build_chart, centre, chart_consistent, construct_b, j_membership, verify_chart_cdrs, CentreData,
};
use nrgit_core::infinitesimal::{fitting_chain, fitting_chain_of_matrix, relative_map, relative_stabiliser_dim, PointEval};
use nrgit_core::lie::{
    check_comult_lemmas, comult_coefficients, exponent_vectors, verify_commutator_identity, verify_weighted_bracket_identity,
    DerivationAction, PbwMonomial,
};
use nrgit_core::quotient::{staged_quotient, verify_quotient, DixmierProjector, StageCheck};
use nrgit_core::ring::{groebner_basis, int, parse_polynomial, Ideal};
use nrgit_core::{fixtures, GradedRing, Monomial, Polynomial, PresentedAlgebra, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Wall-clock limits per criterion. Every comparison is exact (zero tolerance).
const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(5);
const LIMIT_3: Duration = Duration::from_secs(60);
const LIMIT_4: Duration = Duration::from_secs(30);
const LIMIT_5: Duration = Duration::from_secs(120);
const LIMIT_6: Duration = Duration::from_secs(30);
const LIMIT_7: Duration = Duration::from_secs(10);
const LIMIT_8: Duration = Duration::from_secs(30);

const SEED: u64 = 20240611;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.scn", env!("CARGO_MANIFEST_DIR"))
}

fn scenario(name: &str) -> Scenario {
    parse_scenario(&std::fs::read_to_string(fixture_path(name)).expect("fixture exists")).expect("fixture parses")
}

fn poly(alg: &PresentedAlgebra, s: &str) -> Polynomial {
    parse_polynomial(s, &alg.names()).expect("test polynomial parses")
}

fn show(alg: &PresentedAlgebra, p: &Polynomial) -> String {
    alg.show(p)
}

fn same_ideal(alg: &PresentedAlgebra, i: &Ideal, gens: &[&str]) -> bool {
    i.same_as(&alg.ideal(gens.iter().map(|g| poly(alg, g)).collect()))
}

/// One-weight fixture, `ξ.y = x`.
fn criterion_1() -> Outcome {
    let s = scenario("additive_line");
    let report = commands::analyze(&s);
    ensure(report.status == Status::Success, || "analyze did not succeed".into())?;
    let ss = &report.body["ss_eq_s"];
    ensure(ss["holds"] == false, || "ss=s reported true".into())?;
    ensure(ss["fit0"] == serde_json::json!(["x"]), || format!("Fit_0 reported as {}", ss["fit0"]))?;

    let act = s.action();
    let alg = act.algebra();
    let c = centre(&act, s.options.degree_bound).map_err(|e| e.to_string())?;
    ensure(same_ideal(alg, &c.centre_ideal, &["x", "y"]), || "centre is not <x, y>".into())?;
    let bs = construct_b(&c).map_err(|e| e.to_string())?;
    ensure(bs.b == vec![vec![poly(alg, "y")]], || format!("b_1 = {:?}", bs.b))?;
    let xi_b = c.action.apply_basis(0, &bs.b[0][0]);
    ensure(xi_b == c.a, || format!("xi.b_1 = {} but a = {}", show(alg, &xi_b), show(alg, &c.a)))?;
    let chart = build_chart(&c, &bs, &[]).map_err(|e| e.to_string())?;
    let t = chart.fraction(chart.b_index[0][0]);
    let xi_t = chart.action.apply_basis(0, &t);
    let one = Polynomial::one(chart.action.algebra().nvars());
    ensure(xi_t == one, || format!("xi.(y/x) = {}", show(chart.action.algebra(), &xi_t)))?;
    ensure(chart_consistent(&c, &chart), || "chart map is inconsistent".into())?;
    ensure(verify_chart_cdrs(&c, &chart).passes(), || "chart fails the stabiliser condition".into())?;
    Ok("ss=s false, Fit_0=<x>, I=<x,y>, b=y, xi.b=a, xi.(y/x)=1, chart passes".into())
}

/// Two-weight abelian fixture.
fn criterion_2() -> Outcome {
    let s = scenario("two_weight");
    let act = s.action();
    let alg = act.algebra();
    let c = centre(&act, s.options.degree_bound).map_err(|e| e.to_string())?;
    ensure(c.k_vector == vec![0, 0], || format!("k = {:?}", c.k_vector))?;
    ensure(same_ideal(alg, &c.product_ideal, &["x^2"]), || "product of Fitting ideals is not <x^2>".into())?;
    let bs = construct_b(&c).map_err(|e| e.to_string())?;
    ensure(bs.b[1] == vec![poly(alg, "y")], || format!("weight-1 b = {:?}", bs.b[1]))?;
    ensure(bs.b[0] == vec![poly(alg, "2*x*z - y^2")], || format!("weight-2 b = {:?}", bs.b[0]))?;
    let b1 = &bs.b[0][0];
    let xi1 = c.action.apply_basis(0, b1);
    ensure(xi1 == poly(alg, "2*x^2"), || format!("xi1.b = {}", show(alg, &xi1)))?;
    let xi2sq = c.action.apply_pbw(&PbwMonomial(vec![0, 2]), b1);
    ensure(xi2sq.is_zero(), || format!("xi2^2.b = {}", show(alg, &xi2sq)))?;
    ensure(c.a == poly(alg, "x^2"), || format!("a = {}", show(alg, &c.a)))?;
    let chart = build_chart(&c, &bs, &[]).map_err(|e| e.to_string())?;
    ensure(chart_consistent(&c, &chart), || "chart map is inconsistent".into())?;
    let rep = verify_chart_cdrs(&c, &chart);
    ensure(rep.passes(), || format!("chart report {rep:?}"))?;
    Ok("k=(0,0), I=<x^2>, b=y and 2xz-y^2, xi1.b=2x^2, xi2^2.b=0, a=x^2 chart passes".into())
}

fn lemma_suite(name: &str, c: &CentreData) -> Result<(usize, usize), String> {
    let bs = construct_b(c).map_err(|e| format!("{name}: {e}"))?;
    let (count, failures) = beta_check_all(c, &bs);
    ensure(failures.is_empty(), || format!("{name}: beta check fails at {:?}", failures[0]))?;
    Ok((bs.checked, count))
}

/// Existence lemma for the `b` elements, on the fixtures and random two-level scenarios.
fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases: Vec<(String, DerivationAction)> = vec![
        ("additive_line".into(), scenario("additive_line").action()),
        ("two_weight".into(), scenario("two_weight").action()),
        ("heisenberg".into(), scenario("heisenberg").action()),
    ];
    let mut picked = Vec::new();
    while picked.len() < 4 {
        let c = *[-3i64, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap();
        let e = rng.gen_range(1..=2u32);
        let d = rng.gen_range(0..=2u32);
        if !picked.contains(&(c, e, d)) {
            picked.push((c, e, d));
            cases.push((format!("two_level({c},{e},{d})"), fixtures::two_level_family(c, e, d)));
        }
    }
    let (mut props, mut betas) = (0, 0);
    for (name, act) in &cases {
        ensure(act.validate().is_empty(), || format!("{name} is not a valid action"))?;
        let c = centre(act, 6).map_err(|e| format!("{name}: {e}"))?;
        let (p, b) = lemma_suite(name, &c)?;
        props += p;
        betas += b;
    }
    Ok(format!("{} scenarios, {props} property checks, {betas} beta checks", cases.len()))
}

fn random_poly<R: Rng>(rng: &mut R, n: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut e = vec![0u32; n];
        let mut left = rng.gen_range(0..=max_degree);
        while left > 0 {
            e[rng.gen_range(0..n)] += 1;
            left -= 1;
        }
        p.add_term(Monomial::from_exps(&e), int(rng.gen_range(-5..=5)));
    }
    p
}

fn roundtrip(act: &DerivationAction, slices: &[Polynomial], polys: &[Polynomial]) -> Result<(), String> {
    let alg = act.algebra();
    let r = slices.len();
    let ders = (0..r).map(|i| act.derivation(i).clone()).collect();
    let proj = DixmierProjector::new(alg, ders, slices.to_vec()).map_err(|e| e.to_string())?;
    for g in polys {
        let pg = proj.project(g).map_err(|e| e.to_string())?;
        ensure(proj.project(&pg).map_err(|e| e.to_string())? == pg, || format!("pi(pi(g)) != pi(g) for {}", show(alg, g)))?;
        for i in 0..r {
            ensure(act.apply_basis(i, &pg).is_zero(), || format!("xi_{i}(pi(g)) != 0 for {}", show(alg, g)))?;
        }
        let back = proj.expansion(g).map_err(|e| e.to_string())?.into_iter().fold(Polynomial::zero(alg.nvars()), |acc, (n, c)| {
            let mono = slices.iter().zip(&n).fold(Polynomial::one(alg.nvars()), |m, (f, &e)| &m * &f.pow(e));
            acc + &c * &mono
        });
        ensure(alg.is_zero(&(back - g.clone())), || format!("reconstruction fails for {}", show(alg, g)))?;
    }
    Ok(())
}

/// Projection round trip on the translation fixture and conjugated translations.
fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let s = scenario("translation_line");
    let act = s.action();
    let polys: Vec<Polynomial> = (0..50).map(|_| random_poly(&mut rng, 2, 5, 4)).collect();
    roundtrip(&act, &[poly(act.algebra(), "y")], &polys)?;
    let mut instances = 0;
    for r in [1, 2, 3, 2, 3, 3] {
        let (act, slices) = fixtures::conjugated_translation(&mut rng, 2, r);
        let n = act.algebra().nvars();
        let polys: Vec<Polynomial> = (0..50).map(|_| random_poly(&mut rng, n, 5, 4)).collect();
        roundtrip(&act, &slices, &polys)?;
        let chain = staged_quotient(&act, 6).map_err(|e| e.to_string())?;
        ensure(verify_quotient(&chain).iter().all(StageCheck::passes), || format!("rank-{r} chain fails verification"))?;
        instances += 1;
    }
    Ok(format!("translation fixture + {instances} conjugated instances, 50 polynomials each"))
}

/// Free-algebra identities and coproduct coefficient lemmas.
fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let (mut weighted, mut commutator) = (0, 0);
    for n in 1..=3usize {
        for _ in 0..5 {
            let w: Vec<Rational> = (0..n).map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())).collect();
            for k in exponent_vectors(n, 4) {
                verify_weighted_bracket_identity(&w, &k, 4).map_err(|e| format!("weights {w:?}, k={k:?}: {e}"))?;
                weighted += 1;
            }
        }
        for k in exponent_vectors(n, 4) {
            verify_commutator_identity(&k, 4).map_err(|e| format!("k={k:?}: {e}"))?;
            commutator += 1;
        }
    }
    for (name, lie) in [("G_a", fixtures::ga_lie()), ("G_a^2", fixtures::ga_pair_lie()), ("Heisenberg", fixtures::heisenberg_lie())] {
        let fails = check_comult_lemmas(&comult_coefficients(&lie, 4));
        ensure(fails.is_empty(), || format!("{name}: {}", fails[0]))?;
    }
    Ok(format!("{weighted} weighted-bracket and {commutator} commutator instances; c-lemmas for 3 groups at degree 4"))
}

fn sorted_basis(i: &Ideal, names: &[String]) -> Vec<String> {
    let mut v: Vec<String> = groebner_basis(i).iter().map(|p| p.display(names).to_string()).collect();
    v.sort();
    v
}

/// Fitting chains do not depend on redundant generators.
fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let ring = GradedRing::from_pairs(&[("x", 0), ("y", 0)]);
    let alg = PresentedAlgebra::free(ring);
    let names = alg.names();
    for trial in 0..10 {
        let rank = rng.gen_range(1..=4usize);
        let cols = rng.gen_range(1..=4usize);
        let m: Vec<Vec<Polynomial>> = (0..rank).map(|_| (0..cols).map(|_| random_poly(&mut rng, 2, 3, 3)).collect()).collect();
        let mut bigger = m.clone();
        for _ in 0..5 {
            // a new column Σ c_j·col_j with multipliers of degree <= 1
            let coeffs: Vec<Polynomial> = (0..cols).map(|_| random_poly(&mut rng, 2, 1, 2)).collect();
            for (row, big) in m.iter().zip(bigger.iter_mut()) {
                big.push(row.iter().zip(&coeffs).fold(Polynomial::zero(2), |acc, (a, c)| acc + a * c));
            }
        }
        let a = fitting_chain_of_matrix(&alg, &m, cols);
        let b = fitting_chain_of_matrix(&alg, &bigger, cols + 5);
        for k in 0..=rank as i64 {
            let (ba, bb) = (sorted_basis(a.ideal(k).unwrap(), &names), sorted_basis(b.ideal(k).unwrap(), &names));
            ensure(ba == bb, || format!("trial {trial}, Fit_{k}: {ba:?} vs {bb:?}"))?;
        }
    }
    Ok("10 maps, reduced bases identical at every k".into())
}

fn random_point<R: Rng>(rng: &mut R, name: &str, n: usize) -> Vec<Rational> {
    let r = |rng: &mut R| Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into());
    let mut v: Vec<Rational> = (0..n).map(|_| r(rng)).collect();
    if name == "node" {
        // x*w = y^2
        if rng.gen_bool(0.2) {
            v[0] = int(0);
            v[1] = int(0);
        } else {
            while v[0] == int(0) {
                v[0] = r(rng);
            }
            v[2] = &v[1] * &v[1] / &v[0];
        }
    } else if rng.gen_bool(0.3) {
        v[0] = int(0);
    }
    v
}

/// Pointwise stabiliser dimensions against the Fitting-vanishing criterion.
fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let names = ["additive_line", "translation_line", "two_weight", "heisenberg", "heisenberg_translation", "node"];
    let mut checked = 0;
    for name in names {
        let act = scenario(name).action();
        let n = act.algebra().nvars();
        let levels: Vec<_> = (0..act.lie().nlevels())
            .map(|i| {
                let m = relative_map(&act, i);
                let chain = fitting_chain(&act, &m);
                (m, chain)
            })
            .collect();
        for _ in 0..20 {
            let pt = PointEval(random_point(&mut rng, name, n));
            for (i, (m, chain)) in levels.iter().enumerate() {
                let rs = relative_stabiliser_dim(&act, m, chain, &pt).map_err(|e| format!("{name}: {e}"))?;
                ensure(rs.consistent(), || format!("{name}, level {i}, point {:?}: {:?}", pt.0, rs))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (point, level) pairs over {} fixtures", names.len()))
}

/// Negative controls.
fn criterion_8() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_nrgit"))
        .args(["quotient", "--scenario", &fixture_path("additive_line")])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(1), || format!("quotient exit status {:?}", out.status.code()))?;
    ensure(String::from_utf8_lossy(&out.stdout).contains("nrgit blowup"), || "refusal does not point to blowup".into())?;

    let act = fixtures::two_step_translation();
    let chain = staged_quotient(&act, 6).map_err(|e| e.to_string())?;
    ensure(verify_quotient(&chain).iter().all(StageCheck::passes), || "uncorrupted chain fails".into())?;
    let mut corruptions = 0;
    {
        let mut bad = chain.clone();
        let st = &mut bad.stages[0];
        // x + z is not killed by xi1
        st.presentation.representatives[0] = &st.presentation.representatives[0] + &Polynomial::var(st.input.algebra().nvars(), 2);
        ensure(!verify_quotient(&bad)[0].passes(), || "non-invariant representative not detected".into())?;
        corruptions += 1;
    }
    {
        let mut bad = chain.clone();
        let st = &mut bad.stages[0];
        let m = st.presentation.reconstruction[0].nvars();
        st.presentation.reconstruction[0] = &st.presentation.reconstruction[0] + &Polynomial::one(m);
        ensure(!verify_quotient(&bad)[0].passes(), || "wrong reconstruction not detected".into())?;
        corruptions += 1;
    }
    {
        let mut bad = chain.clone();
        let st = &mut bad.stages[0];
        let nin = st.input.algebra().nvars();
        st.slices.functions[0] = st.slices.functions[0].scale(&int(2)) + Polynomial::var(nin, 0);
        ensure(!verify_quotient(&bad)[0].passes(), || "scaled slice not detected".into())?;
        corruptions += 1;
    }

    let s = scenario("two_weight");
    let act = s.action();
    let alg = act.algebra();
    let c = centre(&act, s.options.degree_bound).map_err(|e| e.to_string())?;
    ensure(same_ideal(alg, &c.centre_ideal, &["x^2", "y", "z"]), || "centre is not <x^2, y, z>".into())?;
    match j_membership(&c.action, &c.centre_ideal, &poly(alg, "y")) {
        Ok(_) => return Err("y reported as a member of J".into()),
        Err(w) => {
            ensure(w.monomial == PbwMonomial(vec![0, 1]), || format!("witness monomial {:?}", w.monomial))?;
            ensure(w.image == poly(alg, "x"), || format!("witness image {}", show(alg, &w.image)))?;
            ensure(!c.centre_ideal.contains(&w.image), || "witness image lies in I".into())?;
        }
    }
    Ok(format!("quotient refused with exit 1, {corruptions} corrupted chains rejected, y not in J via xi2.y = x"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("one-weight blow-up fixture", criterion_1, LIMIT_1),
        ("two-weight blow-up fixture", criterion_2, LIMIT_2),
        ("b-element existence lemma suite", criterion_3, LIMIT_3),
        ("projection round trip", criterion_4, LIMIT_4),
        ("free-algebra identities and coefficient lemmas", criterion_5, LIMIT_5),
        ("Fitting ideals ignore redundant generators", criterion_6, LIMIT_6),
        ("pointwise stabilisers match Fitting ideals", criterion_7, LIMIT_7),
        ("negative controls", criterion_8, LIMIT_8),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took <= *limit => Ok(detail),
            Ok(_) => Err(format!("took {took:.2?}, over the {limit:?} limit")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{took:.2?} / {limit:?}] {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{took:.2?} / {limit:?}] {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
