//! The four subcommands. Each returns a [`Report`]; input errors are handled
//! before a command runs.

use nrgit_core::blowup::{
    beta_check_all, build_chart, centre, chart_consistent, check_wuu, construct_b, j_search, verify_chart_cdrs, BlowupChart,
    CentreData, CentreError,
};
use nrgit_core::infinitesimal::{
    check_cdrs, check_ss_eq_s, fitting_chain, infinitesimal_matrix, relative_map, verify_snake_exactness, CdrsReport, LevelReport,
};
use nrgit_core::lie::{
    check_comult_lemmas, comult_coefficients, exponent_vectors, verify_commutator_identity, verify_weighted_bracket_identity,
    DerivationAction,
};
use nrgit_core::quotient::{staged_quotient, verify_quotient, QuotientChain};
use nrgit_core::ring::{groebner_basis, int, PresentedAlgebra};
use nrgit_core::{fixtures, Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{Report, Status};
use crate::scenario::{Options, Scenario};

fn show(names: &[String], p: &Polynomial) -> Value {
    Value::String(p.display(names).to_string())
}

fn show_all(names: &[String], ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| show(names, p)).collect())
}

fn ring_json(alg: &PresentedAlgebra) -> Value {
    let names = alg.names();
    json!({
        "variables": alg.ring().vars().iter().map(|v| format!("{} : {}", v.name, v.weight)).collect::<Vec<_>>(),
        "relations": show_all(&names, alg.relations().generators()),
    })
}

fn table_json(action: &DerivationAction) -> Value {
    let names = action.algebra().names();
    let lie = action.lie().names();
    let mut out = Vec::new();
    for (a, row) in action.table().iter().enumerate() {
        for (g, p) in row.iter().enumerate() {
            if !p.is_zero() {
                out.push(Value::String(format!("{}.{} = {}", lie[a], names[g], p.display(&names))));
            }
        }
    }
    Value::Array(out)
}

fn level_json(names: &[String], l: &LevelReport) -> Value {
    json!({
        "level": l.level,
        "rank": l.rank,
        "k": l.k,
        "fit_below_k_zero": l.fit_below_zero,
        "fit_k_unit": l.fit_unit,
        "fit_k": show_all(names, &l.fit_k),
    })
}

fn cdrs_json(names: &[String], r: &CdrsReport) -> Value {
    json!({
        "holds": r.holds(),
        "empty_chart": r.empty_chart,
        "k_vector": r.k_vector(),
        "levels": r.levels.iter().map(|l| level_json(names, l)).collect::<Vec<_>>(),
    })
}

fn rng_for(options: &Options) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(options.seed)
}

fn level_label(action: &DerivationAction, level: usize) -> String {
    let lie = action.lie();
    format!("level {level} (weight {})", lie.level_weights()[level])
}

/// Validation, per-level matrices and Fitting chains, then ss=s, CDRS and WUU.
pub fn analyze(s: &Scenario) -> Report {
    let action = s.action();
    let alg = action.algebra();
    let names = alg.names();
    let lie = action.lie();
    let mut levels = Vec::new();
    for i in 0..lie.nlevels() {
        let m = infinitesimal_matrix(&action, i);
        let rel = relative_map(&action, i);
        let chain = fitting_chain(&action, &rel);
        let fitting: Vec<Value> = (0..=chain.target_rank())
            .map(|k| {
                let basis = chain.ideal(k as i64).map(groebner_basis).unwrap_or_default();
                json!({
                    "k": k,
                    "zero": chain.is_zero(k as i64),
                    "unit": chain.is_unit(k as i64),
                    "basis": show_all(&names, &basis),
                })
            })
            .collect();
        let snake = verify_snake_exactness(&action, i);
        levels.push(json!({
            "level": i,
            "weight": lie.level_weights()[i],
            "basis": lie.names()[lie.level_range(i)].to_vec(),
            "matrix": m.entries.iter().map(|r| show_all(&names, r)).collect::<Vec<_>>(),
            "relative_map": {
                "domain_generators": rel.ncols(),
                "matrix": rel.matrix.iter().map(|r| show_all(&names, r)).collect::<Vec<_>>(),
            },
            "fitting": fitting,
            "sequence_exact": snake.exact(),
        }));
    }
    let ss = check_ss_eq_s(&action);
    let cdrs = check_cdrs(&action);
    let samples = if s.options.reduced { s.options.sample_count } else { 0 };
    let wuu = check_wuu(&action, samples, &mut rng_for(&s.options));
    let body = json!({
        "ring": ring_json(alg),
        "lie": {
            "dimension": lie.dim(),
            "levels": lie.levels().iter().map(|(w, b)| json!({"weight": w, "basis": b})).collect::<Vec<_>>(),
        },
        "action": table_json(&action),
        "violations": action.validate().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "levels": levels,
        "ss_eq_s": {
            "holds": ss.holds,
            "fit0": show_all(&names, &ss.fit0),
            "certificate": ss.certificate.as_ref().map(|c| show_all(&names, c)),
        },
        "cdrs": cdrs_json(&names, &cdrs),
        "wuu": {
            "holds": wuu.holds,
            "k_vector": wuu.k_vector,
            "product_ideal": show_all(&names, &wuu.product_ideal),
            "surviving_generator": wuu.surviving_generator.as_ref().map(|g| show(&names, g)),
            "witness_point": wuu.witness.as_ref().map(|p| p.0.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            "points_sampled": samples,
        },
    });
    Report::success("analyze", body)
}

fn quotient_json(chain: &QuotientChain, input: &PresentedAlgebra) -> Value {
    let mut stages = Vec::new();
    for (idx, st) in chain.stages.iter().enumerate() {
        let input_names = st.input.algebra().names();
        let pres = &st.presentation;
        let out_names = pres.algebra.names();
        let slice_names: Vec<String> = (1..=st.slices.functions.len()).map(|j| format!("s{idx}_{j}")).collect();
        let mut recon_names = out_names.clone();
        recon_names.extend(slice_names.iter().cloned());
        let lie = st.input.lie().names();
        stages.push(json!({
            "stage": idx,
            "input_ring": ring_json(st.input.algebra()),
            "slices": st.slices.functions.iter().zip(&slice_names).map(|(f, n)| format!("{n} = {}", f.display(&input_names))).collect::<Vec<_>>(),
            "slice_rows": st.slices.rows.iter().map(|&r| lie[r].clone()).collect::<Vec<_>>(),
            "invariants": out_names.iter().zip(&pres.representatives).map(|(n, r)| format!("{n} = {}", r.display(&input_names))).collect::<Vec<_>>(),
            "output_ring": ring_json(&pres.algebra),
            "reconstruction": input_names.iter().zip(&pres.reconstruction).map(|(n, p)| format!("{n} = {}", p.display(&recon_names))).collect::<Vec<_>>(),
            "remaining_action": table_json(&st.output),
            "condition_inherited": st.cdrs_after.holds(),
        }));
    }
    let checks: Vec<Value> = verify_quotient(chain)
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "stage": i,
                "invariants_killed": c.invariants_killed,
                "slice_determinant_unit": c.slice_det_unit,
                "reconstruction_identities": c.reconstruction_identities,
                "presentation_complete": c.presentation_complete,
                "failures": c.failures,
            })
        })
        .collect();
    let (final_ring, reps) = match (chain.final_algebra(), chain.stages.first()) {
        (Some(alg), Some(first)) => {
            let names = alg.names();
            let base = first.input.algebra().names();
            let reps: Vec<String> =
                names.iter().zip(chain.final_representatives()).map(|(n, r)| format!("{n} = {}", r.display(&base))).collect();
            (ring_json(alg), reps)
        }
        // nothing to quotient by: the ring is its own invariant ring
        _ => (ring_json(input), input.names().iter().map(|n| format!("{n} = {n}")).collect()),
    };
    json!({
        "stages": stages,
        "final_ring": final_ring,
        "final_representatives": reps,
        "fibre_dimension": chain.fibre_dimension(),
        "verification": checks,
    })
}

/// Staged quotient; refuses unless the Fitting condition holds at every level.
pub fn quotient(s: &Scenario) -> Report {
    let action = s.action();
    let names = action.algebra().names();
    let cdrs = check_cdrs(&action);
    if !cdrs.holds() {
        let level = cdrs.first_failure().map(|l| l.level).unwrap_or(0);
        let msg = format!(
            "the stabiliser condition fails at {}; run `nrgit blowup` on this scenario first",
            level_label(&action, level)
        );
        return Report { command: "quotient", status: Status::Refused(msg), body: json!({ "cdrs": cdrs_json(&names, &cdrs) }) };
    }
    match staged_quotient(&action, s.options.degree_bound) {
        Ok(chain) => {
            let mut body = json!({ "cdrs": cdrs_json(&names, &cdrs) });
            body["quotient"] = quotient_json(&chain, action.algebra());
            let verified = verify_quotient(&chain).iter().all(|c| c.passes());
            body["verified"] = Value::Bool(verified);
            let status = if verified { Status::Success } else { Status::Refused("the quotient chain failed verification".into()) };
            Report { command: "quotient", status, body }
        }
        Err(e) => {
            let msg = e.to_string();
            let status = if e.is_bound_exhaustion() {
                Status::BoundExhausted(format!("{msg}; raise --degree-bound"))
            } else {
                Status::Refused(msg)
            };
            Report { command: "quotient", status, body: json!({ "cdrs": cdrs_json(&names, &cdrs) }) }
        }
    }
}

fn centre_json(c: &CentreData) -> Value {
    let names = c.action.algebra().names();
    let lie = c.action.lie().names();
    json!({
        "k_vector": c.k_vector,
        "basis_order": lie,
        "fitting": c.fitting.iter().map(|i| show_all(&names, &groebner_basis(i))).collect::<Vec<_>>(),
        "product_ideal": show_all(&names, &groebner_basis(&c.product_ideal)),
        "centre_ideal": show_all(&names, &groebner_basis(&c.centre_ideal)),
        "witnesses": c.witnesses.iter().map(|w| show_all(&names, w)).collect::<Vec<_>>(),
        "minors": show_all(&names, &c.minors),
        "a": show(&names, &c.a),
    })
}

fn chart_json(c: &CentreData, chart: &BlowupChart) -> Value {
    let base = c.action.algebra().names();
    let names = chart.action.algebra().names();
    let report = verify_chart_cdrs(c, chart);
    let lie = chart.action.lie();
    json!({
        "a": show(&base, &chart.a),
        "fractions": chart.fraction_names.iter().zip(&chart.generators[1..])
            .map(|(n, g)| format!("{n} = ({}) / a", g.display(&base))).collect::<Vec<_>>(),
        "ring": ring_json(chart.action.algebra()),
        "action": table_json(&chart.action),
        "consistent": chart_consistent(c, chart),
        "cdrs": {
            "passes": report.passes(),
            "levels": report.levels.iter().map(|l| level_json(&names, l)).collect::<Vec<_>>(),
            "certificates": report.certificates.iter().enumerate().map(|(i, m)| json!({
                "level": i,
                "expected_diagonal": lie.level_weights()[i],
                "matrix": m.iter().map(|r| show_all(&names, r)).collect::<Vec<_>>(),
                "ok": report.certificate_ok[i],
            })).collect::<Vec<_>>(),
        },
    })
}

/// Centre, `b` elements with their checks, the chart `a ≠ 0`, and the staged
/// quotient of the chart when it passes.
pub fn blowup(s: &Scenario) -> Report {
    let action = s.action();
    let names = action.algebra().names();
    let refuse = |msg: String, body: Value| Report { command: "blowup", status: Status::Refused(msg), body };
    let c = match centre(&action, s.options.degree_bound) {
        Ok(c) => c,
        Err(CentreError::NoBlowupNeeded) => {
            return refuse(
                "no blow-up needed: the stabiliser condition already holds; run `nrgit quotient` instead".into(),
                json!({ "cdrs": cdrs_json(&names, &check_cdrs(&action)) }),
            )
        }
        Err(e @ CentreError::NoMinor { .. }) => {
            return Report {
                command: "blowup",
                status: Status::BoundExhausted(format!("{e}; raise --degree-bound")),
                body: Value::Null,
            }
        }
        Err(e) => return refuse(e.to_string(), json!({ "cdrs": cdrs_json(&names, &check_cdrs(&action)) })),
    };
    let mut body = json!({ "centre": centre_json(&c) });
    let bs = match construct_b(&c) {
        Ok(b) => b,
        Err(e) => return refuse(format!("b construction failed: {e}"), body),
    };
    let base = c.action.algebra().names();
    let lie = c.action.lie().names();
    let (beta_count, beta_fail) = beta_check_all(&c, &bs);
    body["b"] = json!({
        "elements": bs.b.iter().enumerate().map(|(i, l)| json!({
            "level": i,
            "b": show_all(&base, l),
            "scaled": show_all(&base, &bs.scaled[i]),
            "e_values": show_all(&base, &bs.e_values[i]),
        })).collect::<Vec<_>>(),
        "property_checks": bs.checked,
        "beta_checks": beta_count,
        "beta_failures": beta_fail.iter().map(|(i, mu, p)| format!("level {i}, row {}, monomial {:?}", lie[c.row(*i, *mu)], p.0)).collect::<Vec<_>>(),
    });
    if !beta_fail.is_empty() {
        return refuse("the β recursion does not match ξ^p.b".into(), body);
    }
    let known: Vec<Polynomial> = std::iter::once(c.a.clone()).chain(bs.scaled.iter().flatten().cloned()).collect();
    let extra = if s.options.j_degree > 0 { j_search(&c, &known, s.options.j_degree) } else { Vec::new() };
    let chart = match build_chart(&c, &bs, &extra) {
        Ok(ch) => ch,
        Err(e) => return refuse(format!("chart construction failed: {e}"), body),
    };
    body["chart"] = chart_json(&c, &chart);
    let passes = verify_chart_cdrs(&c, &chart).passes() && chart_consistent(&c, &chart);
    if !passes {
        return refuse("the chart does not satisfy the stabiliser condition".into(), body);
    }
    match staged_quotient(&chart.action, s.options.degree_bound) {
        Ok(q) => {
            body["chart_quotient"] = quotient_json(&q, chart.action.algebra());
            Report::success("blowup", body)
        }
        Err(e) if e.is_bound_exhaustion() => {
            Report { command: "blowup", status: Status::BoundExhausted(format!("chart quotient: {e}; raise --degree-bound")), body }
        }
        Err(e) => refuse(format!("chart quotient: {e}"), body),
    }
}

/// The two free-algebra identities for every `k` with `|k| ≤ pbw_bound` on
/// 1–3 letters (integer weights `1..=n` plus `sample_count.min(5)` random
/// rational tuples), and the coproduct-coefficient lemmas for `𝔾_a`, `𝔾_a²` and
/// the Heisenberg group up to degree `pbw_bound`.
pub fn identities(options: &Options) -> Report {
    let bound = options.pbw_bound;
    let mut rng = rng_for(options);
    let mut weighted_checked = 0usize;
    let mut commutator_checked = 0usize;
    let mut failures: Vec<String> = Vec::new();
    let mut tuples_json = Vec::new();
    for n in 1..=3usize {
        let mut tuples: Vec<Vec<Rational>> = vec![(1..=n as i64).map(int).collect()];
        for _ in 0..options.sample_count.min(5) {
            tuples.push((0..n).map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())).collect());
        }
        for w in &tuples {
            tuples_json.push(Value::Array(w.iter().map(|c| Value::String(c.to_string())).collect()));
            for k in exponent_vectors(n, bound) {
                weighted_checked += 1;
                if let Err(e) = verify_weighted_bracket_identity(w, &k, bound) {
                    failures.push(format!("weighted bracket identity at k={k:?}, weights {w:?}: {e}"));
                }
            }
        }
        for k in exponent_vectors(n, bound) {
            commutator_checked += 1;
            if let Err(e) = verify_commutator_identity(&k, bound) {
                failures.push(format!("commutator identity at k={k:?}: {e}"));
            }
        }
    }
    let groups = [("G_a", fixtures::ga_lie()), ("G_a^2", fixtures::ga_pair_lie()), ("Heisenberg", fixtures::heisenberg_lie())];
    let mut coefficient_json = Vec::new();
    for (name, lie) in groups {
        let t = comult_coefficients(&lie, bound);
        let fails = check_comult_lemmas(&t);
        let law_names: Vec<String> =
            lie.names().iter().map(|n| format!("{n}_u")).chain(lie.names().iter().map(|n| format!("{n}_v"))).collect();
        coefficient_json.push(json!({
            "group": name,
            "degree": bound,
            "group_law": show_all(&law_names, &t.group_law),
            "entries": t.entries.len(),
            "failures": fails,
        }));
        failures.extend(fails.into_iter().map(|f| format!("{name}: {f}")));
    }
    let body = json!({
        "bound": bound,
        "weighted_bracket_identity": { "instances": weighted_checked, "weight_tuples": tuples_json },
        "commutator_identity": { "instances": commutator_checked },
        "coefficient_lemmas": coefficient_json,
        "failures": failures,
    });
    let status = if failures.is_empty() { Status::Success } else { Status::Refused(format!("{} identity checks failed", failures.len())) };
    Report { command: "identities", status, body }
}
