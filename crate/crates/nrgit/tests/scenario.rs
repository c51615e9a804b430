use nrgit::scenario::{parse_scenario, Options, Scenario, ScenarioError};
use nrgit_core::fixtures;
use proptest::prelude::*;
use rand::SeedableRng;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}.scn", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

const VALID: [&str; 7] =
    ["additive_line", "translation_line", "two_weight", "heisenberg", "heisenberg_translation", "zero_lie", "node"];

#[test]
fn shipped_fixtures_parse() {
    for name in VALID {
        let s = parse_scenario(&fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(s.action().validate().is_empty(), "{name}");
    }
}

#[test]
fn additive_line_file_matches_the_library_fixture() {
    let s = parse_scenario(&fixture("additive_line")).unwrap();
    let lib = fixtures::additive_line();
    assert_eq!(s.action().table(), lib.table());
    assert_eq!(s.action().algebra().weights(), lib.algebra().weights());
}

#[test]
fn wrong_weight_names_basis_variable_and_weights() {
    let err = parse_scenario(&fixture("bad_weight")).unwrap_err();
    let ScenarioError::Semantic { line, message } = &err else { panic!("{err:?}") };
    assert_eq!(*line, Some(10));
    assert!(message.contains("xi.y"), "{message}");
    assert!(message.contains("weight 0"), "{message}");
    assert!(message.contains("[-1]"), "{message}");
}

#[test]
fn empty_lie_block_is_valid() {
    let s = parse_scenario(&fixture("zero_lie")).unwrap();
    assert_eq!(s.lie().dim(), 0);
}

#[test]
fn round_trip_of_every_fixture() {
    for name in VALID {
        let s = parse_scenario(&fixture(name)).unwrap();
        let again = parse_scenario(&s.to_text()).unwrap();
        assert_eq!(s, again, "{name}");
    }
}

fn syntax_at(text: &str) -> (usize, usize) {
    match parse_scenario(text).unwrap_err() {
        ScenarioError::Syntax { line, column, .. } => (line, column),
        e => panic!("expected a syntax error, got {e}"),
    }
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let head = "[ring]\nx : 0\ny : -1\n[lie]\n1 : xi\n[action]\n";
    // `*` at offset 11 of the line `xi . y = x +* 2`
    assert_eq!(syntax_at(&format!("{head}xi . y = x +* 2\n")), (7, 13));
    assert_eq!(syntax_at(&format!("{head}  xi . y = x )\n")), (7, 14));
    assert_eq!(syntax_at("x : 0\n"), (1, 1));
    assert_eq!(syntax_at("[ring]\nx : zero\n").0, 2);
    assert_eq!(syntax_at("[ring]\nx : 0\n[options]\nspeed = 3\n").0, 4);
    assert_eq!(syntax_at("[ring]\nx : 0\n[ring]\norder = fancy\n").0, 4);
}

#[test]
fn semantic_errors() {
    let cases = [
        ("[ring]\nx : 1\n", "positive weight"),
        ("[ring]\nx : 0\nx : -1\n", "declared twice"),
        ("[ring]\nx : 0\n[lie]\n1 : xi\n[action]\nxi . q = x\n", "unknown variable"),
        ("[ring]\nx : 0\ny : -1\n[lie]\n1 : X, Y\n2 : Z\n", "decreasing"),
        ("[ring]\nx : 0\ny : -1\n[lie]\n2 : Z\n1 : X, Y\n[X, Y] = X\n", "weight"),
        ("[ring]\nx : 0\ny : -1\n[relations]\nx*y - 1\n[lie]\n1 : xi\n[action]\nxi . y = x\n", "homogeneous"),
    ];
    for (text, needle) in cases {
        match parse_scenario(text) {
            Err(ScenarioError::Semantic { message, .. }) => assert!(message.contains(needle), "{text:?}: {message}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn relation_not_preserved_points_at_the_relation() {
    let text = "[ring]\nx : 0\ny : -1\nw : -2\n[relations]\nx*w - y^2\n[lie]\n1 : xi\n[action]\nxi . y = x\n";
    match parse_scenario(text) {
        Err(ScenarioError::Semantic { line, message }) => {
            assert_eq!(line, Some(6));
            assert!(message.contains("does not preserve"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn options_are_read_and_defaulted() {
    let s = parse_scenario("[ring]\nx : 0\n[options]\nseed = 9\nreduced = false\n").unwrap();
    assert_eq!(s.options, Options { seed: 9, reduced: false, ..Options::default() });
    assert_eq!(Options::default().degree_bound, 8);
}

#[test]
fn library_fixtures_round_trip_through_text() {
    for act in [fixtures::heisenberg_action(), fixtures::two_weight(), fixtures::heisenberg_translation()] {
        let s = Scenario::from_action(&act, Options::default());
        let back = parse_scenario(&s.to_text()).unwrap();
        assert_eq!(s, back);
        assert_eq!(back.action().table(), act.table());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_conjugated_actions_round_trip(seed in any::<u64>(), nx in 1usize..3, r in 1usize..4) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (act, _) = fixtures::conjugated_translation(&mut rng, nx, r);
        let s = Scenario::from_action(&act, Options { seed, ..Options::default() });
        let text = s.to_text();
        let back = parse_scenario(&text).unwrap();
        prop_assert_eq!(&s, &back);
        prop_assert_eq!(back.to_text(), text);
    }
}
