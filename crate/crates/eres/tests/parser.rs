mod common;

use eres::{parse_domain, parse_query, print_domain, resolve_query};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn printed_domains_parse_back(seed in any::<u64>(), surface in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = if surface { common::surface_domain(&mut rng) } else { common::ground_domain(&mut rng, 2) };
        let text = print_domain(&d);
        let again = parse_domain(&text).map_err(|e| TestCaseError::fail(format!("{e} in\n{text}")))?;
        prop_assert_eq!(&again, &d);
        prop_assert_eq!(print_domain(&again), text);
    }

    #[test]
    fn errors_point_inside_the_input(text in "[A-Za-z0-9{}(),.~% \n-]{0,60}") {
        if let Err(e) = parse_domain(&text) {
            prop_assert!(e.span.start <= e.span.end && e.span.end <= text.len());
            prop_assert!(e.span.line >= 1 && e.span.column >= 1);
            prop_assert!(e.span.line <= text.lines().count().max(1) + 1);
        }
        let _ = parse_query(&text);
    }

    #[test]
    fn truncated_domains_fail_cleanly(seed in any::<u64>(), cut in 0usize..400) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = print_domain(&common::surface_domain(&mut rng));
        let cut = cut.min(text.len());
        if let Err(e) = parse_domain(&text[..cut]) {
            prop_assert!(e.span.end <= cut);
        }
    }
}

#[test]
fn queries_resolve_against_declared_names() {
    let d = parse_domain("fluent Loaded, At(X).\naction Go(X).\nconst home.\nGo(X) initiates At(X).\n").unwrap();
    let q = resolve_query(parse_query("sceptical([holds(at(home),2), neg(holds(loaded,0))])").unwrap(), &d.vocabulary);
    let names: Vec<String> = q.literals.iter().map(|l| l.fluent.to_string()).collect();
    assert_eq!(names, ["At(home)", "Loaded"]);
}

#[test]
fn bad_query_shapes() {
    for q in [
        "sceptical([])",
        "credulous([holds(f,T)])",
        "sceptical([holds(f,1)],X)",
        "credulous([holds(f,1)],x)",
        "maybe([holds(f,1)])",
        "credulous([holds(f,1)]) extra",
    ] {
        assert!(parse_query(q).is_err(), "{q}");
    }
}
