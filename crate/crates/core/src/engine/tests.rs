use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::argprog::{ArgumentRule, RuleKind};
use crate::fixtures::{self, lit, Builder};

fn h(l: &str, t: u32) -> HoldsLiteral {
    HoldsLiteral::new(lit(l), TimePoint(t))
}

fn scep(d: &DomainDescription, l: &str, t: u32) -> bool {
    sceptical(d, &[h(l, t)]).unwrap()
}

fn cred(d: &DomainDescription, l: &str, t: u32) -> bool {
    credulous(d, &[h(l, t)]).unwrap()
}

#[test]
fn vaccinations() {
    let d = fixtures::dv();
    assert!(scep(&d, "Protected", 6));
    for t in 0..=3 {
        assert!(!scep(&d, "Protected", t), "t={t}");
        assert!(!scep(&d, "~Protected", t), "t={t}");
        assert!(cred(&d, "Protected", t), "t={t}");
        assert!(cred(&d, "~Protected", t), "t={t}");
    }
    for t in 4..=6 {
        assert!(!scep(&d, "~Protected", t), "t={t}");
    }
}

#[test]
fn photographs() {
    let d = fixtures::dp();
    for t in 0..=5 {
        assert!(scep(&d, "Loaded", t), "t={t}");
    }
    let d = fixtures::dp_no3();
    for t in 0..=5 {
        assert!(!scep(&d, "Loaded", t), "t={t}");
        assert!(cred(&d, "Loaded", t), "t={t}");
    }
    let d = fixtures::dp5();
    for t in 0..=5 {
        for f in ["Loaded", "Digital"] {
            assert!(!scep(&d, f, t), "{f} t={t}");
            assert!(cred(&d, f, t), "{f} t={t}");
        }
    }
}

#[test]
fn photograph_explanations() {
    let ex: Vec<String> = explain(&fixtures::dp5(), &[h("Picture", 3)]).unwrap().iter().map(|e| e.to_string()).collect();
    assert_eq!(
        ex,
        vec!["[rule(gen,picture,3,2),rule(ass,loaded,2)]", "[rule(gen,picture,3,2),rule(ass,digital,2)]"]
    );
}

#[test]
fn cars() {
    let d = fixtures::dc();
    let cases = [
        ("Running", 0),
        ("~Running", 3),
        ("Running", 6),
        ("~Running", 10),
        ("Petrol", 0),
        ("Petrol", 3),
        ("Petrol", 6),
        ("~Petrol", 10),
    ];
    for (l, t) in cases {
        assert!(scep(&d, l, t), "{l}@{t}");
        let converse = lit(l).complement().to_string();
        assert!(!scep(&d, &converse, t), "{converse}@{t}");
    }
    assert!(consistent(&d).unwrap());
}

#[test]
fn jump_start_is_inconsistent() {
    let d = fixtures::dc_jumpstart();
    assert!(!consistent(&d).unwrap());
    assert!(!scep(&d, "Running", 0));
    assert!(!cred(&d, "Running", 0));
}

#[test]
fn jump_start_generation_has_no_admissible_extension() {
    let d = fixtures::dc_jumpstart();
    let session = Session::new(&d, &[TimePoint(12)], EngineConfig::default()).unwrap();
    let p = session.program();
    let rule = ArgumentRule {
        kind: RuleKind::Generation { source: TimePoint(11) },
        positive: true,
        fluent: lit("Running").fluent,
        time: TimePoint(12),
    };
    let s0 = p.rule_set([&rule]).unwrap();
    assert_eq!(admissible_extension(p, &s0, EngineConfig::default()).unwrap(), None);
}

#[test]
fn self_attacking_start_fails() {
    let d = fixtures::dv();
    let session = Session::new(&d, &[], EngineConfig::default()).unwrap();
    let p = session.program();
    let a = |positive| ArgumentRule {
        kind: RuleKind::Assumption,
        positive,
        fluent: lit("TypeO").fluent,
        time: TimePoint(2),
    };
    let s0 = p.rule_set([&a(true), &a(false)]).unwrap();
    assert_eq!(admissible_extension(p, &s0, EngineConfig::default()).unwrap(), None);
}

#[test]
fn typeo_generation_extends() {
    let d = fixtures::dv();
    let session = Session::new(&d, &[TimePoint(6)], EngineConfig::default()).unwrap();
    let p = session.program();
    let rules = [
        ArgumentRule {
            kind: RuleKind::Generation { source: TimePoint(2) },
            positive: true,
            fluent: lit("Protected").fluent,
            time: TimePoint(6),
        },
        ArgumentRule { kind: RuleKind::Assumption, positive: true, fluent: lit("TypeO").fluent, time: TimePoint(2) },
    ];
    let s0 = p.rule_set(&rules).unwrap();
    let found = admissible_extension(p, &s0, EngineConfig::default()).unwrap().expect("admissible");
    assert!(s0.is_subset(&found));
    assert!(!p.self_attacking(&found));
}

#[test]
fn infection() {
    let d = fixtures::di();
    for t in 5..=9 {
        assert!(scep(&d, "Danger", t), "danger t={t}");
    }
    for t in 4..=9 {
        assert!(scep(&d, "Allergic", t), "allergic t={t}");
    }
    assert!(!scep(&d, "Danger", 4));
}

#[test]
fn empty_domain_assumes_freely() {
    let d = Builder::new(&["F"], &[]).build();
    assert!(cred(&d, "F", 0));
    assert!(cred(&d, "~F", 0));
    assert!(!scep(&d, "F", 0));
}

#[test]
fn contradictory_observations_are_inconsistent() {
    let d = Builder::new(&["F"], &[]).holds("F", 1).holds("~F", 1).build();
    assert!(!consistent(&d).unwrap());
}

#[test]
fn unknown_fluent_is_reported() {
    let err = credulous(&fixtures::dv(), &[h("Nope", 1)]).unwrap_err();
    assert_eq!(err, Error::UnknownFluent("Nope".into()));
}

#[test]
fn node_cap_is_reported() {
    let config = EngineConfig { node_cap: 1, ..EngineConfig::default() };
    let session = Session::new(&fixtures::dc(), &[TimePoint(3)], config).unwrap();
    assert_eq!(session.sceptical(&[h("~Running", 3)]), Err(Error::Resource { cap: 1 }));
}

#[test]
fn verdicts_carry_explanations_only_in_explain_mode() {
    let d = fixtures::dp5();
    let q = Query { mode: QueryMode::Explain, literals: vec![h("Picture", 3)] };
    let v = answer(&d, &q).unwrap();
    assert_eq!(v.outcome, Outcome::Succeeds);
    assert_eq!(v.explanations.len(), 2);
    let q = Query { mode: QueryMode::Credulous, ..q };
    assert!(answer(&d, &q).unwrap().explanations.is_empty());
}
