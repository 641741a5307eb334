//! Seeded random domains shared by the integration tests.

#![allow(dead_code)]

use eres_core::{Action, CProp, DomainDescription, Fluent, FluentLiteral, HProp, Proposition, RProp, TProp, Term, TimePoint};
use rand::seq::IndexedRandom;
use rand::Rng;

const FLUENTS: [&str; 3] = ["F", "G", "H"];
const ACTIONS: [&str; 2] = ["A", "B"];

fn literal(rng: &mut impl Rng, fluents: usize) -> FluentLiteral {
    FluentLiteral { fluent: Fluent::new(FLUENTS[rng.random_range(0..fluents)]), positive: rng.random() }
}

/// A ground domain with at most 3 fluents, 2 actions, 4 c-props, 4 h-props
/// and 2 t-props at times up to 8, plus up to `max_rprops` single-condition
/// r-props.
pub fn ground_domain(rng: &mut impl Rng, max_rprops: usize) -> DomainDescription {
    let nf = rng.random_range(1..=3);
    let na = rng.random_range(1..=2);
    let mut d = DomainDescription::default();
    for f in &FLUENTS[..nf] {
        d.declare_fluent(*f, 0);
    }
    for a in &ACTIONS[..na] {
        d.declare_action(*a, 0);
    }
    for _ in 0..rng.random_range(0..=4) {
        let mut conditions: Vec<FluentLiteral> = Vec::new();
        for _ in 0..rng.random_range(0..=2) {
            let c = literal(rng, nf);
            if conditions.iter().all(|o| o.fluent != c.fluent) {
                conditions.push(c);
            }
        }
        let action = Action::new(*ACTIONS[..na].choose(rng).expect("nonempty"));
        d.push(Proposition::Causal(CProp { action, effect: literal(rng, nf), conditions }));
    }
    for _ in 0..rng.random_range(0..=4) {
        let action = Action::new(*ACTIONS[..na].choose(rng).expect("nonempty"));
        d.push(Proposition::Happens(HProp { action, time: TimePoint(rng.random_range(0..=8)) }));
    }
    for _ in 0..rng.random_range(0..=2) {
        d.push(Proposition::Holds(TProp { literal: literal(rng, nf), time: TimePoint(rng.random_range(0..=8)) }));
    }
    if nf > 1 {
        for _ in 0..rng.random_range(0..=max_rprops) {
            let head = literal(rng, nf);
            let mut cond = literal(rng, nf);
            while cond.fluent == head.fluent {
                cond = literal(rng, nf);
            }
            d.push(Proposition::Ramification(RProp { head, conditions: vec![cond] }));
        }
    }
    d
}

/// Like [`ground_domain`] with exactly `rprops` r-props (needs two fluents).
pub fn ramified_domain(rng: &mut impl Rng, rprops: usize) -> DomainDescription {
    loop {
        let d = ground_domain(rng, rprops);
        if d.rprops().count() > 0 {
            return d;
        }
    }
}

fn name<R: Rng + ?Sized>(rng: &mut R, pool: &[&str]) -> String {
    pool.choose(rng).expect("nonempty").to_string()
}

fn args<R: Rng + ?Sized>(rng: &mut R, arity: usize, constants: &[String]) -> Vec<Term> {
    (0..arity)
        .map(|_| {
            if rng.random_bool(0.3) {
                Term::Var(name(rng, &["X", "Y"]))
            } else {
                Term::Const(constants.choose(rng).expect("nonempty").clone())
            }
        })
        .collect()
}

/// A domain exercising the whole surface syntax: parameters, variables,
/// constants and every statement form. Not necessarily valid.
pub fn surface_domain(rng: &mut impl Rng) -> DomainDescription {
    let mut d = DomainDescription::default();
    let constants: Vec<String> = ["a", "b", "c1"][..rng.random_range(1..=3)].iter().map(|c| c.to_string()).collect();
    let fluents: Vec<(String, usize)> =
        ["On", "Lit", "At_x"].iter().map(|f| (f.to_string(), rng.random_range(0..=2))).collect();
    let actions: Vec<(String, usize)> =
        ["Push", "Go2"].iter().map(|a| (a.to_string(), rng.random_range(0..=1))).collect();
    for (f, n) in &fluents {
        d.declare_fluent(f.clone(), *n);
    }
    for (a, n) in &actions {
        d.declare_action(a.clone(), *n);
    }
    for c in &constants {
        d.declare_constant(c.clone());
    }
    let lit = |rng: &mut dyn rand::RngCore| {
        let (f, n) = fluents.choose(rng).expect("nonempty").clone();
        FluentLiteral { fluent: Fluent::with_args(f, args(rng, n, &constants)), positive: rng.random() }
    };
    for _ in 0..rng.random_range(0..=8) {
        let prop = match rng.random_range(0..4) {
            0 => {
                let (a, n) = actions.choose(rng).expect("nonempty").clone();
                let conditions = (0..rng.random_range(0..=2)).map(|_| lit(rng)).collect();
                Proposition::Causal(CProp {
                    action: Action::with_args(a, args(rng, n, &constants)),
                    effect: lit(rng),
                    conditions,
                })
            }
            1 => {
                let (a, n) = actions.choose(rng).expect("nonempty").clone();
                let args = (0..n).map(|_| Term::Const(constants.choose(rng).expect("nonempty").clone())).collect();
                Proposition::Happens(HProp { action: Action::with_args(a, args), time: TimePoint(rng.random_range(0..=20)) })
            }
            2 => Proposition::Holds(TProp { literal: lit(rng), time: TimePoint(rng.random_range(0..=20)) }),
            _ => {
                let head = lit(rng);
                let conditions = (0..rng.random_range(0..=3)).map(|_| lit(rng)).collect();
                Proposition::Ramification(RProp { head, conditions })
            }
        };
        d.push(prop);
    }
    d
}
