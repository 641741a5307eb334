//! Proptest strategy for small random domains.

#![allow(dead_code)]

use eres_core::*;
use proptest::prelude::*;

pub const FLUENTS: [&str; 3] = ["F", "G", "H"];
pub const ACTIONS: [&str; 2] = ["A", "B"];

pub fn literal(f: usize, positive: bool) -> FluentLiteral {
    FluentLiteral { fluent: Fluent::new(FLUENTS[f]), positive }
}

/// Action, fluent, polarity and conditions of one c-proposition.
pub type CPropShape = (usize, usize, bool, Vec<(usize, bool)>);

#[derive(Debug, Clone)]
pub struct Shape {
    fluents: usize,
    actions: usize,
    cprops: Vec<CPropShape>,
    hprops: Vec<(usize, u32)>,
    tprops: Vec<(usize, bool, u32)>,
    rprops: Vec<(usize, bool, usize, bool)>,
}

pub fn shape(max_rprops: usize) -> impl Strategy<Value = Shape> {
    (1..=3usize, 1..=2usize).prop_flat_map(move |(nf, na)| {
        let cond = (0..nf, any::<bool>());
        let cprop = (0..na, 0..nf, any::<bool>(), proptest::collection::vec(cond, 0..=2));
        let hprop = (0..na, 0..=8u32);
        let tprop = (0..nf, any::<bool>(), 0..=8u32);
        let rprop = (0..nf, any::<bool>(), 0..nf, any::<bool>());
        (
            Just(nf),
            Just(na),
            proptest::collection::vec(cprop, 0..=4),
            proptest::collection::vec(hprop, 0..=4),
            proptest::collection::vec(tprop, 0..=2),
            proptest::collection::vec(rprop, 0..=max_rprops),
        )
            .prop_map(|(fluents, actions, cprops, hprops, tprops, rprops)| Shape {
                fluents,
                actions,
                cprops,
                hprops,
                tprops,
                rprops,
            })
    })
}

pub fn build(s: &Shape) -> DomainDescription {
    let mut d = DomainDescription::default();
    for f in &FLUENTS[..s.fluents] {
        d.declare_fluent(*f, 0);
    }
    for a in &ACTIONS[..s.actions] {
        d.declare_action(*a, 0);
    }
    for (a, f, pos, conds) in &s.cprops {
        let mut conditions: Vec<FluentLiteral> = Vec::new();
        for &(g, v) in conds {
            if conditions.iter().all(|c| c.fluent != Fluent::new(FLUENTS[g])) {
                conditions.push(literal(g, v));
            }
        }
        d.push(Proposition::Causal(CProp { action: Action::new(ACTIONS[*a]), effect: literal(*f, *pos), conditions }));
    }
    for &(a, t) in &s.hprops {
        d.push(Proposition::Happens(HProp { action: Action::new(ACTIONS[a]), time: TimePoint(t) }));
    }
    for &(f, v, t) in &s.tprops {
        d.push(Proposition::Holds(TProp { literal: literal(f, v), time: TimePoint(t) }));
    }
    for &(h, hv, c, cv) in &s.rprops {
        if h != c {
            d.push(Proposition::Ramification(RProp { head: literal(h, hv), conditions: vec![literal(c, cv)] }));
        }
    }
    d
}
