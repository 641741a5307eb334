//! Prolog-style rendering of a ground domain: effect clauses, ramification
//! clauses, observations and occurrences, each group in input order.

use std::fmt::Write as _;

use eres_core::domain::clause_symbol;
use eres_core::{DomainDescription, Error, Fluent, FluentLiteral};

fn holds(fluent: &Fluent, time: &str, positive: bool) -> String {
    let atom = format!("holds({},{time})", clause_symbol(&fluent.name, &fluent.args));
    if positive {
        atom
    } else {
        format!("neg({atom})")
    }
}

fn body(lits: &[FluentLiteral]) -> Vec<String> {
    lits.iter().map(|l| holds(&l.fluent, "T", l.positive)).collect()
}

/// Clauses separated by blank lines, bodies on their own line indented by two
/// spaces. Refuses domains with variables.
pub fn dump_translation(d: &DomainDescription) -> Result<String, Error> {
    if let Some(p) = d.propositions().iter().find(|p| !p.is_ground()) {
        return Err(Error::NotGround(p.to_string()));
    }
    let mut clauses: Vec<String> = Vec::new();
    for c in d.cprops() {
        let head = if c.effect.positive { "initiation" } else { "termination" };
        let mut goals = vec![format!("happens({},T)", clause_symbol(&c.action.name, &c.action.args))];
        goals.extend(body(&c.conditions));
        goals.push("true".to_string());
        let f = &c.effect.fluent;
        clauses.push(format!("{head}({},T):-\n  {}.", clause_symbol(&f.name, &f.args), goals.join(", ")));
    }
    for r in d.rprops() {
        let mut goals = body(&r.conditions);
        if goals.is_empty() {
            goals.push("true".to_string());
        }
        let head = holds(&r.head.fluent, "T", r.head.positive);
        clauses.push(format!("ram({head}):-\n  {}.", goals.join(", ")));
    }
    for t in d.tprops() {
        clauses.push(format!("tprop({}).", holds(&t.literal.fluent, &t.time.to_string(), t.literal.positive)));
    }
    for h in d.hprops() {
        clauses.push(format!("happens({},{}).", clause_symbol(&h.action.name, &h.action.args), h.time));
    }
    let mut out = String::new();
    for (i, c) in clauses.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{c}");
    }
    Ok(out)
}
