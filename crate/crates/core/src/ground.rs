//! Grounding of proposition schemas and the salient time frontier.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::domain::{
    Action, CProp, DomainDescription, Fluent, FluentLiteral, Proposition, RProp, Term, TimePoint,
};
use crate::error::{Error, Result};

pub const DEFAULT_INSTANCE_CAP: usize = 100_000;

type Binding = BTreeMap<String, String>;

fn subst_args(args: &[Term], binding: &Binding) -> Vec<Term> {
    args.iter()
        .map(|a| match a {
            Term::Var(v) => binding.get(v).map_or_else(|| a.clone(), |c| Term::Const(c.clone())),
            Term::Const(_) => a.clone(),
        })
        .collect()
}

fn subst_fluent(f: &Fluent, binding: &Binding) -> Fluent {
    Fluent::with_args(f.name.clone(), subst_args(&f.args, binding))
}

fn subst_literal(l: &FluentLiteral, binding: &Binding) -> FluentLiteral {
    FluentLiteral { fluent: subst_fluent(&l.fluent, binding), positive: l.positive }
}

fn subst_literals(ls: &[FluentLiteral], binding: &Binding) -> Vec<FluentLiteral> {
    ls.iter().map(|l| subst_literal(l, binding)).collect()
}

fn collect_vars<'a>(out: &mut Vec<&'a str>, args: &'a [Term]) {
    for a in args {
        if let Term::Var(v) = a {
            if !out.contains(&v.as_str()) {
                out.push(v);
            }
        }
    }
}

fn prop_vars(prop: &Proposition) -> Vec<&str> {
    let mut vars = Vec::new();
    match prop {
        Proposition::Causal(c) => {
            collect_vars(&mut vars, &c.action.args);
            collect_vars(&mut vars, &c.effect.fluent.args);
            for l in &c.conditions {
                collect_vars(&mut vars, &l.fluent.args);
            }
        }
        Proposition::Ramification(r) => {
            collect_vars(&mut vars, &r.head.fluent.args);
            for l in &r.conditions {
                collect_vars(&mut vars, &l.fluent.args);
            }
        }
        Proposition::Happens(h) => collect_vars(&mut vars, &h.action.args),
        Proposition::Holds(t) => collect_vars(&mut vars, &t.literal.fluent.args),
    }
    vars
}

/// Every assignment of `constants` to `vars`, in odometer order.
fn bindings(vars: &[&str], constants: &[String]) -> Vec<Binding> {
    let mut out = Vec::new();
    if vars.is_empty() {
        out.push(Binding::new());
        return out;
    }
    if constants.is_empty() {
        return out;
    }
    let mut idx = alloc::vec![0usize; vars.len()];
    loop {
        out.push(
            vars.iter()
                .zip(&idx)
                .map(|(v, &i)| (v.to_string(), constants[i].clone()))
                .collect(),
        );
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < constants.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Replaces every c- and r-proposition schema by its instances over the
/// declared object constants. Ground domains come back unchanged.
///
/// Fails with [`Error::GroundingCap`] when the total number of propositions
/// after expansion would exceed `cap`, and with [`Error::NotGround`] when an
/// h- or t-proposition carries a variable.
pub fn ground_domain(d: &DomainDescription, cap: usize) -> Result<DomainDescription> {
    let constants = &d.vocabulary.constants;
    let mut count: usize = 0;
    for prop in d.propositions() {
        let vars = prop_vars(prop);
        let n = u32::try_from(vars.len())
            .ok()
            .and_then(|k| constants.len().checked_pow(k))
            .unwrap_or(usize::MAX);
        count = count.saturating_add(n);
    }
    if count > cap {
        return Err(Error::GroundingCap { count, cap });
    }

    let mut out = DomainDescription::new(d.vocabulary.clone());
    for prop in d.propositions() {
        let vars = prop_vars(prop);
        if vars.is_empty() {
            out.push(prop.clone());
            continue;
        }
        match prop {
            Proposition::Causal(c) => {
                for b in bindings(&vars, constants) {
                    out.push(Proposition::Causal(CProp {
                        action: Action::with_args(c.action.name.clone(), subst_args(&c.action.args, &b)),
                        effect: subst_literal(&c.effect, &b),
                        conditions: subst_literals(&c.conditions, &b),
                    }));
                }
            }
            Proposition::Ramification(r) => {
                for b in bindings(&vars, constants) {
                    out.push(Proposition::Ramification(RProp {
                        head: subst_literal(&r.head, &b),
                        conditions: subst_literals(&r.conditions, &b),
                    }));
                }
            }
            other => return Err(Error::NotGround(other.to_string())),
        }
    }
    Ok(out)
}

/// `{0}` together with every occurrence, observation and query time, ascending.
pub fn salient_times(
    d: &DomainDescription,
    query_times: impl IntoIterator<Item = TimePoint>,
) -> Vec<TimePoint> {
    let mut times = BTreeSet::new();
    times.insert(TimePoint::ZERO);
    times.extend(d.hprops().map(|h| h.time));
    times.extend(d.tprops().map(|t| t.time));
    times.extend(query_times);
    times.into_iter().collect()
}

/// All ground fluents of the vocabulary (declared signatures instantiated over
/// the object constants), followed by any other ground fluent the
/// propositions mention. Declaration order is kept.
pub fn ground_fluents(d: &DomainDescription) -> Vec<Fluent> {
    let mut out: Vec<Fluent> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut add = |f: Fluent, out: &mut Vec<Fluent>| {
        if f.is_ground() && seen.insert(f.clone()) {
            out.push(f);
        }
    };
    for sig in &d.vocabulary.fluents {
        let vars: Vec<String> = (0..sig.arity).map(|i| alloc::format!("X{i}")).collect();
        let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        for b in bindings(&var_refs, &d.vocabulary.constants) {
            let args = vars.iter().map(|v| Term::Const(b[v].clone())).collect();
            add(Fluent::with_args(sig.name.clone(), args), &mut out);
        }
    }
    for prop in d.propositions() {
        let lits: Vec<&FluentLiteral> = match prop {
            Proposition::Causal(c) => core::iter::once(&c.effect).chain(&c.conditions).collect(),
            Proposition::Ramification(r) => core::iter::once(&r.head).chain(&r.conditions).collect(),
            Proposition::Holds(t) => alloc::vec![&t.literal],
            Proposition::Happens(_) => Vec::new(),
        };
        for l in lits {
            add(l.fluent.clone(), &mut out);
        }
    }
    out
}
