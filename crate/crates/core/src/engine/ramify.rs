//! Compilation of r-propositions into derived action laws.
//!
//! For `L whenever C` and a law whose effect `e` is in `C`, the same action
//! also causes `L`, provided the rest of `C` holds after the change. Derived
//! laws feed back into the fixpoint, so chains of r-propositions become
//! chains of derived laws.

use alloc::string::String;
use alloc::vec::Vec;

use crate::argprog::CausalLaw;
use crate::domain::{DomainDescription, FluentLiteral, RProp};
use crate::error::{Error, Result};

pub const DEFAULT_LAW_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ramified {
    /// The domain's own laws followed by the derived ones.
    pub laws: Vec<CausalLaw>,
    /// How many of `laws` come from c-propositions.
    pub direct: usize,
    /// R-propositions, each checked as a static constraint at every time.
    pub constraints: Vec<RProp>,
}

impl Ramified {
    pub fn derived(&self) -> &[CausalLaw] {
        &self.laws[self.direct..]
    }
}

fn contradictory(lits: &[FluentLiteral]) -> bool {
    lits.iter().any(|l| l.positive && lits.contains(&l.complement()))
}

fn subsumes(a: &CausalLaw, b: &CausalLaw) -> bool {
    a.action == b.action
        && a.effect == b.effect
        && a.pre.iter().all(|l| b.pre.contains(l))
        && a.post.iter().all(|l| b.post.contains(l))
}

pub fn compile_ramifications(d: &DomainDescription) -> Result<Ramified> {
    compile_with_cap(d, DEFAULT_LAW_CAP)
}

pub fn compile_with_cap(d: &DomainDescription, cap: usize) -> Result<Ramified> {
    let rprops: Vec<&RProp> = d.rprops().collect();
    let mut laws: Vec<CausalLaw> = d.cprops().map(CausalLaw::from).collect();
    // r-propositions each law was derived through
    let mut via: Vec<Vec<usize>> = alloc::vec![Vec::new(); laws.len()];
    let direct = laws.len();

    let mut next = 0;
    while next < laws.len() {
        for (ri, r) in rprops.iter().enumerate() {
            let law = &laws[next];
            if !r.conditions.contains(&law.effect) {
                continue;
            }
            let mut post = law.post.clone();
            for c in r.conditions.iter().filter(|c| **c != law.effect) {
                if !post.contains(c) {
                    post.push(c.clone());
                }
            }
            let candidate = CausalLaw {
                action: law.action.clone(),
                effect: r.head.clone(),
                pre: law.pre.clone(),
                post,
            };
            if contradictory(&candidate.post) || laws.iter().any(|l| subsumes(l, &candidate)) {
                continue;
            }
            if laws.len() - direct >= cap {
                let chain: Vec<String> =
                    via[next].iter().chain([&ri]).map(|&i| alloc::format!("{}", rprops[i])).collect();
                return Err(Error::RamificationCycle { cap, chain: chain.join(" -> ") });
            }
            let mut path = via[next].clone();
            path.push(ri);
            laws.push(candidate);
            via.push(path);
        }
        next += 1;
    }
    Ok(Ramified { laws, direct, constraints: rprops.into_iter().cloned().collect() })
}
