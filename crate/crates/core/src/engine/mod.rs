//! Sceptical and credulous query answering.
//!
//! Every query is conjoined with the domain's t-propositions. A conjunction
//! holds credulously when some admissible set of base rules derives it;
//! a literal holds sceptically when it holds credulously and its complement
//! does not.

mod ramify;
mod search;

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cell::{OnceCell, RefCell};
use core::fmt;

pub use ramify::{compile_ramifications, compile_with_cap, Ramified, DEFAULT_LAW_CAP};
pub use search::DEFAULT_NODE_CAP;

use crate::argprog::{minimize, ArgumentRule, HoldsLiteral, LitId, Mode, Program, RuleSet};
use crate::domain::{DomainDescription, TimePoint};
use crate::error::{Error, Result};
use crate::ground::{ground_domain, salient_times, DEFAULT_INSTANCE_CAP};
use crate::validate::validate_domain;
use search::{base_rules_for, decision_cells, Memo, Search};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Limit on proposition instances produced by grounding.
    pub instance_cap: usize,
    /// Limit on search nodes per admissibility check.
    pub node_cap: usize,
    /// Limit on laws derived from r-propositions.
    pub law_cap: usize,
    /// Require every extension to decide every fluent at every salient time,
    /// even where partial extensions would do.
    pub always_total: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            instance_cap: DEFAULT_INSTANCE_CAP,
            node_cap: DEFAULT_NODE_CAP,
            law_cap: DEFAULT_LAW_CAP,
            always_total: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryMode {
    Sceptical,
    Credulous,
    /// Credulous, reporting the supporting rules.
    Explain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Query {
    pub mode: QueryMode,
    pub literals: Vec<HoldsLiteral>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Succeeds,
    Fails,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Succeeds
        } else {
            Outcome::Fails
        }
    }

    pub fn succeeded(self) -> bool {
        self == Outcome::Succeeds
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Succeeds => "succeeds",
            Outcome::Fails => "fails",
        })
    }
}

/// Base rules that, together with the background theory, derive a goal and
/// extend to an admissible set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Explanation {
    pub rules: Vec<ArgumentRule>,
}

/// `[rule(gen,picture,3,2),rule(ass,loaded,2)]`
impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryVerdict {
    pub mode: QueryMode,
    pub goal: Vec<HoldsLiteral>,
    pub outcome: Outcome,
    pub explanations: Vec<Explanation>,
}

/// A validated, grounded domain translated for a fixed set of query times.
#[derive(Debug, Clone)]
pub struct Session {
    program: Program,
    observations: Vec<LitId>,
    config: EngineConfig,
    decide: Vec<usize>,
    consistent: OnceCell<bool>,
    memo: RefCell<Memo>,
}

impl Session {
    /// Validates and grounds `d`, compiles its r-propositions and translates
    /// it over the salient times of `d` and `query_times`, plus one point
    /// past the latest of them.
    pub fn new(d: &DomainDescription, query_times: &[TimePoint], config: EngineConfig) -> Result<Self> {
        let report = validate_domain(d);
        if !report.is_ok() {
            return Err(Error::Invalid(report));
        }
        let g = ground_domain(d, config.instance_cap)?;
        let latest = query_times.iter().copied().chain(g.max_time()).max().unwrap_or(TimePoint::ZERO);
        let extra = [TimePoint(latest.0 + 1)];
        let times = salient_times(&g, query_times.iter().copied().chain(extra));
        let ramified = compile_with_cap(&g, config.law_cap)?;
        let program = Program::build(&g, &ramified.laws, &times)?;
        let observations = g
            .tprops()
            .map(|t| program.lit_of(&HoldsLiteral::new(t.literal.clone(), t.time)).expect("salient"))
            .collect();
        let decide = decision_cells(&program, config.always_total);
        let memo = RefCell::new(Memo::new(&program));
        Ok(Session { program, observations, config, decide, consistent: OnceCell::new(), memo })
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    fn goal_ids(&self, goal: &[HoldsLiteral]) -> Result<Vec<LitId>> {
        goal.iter()
            .map(|l| {
                if self.program.fluent_id(&l.fluent).is_none() {
                    return Err(Error::UnknownFluent(l.fluent.to_string()));
                }
                self.program.lit_of(l).ok_or(Error::BeyondHorizon {
                    time: l.time.0,
                    horizon: self.program.times().last().map_or(0, |t| t.0),
                })
            })
            .collect()
    }

    fn with_observations(&self, lits: &[LitId]) -> Vec<LitId> {
        let mut out = lits.to_vec();
        out.extend(self.observations.iter().copied().filter(|o| !lits.contains(o)));
        out
    }

    fn search(&self, goal: Vec<LitId>, forbidden: RuleSet, s0: RuleSet) -> Result<Option<RuleSet>> {
        let mut memo = self.memo.borrow_mut();
        Search::new(&self.program, &mut memo, goal, forbidden, &self.decide, self.config.node_cap).run(s0)
    }

    fn credulous_ids(&self, lits: &[LitId]) -> Result<bool> {
        // Anything supporting a goal also supports the observations alone.
        if !lits.is_empty() && !self.consistent_with()? {
            return Ok(false);
        }
        let goal = self.with_observations(lits);
        let empty = self.program.empty_set();
        Ok(self.search(goal, empty.clone(), empty)?.is_some())
    }

    fn consistent_with(&self) -> Result<bool> {
        if let Some(&known) = self.consistent.get() {
            return Ok(known);
        }
        let ok = self.credulous_ids(&[])?;
        Ok(*self.consistent.get_or_init(|| ok))
    }

    /// Some admissible extension derives the whole conjunction.
    pub fn credulous(&self, goal: &[HoldsLiteral]) -> Result<bool> {
        let ids = self.goal_ids(goal)?;
        self.credulous_ids(&ids)
    }

    /// Every literal holds credulously and its complement does not.
    pub fn sceptical(&self, goal: &[HoldsLiteral]) -> Result<bool> {
        let ids = self.goal_ids(goal)?;
        for id in ids {
            if !self.credulous_ids(&[id])? || self.credulous_ids(&[id ^ 1])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The t-propositions are jointly supported by an admissible extension.
    pub fn consistent(&self) -> Result<bool> {
        self.consistent_with()
    }

    /// One explanation per minimal support of `goal` that extends to an
    /// admissible set, in support enumeration order.
    pub fn explain(&self, goal: &[HoldsLiteral]) -> Result<Vec<Explanation>> {
        let ids = self.goal_ids(goal)?;
        let p = &self.program;
        if !self.consistent_with()? {
            return Ok(Vec::new());
        }
        let mut candidates = alloc::vec![p.empty_set()];
        for &id in &ids {
            let options = self.memo.borrow_mut().derivations(p, id, Mode::Base);
            let mut next = Vec::new();
            for c in &candidates {
                next.extend(options.iter().map(|o| c.union(o)));
            }
            candidates = minimize(next);
        }
        candidates.retain(|c| !p.self_attacking(c));

        let full_goal = self.with_observations(&ids);
        let claimants = base_rules_for(p, &ids);
        let mut found: Vec<RuleSet> = Vec::new();
        for c in &candidates {
            let forbidden = claimants.difference(c);
            if self.search(full_goal.clone(), forbidden, c.clone())?.is_some() {
                found.push(c.clone());
            }
        }
        if found.is_empty() {
            for c in &candidates {
                if self.search(full_goal.clone(), p.empty_set(), c.clone())?.is_some() {
                    found.push(c.clone());
                }
            }
        }
        let mut seen = BTreeSet::new();
        Ok(found
            .into_iter()
            .filter(|s| seen.insert(s.clone()))
            .map(|s| Explanation { rules: p.rules_of(&s).cloned().collect() })
            .collect())
    }

    pub fn answer(&self, query: &Query) -> Result<QueryVerdict> {
        let (ok, explanations) = match query.mode {
            QueryMode::Sceptical => (self.sceptical(&query.literals)?, Vec::new()),
            QueryMode::Credulous => (self.credulous(&query.literals)?, Vec::new()),
            QueryMode::Explain => {
                let ex = self.explain(&query.literals)?;
                (!ex.is_empty(), ex)
            }
        };
        Ok(QueryVerdict {
            mode: query.mode,
            goal: query.literals.clone(),
            outcome: Outcome::from_bool(ok),
            explanations,
        })
    }
}

fn query_times(goal: &[HoldsLiteral]) -> Vec<TimePoint> {
    goal.iter().map(|l| l.time).collect()
}

pub fn answer(d: &DomainDescription, query: &Query) -> Result<QueryVerdict> {
    Session::new(d, &query_times(&query.literals), EngineConfig::default())?.answer(query)
}

pub fn credulous(d: &DomainDescription, goal: &[HoldsLiteral]) -> Result<bool> {
    Session::new(d, &query_times(goal), EngineConfig::default())?.credulous(goal)
}

pub fn sceptical(d: &DomainDescription, goal: &[HoldsLiteral]) -> Result<bool> {
    Session::new(d, &query_times(goal), EngineConfig::default())?.sceptical(goal)
}

pub fn explain(d: &DomainDescription, goal: &[HoldsLiteral]) -> Result<Vec<Explanation>> {
    Session::new(d, &query_times(goal), EngineConfig::default())?.explain(goal)
}

pub fn consistent(d: &DomainDescription) -> Result<bool> {
    Session::new(d, &[], EngineConfig::default())?.consistent()
}

/// An admissible superset of `s0` within `p`, if there is one.
pub fn admissible_extension(p: &Program, s0: &RuleSet, config: EngineConfig) -> Result<Option<RuleSet>> {
    let decide = decision_cells(p, config.always_total);
    let mut memo = Memo::new(p);
    Search::new(p, &mut memo, Vec::new(), p.empty_set(), &decide, config.node_cap).run(s0.clone())
}

#[cfg(test)]
mod tests;
