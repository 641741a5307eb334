//! The argumentation program of a ground domain: background Horn theory,
//! generation/persistence/assumption rules and their priority relation.
//!
//! Rules are instantiated only at the supplied (salient) time points. A
//! persistence rule links any earlier salient time directly to any later one,
//! so persistence never needs to chain through intermediate points.

mod bitset;
mod derive;

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use bitset::{BitSet, RuleSet};
pub(crate) use bitset::minimize;
pub(crate) use derive::{Closure, Deriver, Mode};

use crate::domain::{clause_symbol, Action, CProp, DomainDescription, Fluent, FluentLiteral, TimePoint};
use crate::error::{Error, Result};
use crate::ground::ground_fluents;

pub type RuleId = usize;
pub(crate) type LitId = usize;
pub(crate) type AtomId = usize;

/// A signed `HoldsAt` fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HoldsLiteral {
    pub fluent: Fluent,
    pub positive: bool,
    pub time: TimePoint,
}

impl HoldsLiteral {
    pub fn new(literal: FluentLiteral, time: TimePoint) -> Self {
        Self { fluent: literal.fluent, positive: literal.positive, time }
    }

    pub fn complement(&self) -> Self {
        Self { positive: !self.positive, ..self.clone() }
    }

    pub fn literal(&self) -> FluentLiteral {
        FluentLiteral { fluent: self.fluent.clone(), positive: self.positive }
    }
}

/// Clause syntax: `holds(f,t)` or `neg(holds(f,t))`.
impl fmt::Display for HoldsLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = clause_symbol(&self.fluent.name, &self.fluent.args);
        if self.positive {
            write!(f, "holds({atom},{})", self.time)
        } else {
            write!(f, "neg(holds({atom},{}))", self.time)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    /// `HoldsAt(f,t2) <- Initiation(f,t1)` (or the terminating dual).
    Generation { source: TimePoint },
    /// `HoldsAt(f,t2) <- HoldsAt(f,t1)`.
    Persistence { source: TimePoint },
    /// `HoldsAt(f,t)` with an empty body.
    Assumption,
}

/// A ground argument rule concluding `fluent` with the given sign at `time`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentRule {
    pub kind: RuleKind,
    pub positive: bool,
    pub fluent: Fluent,
    pub time: TimePoint,
}

impl ArgumentRule {
    pub fn conclusion(&self) -> HoldsLiteral {
        HoldsLiteral { fluent: self.fluent.clone(), positive: self.positive, time: self.time }
    }

    pub fn source(&self) -> Option<TimePoint> {
        match self.kind {
            RuleKind::Generation { source } | RuleKind::Persistence { source } => Some(source),
            RuleKind::Assumption => None,
        }
    }

    pub fn is_base(&self) -> bool {
        !matches!(self.kind, RuleKind::Persistence { .. })
    }
}

/// Explanation syntax: `rule(gen,f,t2,t1)`, `rule(per,f,t2,t1)`, `rule(ass,f,t)`,
/// with negative conclusions written `neg(f)`.
impl fmt::Display for ArgumentRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = clause_symbol(&self.fluent.name, &self.fluent.args);
        let head = if self.positive { sym } else { alloc::format!("neg({sym})") };
        match self.kind {
            RuleKind::Generation { source } => write!(f, "rule(gen,{head},{},{source})", self.time),
            RuleKind::Persistence { source } => write!(f, "rule(per,{head},{},{source})", self.time),
            RuleKind::Assumption => write!(f, "rule(ass,{head},{})", self.time),
        }
    }
}

/// `a` has lower priority than `b`.
///
/// Only rules with complementary conclusions about the same fluent at the
/// same time are related. Assumptions lose to everything else; persistence
/// loses to generation from the same or a later point; among rules of the
/// same kind the one with the earlier source loses.
pub fn lower_priority(a: &ArgumentRule, b: &ArgumentRule) -> bool {
    if a.fluent != b.fluent || a.time != b.time || a.positive == b.positive {
        return false;
    }
    kind_lower(&a.kind, &b.kind)
}

fn kind_lower(a: &RuleKind, b: &RuleKind) -> bool {
    use RuleKind::*;
    match (a, b) {
        (Assumption, Generation { .. } | Persistence { .. }) => true,
        (Persistence { source: sa }, Generation { source: sb }) => sb >= sa,
        (Generation { source: sa }, Generation { source: sb }) => sa < sb,
        (Persistence { source: sa }, Persistence { source: sb }) => sa < sb,
        _ => false,
    }
}

/// An action law as seen by the background theory. `pre` is evaluated at the
/// occurrence time, `post` at the next salient time (compiled ramifications
/// use it for conditions that must hold after the change).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CausalLaw {
    pub action: Action,
    pub effect: FluentLiteral,
    pub pre: Vec<FluentLiteral>,
    pub post: Vec<FluentLiteral>,
}

impl From<&CProp> for CausalLaw {
    fn from(c: &CProp) -> Self {
        Self {
            action: c.action.clone(),
            effect: c.effect.clone(),
            pre: c.conditions.clone(),
            post: Vec::new(),
        }
    }
}

/// `Initiation(f,t) <- body` when `initiates`, `Termination(f,t) <- body` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectClause {
    pub fluent: Fluent,
    pub initiates: bool,
    pub time: TimePoint,
    pub body: Vec<HoldsLiteral>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BackgroundTheory {
    pub happens: Vec<(Action, TimePoint)>,
    pub clauses: Vec<EffectClause>,
}

/// A goal for [`Program::derives`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    Holds(HoldsLiteral),
    Initiation(Fluent, TimePoint),
    Termination(Fluent, TimePoint),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Gen,
    Pers,
    Ass,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Body {
    None,
    Atom(AtomId),
    Lit(LitId),
}

#[derive(Debug, Clone)]
pub(crate) struct RuleInfo {
    pub kind: Kind,
    pub concl: LitId,
    /// Time index of the source; the conclusion's own index for assumptions.
    pub source: usize,
    pub body: Body,
}

#[derive(Debug, Clone)]
pub(crate) struct Clause {
    pub atom: AtomId,
    pub body: Vec<LitId>,
}

/// A ground r-proposition over fluent indices.
#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    pub head: (usize, bool),
    pub conditions: Vec<(usize, bool)>,
}

/// The argumentation program: background theory, argument rules, the base
/// (generation rules and assumptions) and, implicitly, the priority relation.
#[derive(Debug, Clone)]
pub struct Program {
    times: Vec<TimePoint>,
    fluents: Vec<Fluent>,
    fluent_index: BTreeMap<Fluent, usize>,
    background: BackgroundTheory,
    rules: Vec<ArgumentRule>,
    base: RuleSet,
    pub(crate) info: Vec<RuleInfo>,
    pub(crate) clauses: Vec<Clause>,
    pub(crate) clauses_by_atom: Vec<Vec<usize>>,
    pub(crate) rules_by_concl: Vec<Vec<RuleId>>,
    pub(crate) constraints: Vec<Constraint>,
    /// Some clause body refers to the time after the occurrence, so
    /// derivations can loop back on themselves.
    pub(crate) cyclic: bool,
}

/// Builds the argumentation program of a ground domain over `times`.
pub fn translate(d: &DomainDescription, times: &[TimePoint]) -> Result<Program> {
    let laws: Vec<CausalLaw> = d.cprops().map(CausalLaw::from).collect();
    Program::build(d, &laws, times)
}

impl Program {
    /// Like [`translate`], with the action laws supplied explicitly. The
    /// domain contributes the fluents, occurrences and r-propositions.
    pub fn build(d: &DomainDescription, laws: &[CausalLaw], times: &[TimePoint]) -> Result<Program> {
        if let Some(p) = d.propositions().iter().find(|p| !p.is_ground()) {
            return Err(Error::NotGround(p.to_string()));
        }
        let mut times = times.to_vec();
        times.sort();
        times.dedup();
        let fluents = ground_fluents(d);
        let fluent_index: BTreeMap<Fluent, usize> =
            fluents.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();

        let mut p = Program {
            times,
            fluents,
            fluent_index,
            background: BackgroundTheory::default(),
            rules: Vec::new(),
            base: RuleSet::default(),
            info: Vec::new(),
            clauses: Vec::new(),
            clauses_by_atom: Vec::new(),
            rules_by_concl: Vec::new(),
            constraints: Vec::new(),
            cyclic: false,
        };
        let nt = p.times.len();
        p.clauses_by_atom = vec![Vec::new(); p.atom_count()];
        p.rules_by_concl = vec![Vec::new(); p.lit_count()];

        for h in d.hprops() {
            p.background.happens.push((h.action.clone(), h.time));
        }
        for law in laws {
            for h in d.hprops().filter(|h| h.action == law.action) {
                let Some(ti) = p.time_index(h.time) else { continue };
                if !law.post.is_empty() && ti + 1 >= nt {
                    continue;
                }
                let mut body = Vec::new();
                let mut ids = Vec::new();
                let pre = law.pre.iter().map(|l| (l, ti));
                let post = law.post.iter().map(|l| (l, ti + 1));
                for (l, at) in pre.chain(post) {
                    let hl = HoldsLiteral::new(l.clone(), p.times[at]);
                    ids.push(p.lit_of(&hl).expect("clause fluents are ground fluents of the domain"));
                    body.push(hl);
                }
                p.cyclic |= !law.post.is_empty();
                let f = p.fluent_index[&law.effect.fluent];
                let atom = p.atom(f, ti, law.effect.positive);
                p.clauses_by_atom[atom].push(p.clauses.len());
                p.clauses.push(Clause { atom, body: ids });
                p.background.clauses.push(EffectClause {
                    fluent: law.effect.fluent.clone(),
                    initiates: law.effect.positive,
                    time: h.time,
                    body,
                });
            }
        }

        let nf = p.fluents.len();
        for kind in [Kind::Gen, Kind::Pers, Kind::Ass] {
            for f in 0..nf {
                for positive in [true, false] {
                    for t2 in 0..nt {
                        let concl = p.lit(f, t2, positive);
                        match kind {
                            Kind::Ass => p.push_rule(kind, concl, t2, Body::None),
                            Kind::Gen => {
                                for t1 in 0..t2 {
                                    let atom = p.atom(f, t1, positive);
                                    if !p.clauses_by_atom[atom].is_empty() {
                                        p.push_rule(kind, concl, t1, Body::Atom(atom));
                                    }
                                }
                            }
                            Kind::Pers => {
                                for t1 in 0..t2 {
                                    p.push_rule(kind, concl, t1, Body::Lit(p.lit(f, t1, positive)));
                                }
                            }
                        }
                    }
                }
            }
        }
        let n = p.rules.len();
        p.base = RuleSet::from_ids(n, (0..n).filter(|&r| p.info[r].kind != Kind::Pers));

        for r in d.rprops() {
            let idx = |l: &FluentLiteral| (p.fluent_index[&l.fluent], l.positive);
            let c = Constraint { head: idx(&r.head), conditions: r.conditions.iter().map(idx).collect() };
            p.constraints.push(c);
        }
        Ok(p)
    }

    fn push_rule(&mut self, kind: Kind, concl: LitId, source: usize, body: Body) {
        let (f, t2, positive) = self.lit_parts(concl);
        let rk = match kind {
            Kind::Gen => RuleKind::Generation { source: self.times[source] },
            Kind::Pers => RuleKind::Persistence { source: self.times[source] },
            Kind::Ass => RuleKind::Assumption,
        };
        let id = self.rules.len();
        self.rules.push(ArgumentRule {
            kind: rk,
            positive,
            fluent: self.fluents[f].clone(),
            time: self.times[t2],
        });
        self.info.push(RuleInfo { kind, concl, source, body });
        self.rules_by_concl[concl].push(id);
    }

    pub fn times(&self) -> &[TimePoint] {
        &self.times
    }

    pub fn fluents(&self) -> &[Fluent] {
        &self.fluents
    }

    pub fn background(&self) -> &BackgroundTheory {
        &self.background
    }

    /// Every argument rule; the index of a rule is its [`RuleId`].
    pub fn rules(&self) -> &[ArgumentRule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> &ArgumentRule {
        &self.rules[id]
    }

    pub fn base(&self) -> &RuleSet {
        &self.base
    }

    pub fn rule_id(&self, rule: &ArgumentRule) -> Option<RuleId> {
        let lit = self.lit_of(&rule.conclusion())?;
        self.rules_by_concl[lit].iter().copied().find(|&r| self.rules[r] == *rule)
    }

    /// Builds a rule set from rules of this program; unknown rules yield `None`.
    pub fn rule_set<'a>(&self, rules: impl IntoIterator<Item = &'a ArgumentRule>) -> Option<RuleSet> {
        let mut s = self.empty_set();
        for r in rules {
            s.insert(self.rule_id(r)?);
        }
        Some(s)
    }

    pub fn empty_set(&self) -> RuleSet {
        RuleSet::new(self.rules.len())
    }

    pub fn rules_of<'a>(&'a self, s: &'a RuleSet) -> impl Iterator<Item = &'a ArgumentRule> + 'a {
        s.iter().map(|id| &self.rules[id])
    }

    pub fn time_index(&self, t: TimePoint) -> Option<usize> {
        self.times.binary_search(&t).ok()
    }

    pub fn fluent_id(&self, f: &Fluent) -> Option<usize> {
        self.fluent_index.get(f).copied()
    }

    pub(crate) fn lit_count(&self) -> usize {
        self.fluents.len() * self.times.len() * 2
    }

    pub(crate) fn atom_count(&self) -> usize {
        self.lit_count()
    }

    pub(crate) fn lit(&self, f: usize, ti: usize, positive: bool) -> LitId {
        (f * self.times.len() + ti) * 2 + positive as usize
    }

    pub(crate) fn atom(&self, f: usize, ti: usize, initiates: bool) -> AtomId {
        self.lit(f, ti, initiates)
    }

    pub(crate) fn lit_parts(&self, lit: LitId) -> (usize, usize, bool) {
        let nt = self.times.len();
        let cell = lit / 2;
        (cell / nt, cell % nt, lit % 2 == 1)
    }

    pub(crate) fn lit_of(&self, l: &HoldsLiteral) -> Option<LitId> {
        Some(self.lit(self.fluent_id(&l.fluent)?, self.time_index(l.time)?, l.positive))
    }

    /// Internal priority test on rule ids.
    pub(crate) fn lower(&self, a: RuleId, b: RuleId) -> bool {
        let (ia, ib) = (&self.info[a], &self.info[b]);
        if ia.concl ^ 1 != ib.concl {
            return false;
        }
        match (ia.kind, ib.kind) {
            (Kind::Ass, Kind::Gen | Kind::Pers) => true,
            (Kind::Pers, Kind::Gen) => ib.source >= ia.source,
            (Kind::Gen, Kind::Gen) | (Kind::Pers, Kind::Pers) => ia.source < ib.source,
            _ => false,
        }
    }

    /// Some rule of `a` is lower than some rule of `b`, and no rule of `a`
    /// is higher than any rule of `b`.
    pub(crate) fn overall_lower(&self, a: &RuleSet, b: &RuleSet) -> bool {
        let mut some_lower = false;
        for x in a.iter() {
            for y in b.iter() {
                if self.lower(y, x) {
                    return false;
                }
                some_lower |= self.lower(x, y);
            }
        }
        some_lower
    }

    /// Forward-chains the background theory together with the rules in `s`.
    pub(crate) fn closure(&self, s: &RuleSet) -> Closure {
        Closure::compute(self, s)
    }

    /// Whether `goal` follows from the background theory and the rules in `s`.
    pub fn derives(&self, s: &RuleSet, goal: &Goal) -> bool {
        let c = self.closure(s);
        let atom = |f: &Fluent, t: TimePoint, init: bool| {
            match (self.fluent_id(f), self.time_index(t)) {
                (Some(f), Some(ti)) => c.atoms.contains(self.atom(f, ti, init)),
                _ => false,
            }
        };
        match goal {
            Goal::Holds(l) => self.lit_of(l).is_some_and(|id| c.lits.contains(id)),
            Goal::Initiation(f, t) => atom(f, *t, true),
            Goal::Termination(f, t) => atom(f, *t, false),
        }
    }

    /// Every subset-minimal, non-self-attacking set of base rules deriving
    /// `goal` that breaks no constraint, smallest first.
    pub fn minimal_supports(&self, goal: &HoldsLiteral) -> Vec<RuleSet> {
        let Some(lit) = self.lit_of(goal) else { return Vec::new() };
        Deriver::new(self).derivations(self, lit, Mode::Base).to_vec()
    }

    /// A set derives complementary literals exactly when it attacks itself.
    pub fn self_attacking(&self, s: &RuleSet) -> bool {
        !self.closure(s).consistent()
    }

    /// `a` attacks `b`: for some literal derived by `a` whose complement `b`
    /// derives, a minimal subset of `a` deriving it is not overall lower
    /// than a minimal subset of `b` deriving the complement.
    pub fn attacks(&self, a: &RuleSet, b: &RuleSet) -> bool {
        let ca = self.closure(a);
        let cb = self.closure(b);
        for lit in ca.lits.iter() {
            if !cb.lits.contains(lit ^ 1) {
                continue;
            }
            let mine = Deriver::within(self, a, lit);
            let theirs = Deriver::within(self, b, lit ^ 1);
            if mine.iter().any(|x| theirs.iter().any(|y| !self.overall_lower(x, y))) {
                return true;
            }
        }
        false
    }
}
