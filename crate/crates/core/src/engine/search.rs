//! Depth-first search for admissible extensions.
//!
//! A search state is a set `S` of base rules. Each step either adds a support
//! for an underived goal literal, answers the unanswered attack with the
//! fewest possible counterattacks, or (for constrained programs) decides an
//! undecided literal. A state with none of these to do is admissible.
//!
//! A failed state reports the subset of its rules the failure depended on.
//! Those subsets are remembered, and a branch whose failure did not depend on
//! its own additions fails its parent outright.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use crate::argprog::{Closure, Deriver, Kind, LitId, Mode, Program, RuleSet};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_CAP: usize = 200_000;

/// Derivations and attack facts of one program, shared by every search
/// over it.
#[derive(Debug, Clone)]
pub(crate) struct Memo {
    der: Deriver,
    /// Per attacking derivation `A`: the literals it derives, `A`'s own
    /// derivations of each, and the base supports that could answer it.
    claims: BTreeMap<RuleSet, Rc<Vec<LitId>>>,
    within: BTreeMap<(RuleSet, LitId), Rc<Vec<RuleSet>>>,
    options: BTreeMap<RuleSet, Rc<Vec<RuleSet>>>,
}

impl Memo {
    pub fn new(p: &Program) -> Self {
        Memo { der: Deriver::new(p), claims: BTreeMap::new(), within: BTreeMap::new(), options: BTreeMap::new() }
    }

    pub fn derivations(&mut self, p: &Program, lit: LitId, mode: Mode) -> Rc<Vec<RuleSet>> {
        self.der.derivations(p, lit, mode)
    }
}

enum Verdict {
    Found(RuleSet),
    /// No admissible extension contains this subset of the state.
    Failed(RuleSet),
}

pub(crate) struct Search<'d, 'p> {
    memo: &'d mut Memo,
    p: &'p Program,
    goal: Vec<LitId>,
    forbidden: RuleSet,
    decide: &'d [usize],
    nodes: usize,
    cap: usize,
    /// States with no admissible superset, keyed by their first rule; any
    /// superset of one fails too.
    failed: Vec<Vec<RuleSet>>,
    failed_empty: bool,
}

/// Literal cells (`lit / 2`) an accepted state must decide, in time order.
///
/// Partial extensions are enough unless a contradiction can hide in what they
/// leave open: every cell of a fluent mentioned by an r-proposition, and the
/// body cells of clauses for a fluent that can be both initiated and
/// terminated at the same time. With `all`, every cell.
pub(crate) fn decision_cells(p: &Program, all: bool) -> Vec<usize> {
    let nt = p.times().len();
    let cells = p.lit_count() / 2;
    let mut mark = vec![all; cells];
    for k in &p.constraints {
        for &(f, _) in k.conditions.iter().chain([&k.head]) {
            mark[f * nt..(f + 1) * nt].fill(true);
        }
    }
    for cell in 0..cells {
        let (init, term) = (&p.clauses_by_atom[cell * 2 + 1], &p.clauses_by_atom[cell * 2]);
        if init.is_empty() || term.is_empty() {
            continue;
        }
        for &c in init.iter().chain(term) {
            for &l in &p.clauses[c].body {
                mark[l / 2] = true;
            }
        }
    }
    let mut out: Vec<usize> = (0..cells).filter(|&c| mark[c]).collect();
    out.sort_by_key(|&c| (c % nt, c / nt));
    out
}

impl<'d, 'p> Search<'d, 'p> {
    pub fn new(
        p: &'p Program,
        memo: &'d mut Memo,
        goal: Vec<LitId>,
        forbidden: RuleSet,
        decide: &'d [usize],
        cap: usize,
    ) -> Self {
        let failed = vec![Vec::new(); p.rules().len()];
        Search { memo, p, goal, forbidden, decide, nodes: 0, cap, failed, failed_empty: false }
    }

    pub fn run(&mut self, s0: RuleSet) -> Result<Option<RuleSet>> {
        Ok(match self.dfs(s0)? {
            Verdict::Found(s) => Some(s),
            Verdict::Failed(_) => None,
        })
    }

    fn dfs(&mut self, s: RuleSet) -> Result<Verdict> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::Resource { cap: self.cap });
        }
        if let Some(reason) = self.known_failure(&s) {
            return Ok(Verdict::Failed(reason));
        }
        let c = self.p.closure(&s);
        if !c.consistent() || c.violates(self.p) {
            let reason = self.conflict(&s, &c);
            self.fail(reason.clone());
            return Ok(Verdict::Failed(reason));
        }

        // `reason` collects the rules of `s` that some failure depended on.
        let (mut reason, options) = if let Some(&g) = self.goal.iter().find(|&&g| !c.lits.contains(g)) {
            let options = self.memo.der.derivations(self.p, g, Mode::Base);
            (self.p.empty_set(), self.extensions(&s, options.iter()))
        } else if let Some((attacked, options)) = self.tightest_counters(&s, &c) {
            (attacked, options)
        } else if let Some((pos, neg)) = self.undecided(&c) {
            let mut options = Vec::new();
            for lit in [pos, neg] {
                let supports = self.memo.der.derivations(self.p, lit, Mode::Base);
                options.extend(self.extensions(&s, supports.iter()));
            }
            (self.p.empty_set(), options)
        } else {
            return Ok(Verdict::Found(s));
        };

        for next in options {
            match self.dfs(next)? {
                Verdict::Found(found) => return Ok(Verdict::Found(found)),
                // The failure did not need this branch's additions, so the
                // remaining branches fail too.
                Verdict::Failed(r) if r.is_subset(&s) => return Ok(Verdict::Failed(r)),
                Verdict::Failed(r) => reason.union_with(&r.intersection(&s)),
            }
        }
        self.fail(reason.clone());
        Ok(Verdict::Failed(reason))
    }

    fn known_failure(&self, s: &RuleSet) -> Option<RuleSet> {
        if self.failed_empty {
            return Some(self.p.empty_set());
        }
        s.iter().find_map(|r| self.failed[r].iter().find(|f| f.is_subset(s)).cloned())
    }

    fn fail(&mut self, reason: RuleSet) {
        let first = reason.iter().next();
        match first {
            Some(r) => self.failed[r].push(reason),
            None => self.failed_empty = true,
        }
    }

    /// A subset of `s` whose closure is already contradictory, clashing or
    /// breaks a constraint.
    fn conflict(&self, s: &RuleSet, c: &Closure) -> RuleSet {
        let p = self.p;
        let mut out = p.empty_set();
        let mut add = |lits: &mut dyn Iterator<Item = LitId>| {
            for l in lits {
                match Deriver::within(p, s, l).into_iter().min_by_key(|d| d.len()) {
                    Some(d) => out.union_with(&d),
                    None => out.union_with(s),
                }
            }
        };
        if let Some(l) = c.lits.iter().find(|&l| l % 2 == 1 && c.lits.contains(l ^ 1)) {
            add(&mut [l, l ^ 1].into_iter());
            return out;
        }
        let nt = p.times().len();
        for ti in 0..nt {
            for k in &p.constraints {
                let lits: Vec<LitId> = k
                    .conditions
                    .iter()
                    .map(|&(f, v)| p.lit(f, ti, v))
                    .chain([p.lit(k.head.0, ti, !k.head.1)])
                    .collect();
                if lits.iter().all(|&l| c.lits.contains(l)) {
                    add(&mut lits.into_iter());
                    return out;
                }
            }
            for f in 0..p.fluents().len() {
                let atoms = [p.atom(f, ti, true), p.atom(f, ti, false)];
                if !atoms.iter().all(|&a| c.atoms.contains(a)) {
                    continue;
                }
                for a in atoms {
                    let clause = p.clauses_by_atom[a]
                        .iter()
                        .map(|&ci| &p.clauses[ci])
                        .find(|cl| cl.body.iter().all(|&l| c.lits.contains(l)));
                    if let Some(cl) = clause {
                        add(&mut cl.body.iter().copied());
                    }
                }
                return out;
            }
        }
        s.clone()
    }

    /// `S ∪ D` for every allowed `D`, fewest new rules first, duplicates dropped.
    fn extensions<'a>(&self, s: &RuleSet, supports: impl Iterator<Item = &'a RuleSet>) -> Vec<RuleSet> {
        let mut out: Vec<(usize, RuleSet)> = Vec::new();
        for d in supports {
            if !d.is_disjoint(&self.forbidden) {
                continue;
            }
            let next = s.union(d);
            if next == *s || out.iter().any(|(_, o)| *o == next) {
                continue;
            }
            out.push((d.difference(s).len(), next));
        }
        out.sort_by_key(|(added, _)| *added);
        out.into_iter().map(|(_, n)| n).collect()
    }

    fn undecided(&self, c: &Closure) -> Option<(LitId, LitId)> {
        self.decide
            .iter()
            .find(|&&cell| !c.lits.contains(cell * 2) && !c.lits.contains(cell * 2 + 1))
            .map(|&cell| (cell * 2 + 1, cell * 2))
    }

    /// Minimal supports of `lit` inside `s`.
    fn supports_within(&mut self, s: &RuleSet, lit: LitId) -> Vec<RuleSet> {
        self.memo.der.derivations(self.p, lit, Mode::Base).iter().filter(|d| d.is_subset(s)).cloned().collect()
    }

    /// For the uncountered attack on `s` with the fewest counter options:
    /// the part of `s` it attacks, and those options. `None` if every attack
    /// is already answered.
    fn tightest_counters(&mut self, s: &RuleSet, c: &Closure) -> Option<(RuleSet, Vec<RuleSet>)> {
        let mut best: Option<(RuleSet, Vec<RuleSet>)> = None;
        for mu in c.lits.iter() {
            let own = self.supports_within(s, mu);
            let attackers = self.memo.der.derivations(self.p, mu ^ 1, Mode::Theory);
            for a in attackers.iter() {
                let Some(target) = own.iter().find(|o| !self.p.overall_lower(a, o)) else {
                    continue;
                };
                if self.answered(s, c, a) {
                    continue;
                }
                let options = self.options(a);
                let options = self.extensions(s, options.iter());
                if options.is_empty() {
                    return Some((target.clone(), options));
                }
                if best.as_ref().is_none_or(|(_, b)| options.len() < b.len()) {
                    best = Some((target.clone(), options));
                }
            }
        }
        best
    }

    fn claims(&mut self, a: &RuleSet) -> Rc<Vec<LitId>> {
        if let Some(known) = self.memo.claims.get(a) {
            return known.clone();
        }
        let lits = Rc::new(self.p.closure(a).lits.iter().collect::<Vec<_>>());
        self.memo.claims.insert(a.clone(), lits.clone());
        lits
    }

    /// `A`'s minimal derivations of `lambda`.
    fn within(&mut self, a: &RuleSet, lambda: LitId) -> Rc<Vec<RuleSet>> {
        let key = (a.clone(), lambda);
        if let Some(known) = self.memo.within.get(&key) {
            return known.clone();
        }
        let found = Rc::new(Deriver::within(self.p, a, lambda));
        self.memo.within.insert(key, found.clone());
        found
    }

    /// Base supports of some `¬λ`, `λ` derived by `a`, that are not overall
    /// lower than `a`'s derivations of `λ`.
    fn options(&mut self, a: &RuleSet) -> Rc<Vec<RuleSet>> {
        if let Some(known) = self.memo.options.get(a) {
            return known.clone();
        }
        let mut out = Vec::new();
        for &lambda in self.claims(a).iter() {
            let theirs = self.within(a, lambda);
            for d in self.memo.der.derivations(self.p, lambda ^ 1, Mode::Base).iter() {
                if !theirs.iter().all(|t| self.p.overall_lower(d, t)) {
                    out.push(d.clone());
                }
            }
        }
        let out = Rc::new(out);
        self.memo.options.insert(a.clone(), out.clone());
        out
    }

    /// `s` already counterattacks `a`.
    fn answered(&mut self, s: &RuleSet, c: &Closure, a: &RuleSet) -> bool {
        for &lambda in self.claims(a).iter() {
            if !c.lits.contains(lambda ^ 1) {
                continue;
            }
            let theirs = self.within(a, lambda);
            let mine = self.supports_within(s, lambda ^ 1);
            if mine.iter().any(|m| theirs.iter().any(|t| !self.p.overall_lower(m, t))) {
                return true;
            }
        }
        false
    }
}

/// Rules concluding any of `lits` that live in the base.
pub(crate) fn base_rules_for(p: &Program, lits: &[LitId]) -> RuleSet {
    let mut out = p.empty_set();
    for &l in lits {
        for &r in &p.rules_by_concl[l] {
            if p.info[r].kind != Kind::Pers {
                out.insert(r);
            }
        }
    }
    out
}
