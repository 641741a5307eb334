//! Forward chaining and enumeration of minimal derivations.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::bitset::{minimize, BitSet};
use super::{Body, Kind, LitId, Program, RuleSet};

/// Everything derivable from the background theory plus a rule set.
#[derive(Debug, Clone)]
pub(crate) struct Closure {
    pub lits: BitSet,
    pub atoms: BitSet,
}

impl Closure {
    pub fn compute(p: &Program, s: &RuleSet) -> Closure {
        let mut lits = BitSet::new(p.lit_count());
        let mut atoms = BitSet::new(p.atom_count());
        let rules: Vec<usize> = s.iter().collect();
        let mut fired = vec![false; rules.len()];
        let mut done = vec![false; p.clauses.len()];
        loop {
            let mut changed = false;
            for (ci, c) in p.clauses.iter().enumerate() {
                if !done[ci] && c.body.iter().all(|&l| lits.contains(l)) {
                    done[ci] = true;
                    changed |= atoms.insert(c.atom);
                }
            }
            for (i, &r) in rules.iter().enumerate() {
                if fired[i] {
                    continue;
                }
                let info = &p.info[r];
                let ready = match info.body {
                    Body::None => true,
                    Body::Atom(a) => atoms.contains(a),
                    Body::Lit(l) => lits.contains(l),
                };
                if ready {
                    fired[i] = true;
                    changed |= lits.insert(info.concl);
                }
            }
            if !changed {
                return Closure { lits, atoms };
            }
        }
    }

    /// No fluent is derived both true and false at the same time.
    pub fn consistent(&self) -> bool {
        self.lits.iter().all(|l| l % 2 == 0 || !self.lits.contains(l ^ 1))
    }

    /// Some constraint is broken, or a fluent is both initiated and
    /// terminated at the same time. Monotone in the derived literals.
    pub fn violates(&self, p: &Program) -> bool {
        self.breaks_constraint(p) || self.clashes(p)
    }

    pub fn breaks_constraint(&self, p: &Program) -> bool {
        (0..p.times().len()).any(|ti| {
            p.constraints.iter().any(|k| {
                k.conditions.iter().all(|&(f, v)| self.lits.contains(p.lit(f, ti, v)))
                    && self.lits.contains(p.lit(k.head.0, ti, !k.head.1))
            })
        })
    }

    fn clashes(&self, p: &Program) -> bool {
        (0..p.times().len()).any(|ti| {
            (0..p.fluents().len())
                .any(|f| self.atoms.contains(p.atom(f, ti, true)) && self.atoms.contains(p.atom(f, ti, false)))
        })
    }
}

/// Which rules a derivation may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Generation rules and assumptions only.
    Base,
    /// Any rule; a persistence step's source is derived without persistence
    /// on top, so persistence spans are single steps.
    Theory,
    /// As `Theory`, but the literal itself is not concluded by persistence.
    TheoryNoPersistence,
}

impl Mode {
    fn slot(self) -> usize {
        self as usize
    }
}

/// Memo of minimal derivations for one program.
#[derive(Debug, Clone)]
pub(crate) struct Deriver {
    cache: [Vec<Option<Rc<Vec<RuleSet>>>>; 3],
    stack: BitSet,
    cut: bool,
}

impl Deriver {
    pub fn new(p: &Program) -> Self {
        let n = p.lit_count();
        Deriver {
            cache: [vec![None; n], vec![None; n], vec![None; n]],
            stack: BitSet::new(n),
            cut: false,
        }
    }

    /// All subset-minimal, consistent rule sets deriving `lit` under `mode`,
    /// smallest first.
    pub fn derivations(&mut self, p: &Program, lit: LitId, mode: Mode) -> Rc<Vec<RuleSet>> {
        if let Some(hit) = &self.cache[mode.slot()][lit] {
            return hit.clone();
        }
        if self.stack.contains(lit) {
            self.cut = true;
            return Rc::new(Vec::new());
        }
        self.stack.insert(lit);
        let outer_cut = core::mem::replace(&mut self.cut, false);

        let body_mode = if mode == Mode::Base { Mode::Base } else { Mode::Theory };
        let mut out = Vec::new();
        for &r in &p.rules_by_concl[lit] {
            let info = &p.info[r];
            let unit = RuleSet::from_ids(p.rules().len(), [r]);
            match (info.kind, info.body) {
                (Kind::Ass, _) => out.push(unit),
                (Kind::Gen, Body::Atom(atom)) => {
                    for &ci in &p.clauses_by_atom[atom] {
                        let mut partial = vec![unit.clone()];
                        for &b in &p.clauses[ci].body {
                            let options = self.derivations(p, b, body_mode);
                            partial = minimize(product(&partial, &options));
                            if partial.is_empty() {
                                break;
                            }
                        }
                        out.extend(partial);
                    }
                }
                (Kind::Pers, Body::Lit(src)) if mode == Mode::Theory => {
                    let options = self.derivations(p, src, Mode::TheoryNoPersistence);
                    out.extend(options.iter().map(|o| o.union(&unit)));
                }
                _ => {}
            }
        }
        let out: Vec<RuleSet> = minimize(out)
            .into_iter()
            .filter(|s| {
                let c = Closure::compute(p, s);
                // A base support that clashes can never join an extension,
                // and no derivation may break a constraint.
                c.consistent() && !c.breaks_constraint(p) && (mode != Mode::Base || !c.clashes(p))
            })
            .collect();
        let out = Rc::new(out);

        let cut_here = self.cut;
        self.cut = outer_cut || cut_here;
        self.stack.remove(lit);
        if !cut_here {
            self.cache[mode.slot()][lit] = Some(out.clone());
        }
        out
    }

    /// Minimal subsets of `set` deriving `lit`, persistence chains included.
    pub fn within(p: &Program, set: &RuleSet, lit: LitId) -> Vec<RuleSet> {
        let mut stack = BitSet::new(p.lit_count());
        Self::within_rec(p, set, lit, &mut stack)
    }

    fn within_rec(p: &Program, set: &RuleSet, lit: LitId, stack: &mut BitSet) -> Vec<RuleSet> {
        if stack.contains(lit) {
            return Vec::new();
        }
        stack.insert(lit);
        let mut out = Vec::new();
        for &r in p.rules_by_concl[lit].iter().filter(|&&r| set.contains(r)) {
            let unit = RuleSet::from_ids(p.rules().len(), [r]);
            match p.info[r].body {
                Body::None => out.push(unit),
                Body::Lit(src) => {
                    out.extend(Self::within_rec(p, set, src, stack).iter().map(|o| o.union(&unit)));
                }
                Body::Atom(atom) => {
                    for &ci in &p.clauses_by_atom[atom] {
                        let mut partial = vec![unit.clone()];
                        for &b in &p.clauses[ci].body {
                            let options = Self::within_rec(p, set, b, stack);
                            partial = minimize(product(&partial, &options));
                            if partial.is_empty() {
                                break;
                            }
                        }
                        out.extend(partial);
                    }
                }
            }
        }
        stack.remove(lit);
        minimize(out)
    }
}

fn product(left: &[RuleSet], right: &[RuleSet]) -> Vec<RuleSet> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            out.push(l.union(r));
        }
    }
    out
}
