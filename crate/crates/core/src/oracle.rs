//! Brute-force model enumeration over a finite horizon.
//!
//! A trajectory starts from one of the `2^n` valuations at time 0. At each
//! time the occurring actions apply their direct effects (conditions read in
//! the current state), the r-propositions are closed over the new state, and
//! the result becomes the state at the next time point. Trajectories with
//! conflicting assignments, r-proposition violations or violated observations
//! are discarded.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::domain::{DomainDescription, Fluent, FluentLiteral, TimePoint};
use crate::error::{Error, Result};
use crate::ground::ground_fluents;

pub const DEFAULT_FLUENT_CAP: usize = 20;

/// The last time point of the enumeration window (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Horizon {
    pub max_time: TimePoint,
}

impl Horizon {
    pub fn new(max_time: u32) -> Self {
        Self { max_time: TimePoint(max_time) }
    }

    /// One past the latest time in the domain or `query_times`.
    pub fn covering(d: &DomainDescription, query_times: impl IntoIterator<Item = TimePoint>) -> Self {
        let latest = query_times.into_iter().chain(d.max_time()).max().unwrap_or(TimePoint::ZERO);
        Self::new(latest.0 + 1)
    }
}

/// A total valuation of every fluent at every time `0..=max_time`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    fluents: Vec<Fluent>,
    states: Vec<Vec<bool>>,
}

impl Model {
    pub fn fluents(&self) -> &[Fluent] {
        &self.fluents
    }

    /// States indexed by time, each indexed like [`Model::fluents`].
    pub fn states(&self) -> &[Vec<bool>] {
        &self.states
    }

    pub fn value(&self, fluent: &Fluent, t: TimePoint) -> Option<bool> {
        let f = self.fluents.iter().position(|g| g == fluent)?;
        self.states.get(t.0 as usize).map(|s| s[f])
    }

    pub fn satisfies(&self, lit: &FluentLiteral, t: TimePoint) -> bool {
        self.value(&lit.fluent, t) == Some(lit.positive)
    }
}

/// `t=0: {F, ~G}; t=1: {...}` on a single line.
impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, state) in self.states.iter().enumerate() {
            if t > 0 {
                f.write_str("; ")?;
            }
            write!(f, "t={t}: {{")?;
            for (i, (fluent, &v)) in self.fluents.iter().zip(state).enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                if !v {
                    f.write_str("~")?;
                }
                write!(f, "{fluent}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub next_state: BTreeMap<Fluent, bool>,
    pub changed: BTreeSet<Fluent>,
    pub conflict: bool,
}

type Lit = (usize, bool);

/// Precomputed effect laws and constraints of a ground domain.
#[derive(Debug, Clone)]
pub struct Simulator {
    fluents: Vec<Fluent>,
    /// Direct effect laws active at each occurrence time: (effect, conditions).
    laws: BTreeMap<TimePoint, Vec<(Lit, Vec<Lit>)>>,
    rprops: Vec<(Lit, Vec<Lit>)>,
    tprops: Vec<(Lit, TimePoint)>,
}

fn holds(state: &[bool], (f, v): Lit) -> bool {
    state[f] == v
}

impl Simulator {
    pub fn new(d: &DomainDescription) -> Result<Self> {
        if let Some(p) = d.propositions().iter().find(|p| !p.is_ground()) {
            return Err(Error::NotGround(p.to_string()));
        }
        let fluents = ground_fluents(d);
        let index = |l: &FluentLiteral| -> Lit {
            let f = fluents.iter().position(|g| *g == l.fluent).expect("ground fluent");
            (f, l.positive)
        };
        let mut laws: BTreeMap<TimePoint, Vec<(Lit, Vec<Lit>)>> = BTreeMap::new();
        for h in d.hprops() {
            let at = laws.entry(h.time).or_default();
            for c in d.cprops().filter(|c| c.action == h.action) {
                at.push((index(&c.effect), c.conditions.iter().map(index).collect()));
            }
        }
        let rprops = d.rprops().map(|r| (index(&r.head), r.conditions.iter().map(index).collect())).collect();
        let tprops = d.tprops().map(|t| (index(&t.literal), t.time)).collect();
        Ok(Simulator { fluents, laws, rprops, tprops })
    }

    pub fn fluents(&self) -> &[Fluent] {
        &self.fluents
    }

    fn violates_rprops(&self, state: &[bool]) -> bool {
        self.rprops
            .iter()
            .any(|(head, conds)| conds.iter().all(|&c| holds(state, c)) && !holds(state, *head))
    }

    /// The state after the occurrences at `t`, or `None` on conflict.
    ///
    /// R-propositions fire when their conditions hold afterwards and at least
    /// one condition fluent was assigned during this step.
    pub fn step(&self, state: &[bool], t: TimePoint) -> Option<Vec<bool>> {
        let Some(laws) = self.laws.get(&t) else {
            return Some(state.to_vec());
        };
        let mut assigned: Vec<Option<bool>> = vec![None; state.len()];
        for ((f, v), conds) in laws {
            if conds.iter().all(|&c| holds(state, c)) {
                if assigned[*f] == Some(!*v) {
                    return None;
                }
                assigned[*f] = Some(*v);
            }
        }
        if assigned.iter().all(Option::is_none) {
            return Some(state.to_vec());
        }
        let mut next: Vec<bool> = state.iter().zip(&assigned).map(|(&s, a)| a.unwrap_or(s)).collect();
        loop {
            let mut changed = false;
            for ((f, v), conds) in &self.rprops {
                let fires = conds.iter().all(|&c| holds(&next, c))
                    && conds.iter().any(|&(g, _)| assigned[g].is_some());
                if !fires {
                    continue;
                }
                match assigned[*f] {
                    Some(w) if w == *v => {}
                    Some(_) => return None,
                    None => {
                        assigned[*f] = Some(*v);
                        next[*f] = *v;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if self.violates_rprops(&next) {
            return None;
        }
        Some(next)
    }

    fn observations_hold(&self, state: &[bool], t: TimePoint) -> bool {
        self.tprops.iter().filter(|(_, at)| *at == t).all(|(l, _)| holds(state, *l))
    }

    /// Every model over `0..=h.max_time`, ordered by initial valuation (the
    /// first fluent is the lowest bit).
    pub fn models(&self, h: Horizon, fluent_cap: usize) -> Result<Vec<Model>> {
        let n = self.fluents.len();
        if n > fluent_cap || n >= usize::BITS as usize {
            return Err(Error::FluentCap { count: n, cap: fluent_cap });
        }
        let mut out = Vec::new();
        'valuations: for bits in 0..(1usize << n) {
            let first: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            if self.violates_rprops(&first) || !self.observations_hold(&first, TimePoint::ZERO) {
                continue;
            }
            let mut states = vec![first];
            for t in 0..h.max_time.0 {
                let Some(next) = self.step(states.last().expect("nonempty"), TimePoint(t)) else {
                    continue 'valuations;
                };
                if !self.observations_hold(&next, TimePoint(t + 1)) {
                    continue 'valuations;
                }
                states.push(next);
            }
            out.push(Model { fluents: self.fluents.clone(), states });
        }
        Ok(out)
    }
}

/// Applies the occurrences at `t` to a (partial) state; fluents missing from
/// `state` read as false.
pub fn progress_state(d: &DomainDescription, state: &BTreeMap<Fluent, bool>, t: TimePoint) -> Result<StepResult> {
    let sim = Simulator::new(d)?;
    let before: Vec<bool> = sim.fluents.iter().map(|f| state.get(f).copied().unwrap_or(false)).collect();
    let (after, conflict) = match sim.step(&before, t) {
        Some(next) => (next, false),
        None => (before.clone(), true),
    };
    let next_state = sim.fluents.iter().cloned().zip(after.iter().copied()).collect();
    let changed = sim
        .fluents
        .iter()
        .zip(before.iter().zip(&after))
        .filter(|(_, (b, a))| b != a)
        .map(|(f, _)| f.clone())
        .collect();
    Ok(StepResult { next_state, changed, conflict })
}

/// All models of a ground domain up to `h`.
pub fn enumerate_models(d: &DomainDescription, h: Horizon) -> Result<Vec<Model>> {
    Simulator::new(d)?.models(h, DEFAULT_FLUENT_CAP)
}

/// The models of a domain, queried repeatedly.
#[derive(Debug, Clone)]
pub struct ModelSet {
    horizon: Horizon,
    fluents: Vec<Fluent>,
    models: Vec<Model>,
}

impl ModelSet {
    pub fn enumerate(d: &DomainDescription, h: Horizon) -> Result<Self> {
        Self::enumerate_capped(d, h, DEFAULT_FLUENT_CAP)
    }

    pub fn enumerate_capped(d: &DomainDescription, h: Horizon, fluent_cap: usize) -> Result<Self> {
        let sim = Simulator::new(d)?;
        let models = sim.models(h, fluent_cap)?;
        Ok(ModelSet { horizon: h, fluents: sim.fluents, models })
    }

    pub fn models(&self) -> &[Model] {
        &self.models
    }

    pub fn is_consistent(&self) -> bool {
        !self.models.is_empty()
    }

    fn check(&self, lit: &FluentLiteral, t: TimePoint) -> Result<()> {
        if t > self.horizon.max_time {
            return Err(Error::BeyondHorizon { time: t.0, horizon: self.horizon.max_time.0 });
        }
        if !self.fluents.contains(&lit.fluent) {
            return Err(Error::UnknownFluent(lit.fluent.to_string()));
        }
        Ok(())
    }

    /// Holds in every model, and there is at least one.
    pub fn sceptical(&self, lit: &FluentLiteral, t: TimePoint) -> Result<bool> {
        self.check(lit, t)?;
        Ok(self.is_consistent() && self.models.iter().all(|m| m.satisfies(lit, t)))
    }

    pub fn credulous(&self, lit: &FluentLiteral, t: TimePoint) -> Result<bool> {
        self.check(lit, t)?;
        Ok(self.models.iter().any(|m| m.satisfies(lit, t)))
    }
}

pub fn entails_sceptical(d: &DomainDescription, h: Horizon, lit: &FluentLiteral, t: TimePoint) -> Result<bool> {
    ModelSet::enumerate(d, h)?.sceptical(lit, t)
}

pub fn holds_credulous(d: &DomainDescription, h: Horizon, lit: &FluentLiteral, t: TimePoint) -> Result<bool> {
    ModelSet::enumerate(d, h)?.credulous(lit, t)
}

pub fn consistent(d: &DomainDescription, h: Horizon) -> Result<bool> {
    Ok(ModelSet::enumerate(d, h)?.is_consistent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, lit, Builder};

    fn state(pairs: &[(&str, bool)]) -> BTreeMap<Fluent, bool> {
        pairs.iter().map(|(f, v)| (Fluent::new(*f), *v)).collect()
    }

    #[test]
    fn running_out_of_petrol_stops_the_car() {
        let r = progress_state(&fixtures::dc(), &state(&[("Running", true), ("Petrol", true)]), TimePoint(8))
            .unwrap();
        assert!(!r.conflict);
        assert_eq!(r.next_state, state(&[("Running", false), ("Petrol", false)]));
        assert_eq!(r.changed.len(), 2);
    }

    #[test]
    fn no_occurrence_means_no_change() {
        let s = state(&[("Running", true), ("Petrol", false)]);
        let r = progress_state(&fixtures::dc(), &s, TimePoint(4)).unwrap();
        assert!(!r.conflict);
        assert!(r.changed.is_empty());
    }

    #[test]
    fn jump_start_without_petrol_conflicts() {
        let s = state(&[("Running", false), ("Petrol", false)]);
        let r = progress_state(&fixtures::dc_jumpstart(), &s, TimePoint(11)).unwrap();
        assert!(r.conflict);
    }

    #[test]
    fn vaccination_has_four_models() {
        let models = enumerate_models(&fixtures::dv(), Horizon::new(6)).unwrap();
        assert_eq!(models.len(), 4);
        assert!(models.iter().all(|m| m.satisfies(&lit("Protected"), TimePoint(6))));
        assert!(models.iter().all(|m| {
            let typo = m.value(&Fluent::new("TypeO"), TimePoint(0));
            (0..=6).all(|t| m.value(&Fluent::new("TypeO"), TimePoint(t)) == typo)
        }));
    }

    #[test]
    fn one_free_fluent_has_two_models() {
        let d = Builder::new(&["F"], &[]).build();
        assert_eq!(enumerate_models(&d, Horizon::new(1)).unwrap().len(), 2);
    }

    #[test]
    fn jump_start_is_inconsistent() {
        assert!(enumerate_models(&fixtures::dc_jumpstart(), Horizon::new(12)).unwrap().is_empty());
        assert!(!consistent(&fixtures::dc_jumpstart(), Horizon::new(12)).unwrap());
        assert!(consistent(&fixtures::dc(), Horizon::new(11)).unwrap());
    }

    #[test]
    fn camera_is_loaded_throughout() {
        let d = fixtures::dp();
        let set = ModelSet::enumerate(&d, Horizon::new(6)).unwrap();
        for t in 0..=6 {
            assert!(set.sceptical(&lit("Loaded"), TimePoint(t)).unwrap(), "t={t}");
        }
    }

    #[test]
    fn infection_goldens() {
        let set = ModelSet::enumerate(&fixtures::di(), Horizon::new(10)).unwrap();
        assert!(set.sceptical(&lit("Danger"), TimePoint(5)).unwrap());
        assert!(set.sceptical(&lit("Allergic"), TimePoint(4)).unwrap());
        assert!(!set.sceptical(&lit("Danger"), TimePoint(4)).unwrap());
    }

    #[test]
    fn inconsistent_domains_entail_nothing() {
        let d = fixtures::dc_jumpstart();
        let h = Horizon::new(12);
        assert!(!entails_sceptical(&d, h, &lit("Running"), TimePoint(0)).unwrap());
        assert!(!entails_sceptical(&d, h, &lit("~Running"), TimePoint(0)).unwrap());
        assert!(!holds_credulous(&d, h, &lit("Running"), TimePoint(0)).unwrap());
    }

    #[test]
    fn simultaneous_contradictory_effects_have_no_model() {
        let d = Builder::new(&["F"], &["A"]).causes("A", "F", &[]).causes("A", "~F", &[]).happens("A", 1).build();
        assert!(enumerate_models(&d, Horizon::new(2)).unwrap().is_empty());
    }

    #[test]
    fn queries_outside_the_window_are_refused() {
        let set = ModelSet::enumerate(&fixtures::dv(), Horizon::new(6)).unwrap();
        assert_eq!(
            set.sceptical(&lit("Protected"), TimePoint(7)),
            Err(Error::BeyondHorizon { time: 7, horizon: 6 })
        );
        assert!(matches!(set.credulous(&lit("Nope"), TimePoint(1)), Err(Error::UnknownFluent(_))));
    }

    #[test]
    fn model_rendering() {
        let d = Builder::new(&["F", "G"], &[]).holds("F", 0).holds("~G", 0).build();
        let models = enumerate_models(&d, Horizon::new(1)).unwrap();
        assert_eq!(models.len(), 1);
        assert_eq!(models[0].to_string(), "t=0: {F, ~G}; t=1: {F, ~G}");
    }

    #[test]
    fn covering_horizon() {
        assert_eq!(Horizon::covering(&fixtures::dc(), [TimePoint(10)]), Horizon::new(11));
        assert_eq!(Horizon::covering(&fixtures::dc(), []), Horizon::new(9));
    }
}
