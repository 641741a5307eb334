//! Queries answered by either the argumentation engine or the model oracle.

use eres_core::argprog::HoldsLiteral;
use eres_core::engine::{EngineConfig, Outcome, Query, QueryMode, QueryVerdict, Session};
use eres_core::ground::DEFAULT_INSTANCE_CAP;
use eres_core::oracle::{Horizon, Model, ModelSet};
use eres_core::{ground_domain, validate_domain, DomainDescription, TimePoint};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Argumentation,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub backend: Backend,
    /// Last time point the oracle enumerates. Defaults to one past the
    /// latest time in the domain and query.
    pub horizon: Option<u32>,
    pub instance_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { backend: Backend::Argumentation, horizon: None, instance_cap: DEFAULT_INSTANCE_CAP }
    }
}

impl Options {
    fn engine(&self) -> EngineConfig {
        EngineConfig { instance_cap: self.instance_cap, ..EngineConfig::default() }
    }

    fn horizon(&self, d: &DomainDescription, query_times: &[TimePoint]) -> Result<Horizon, Error> {
        let needed = Horizon::covering(d, query_times.iter().copied());
        match self.horizon {
            None => Ok(needed),
            Some(h) => {
                let latest = query_times.iter().copied().chain(d.max_time()).max().unwrap_or(TimePoint::ZERO);
                if latest.0 > h {
                    return Err(eres_core::Error::BeyondHorizon { time: latest.0, horizon: h }.into());
                }
                Ok(Horizon::new(h))
            }
        }
    }

    /// Validated, grounded models for the oracle backend.
    fn model_set(&self, d: &DomainDescription, query_times: &[TimePoint]) -> Result<ModelSet, Error> {
        let report = validate_domain(d);
        if !report.is_ok() {
            return Err(eres_core::Error::Invalid(report).into());
        }
        let g = ground_domain(d, self.instance_cap)?;
        let h = self.horizon(&g, query_times)?;
        Ok(ModelSet::enumerate(&g, h)?)
    }
}

fn times(goal: &[HoldsLiteral]) -> Vec<TimePoint> {
    goal.iter().map(|l| l.time).collect()
}

fn oracle_credulous(models: &ModelSet, goal: &[HoldsLiteral]) -> Result<bool, Error> {
    for l in goal {
        // Reports unknown fluents and out-of-range times.
        models.credulous(&l.literal(), l.time)?;
    }
    Ok(models.models().iter().any(|m| goal.iter().all(|l| m.satisfies(&l.literal(), l.time))))
}

/// Answers `query`. The oracle has no notion of explanation and rejects
/// explanation queries.
pub fn answer(d: &DomainDescription, query: &Query, opts: &Options) -> Result<QueryVerdict, Error> {
    let goal = &query.literals;
    match opts.backend {
        Backend::Argumentation => Ok(Session::new(d, &times(goal), opts.engine())?.answer(query)?),
        Backend::Oracle => {
            let models = opts.model_set(d, &times(goal))?;
            let ok = match query.mode {
                QueryMode::Explain => {
                    return Err(Error::Usage("explanations need the argumentation backend".into()));
                }
                QueryMode::Credulous => oracle_credulous(&models, goal)?,
                QueryMode::Sceptical => {
                    let mut all = true;
                    for l in goal {
                        all &= models.sceptical(&l.literal(), l.time)?;
                    }
                    all
                }
            };
            Ok(QueryVerdict {
                mode: query.mode,
                goal: goal.clone(),
                outcome: Outcome::from_bool(ok),
                explanations: Vec::new(),
            })
        }
    }
}

/// Whether the observations of `d` can be jointly satisfied.
pub fn check(d: &DomainDescription, opts: &Options) -> Result<bool, Error> {
    match opts.backend {
        Backend::Argumentation => Ok(Session::new(d, &[], opts.engine())?.consistent()?),
        Backend::Oracle => Ok(opts.model_set(d, &[])?.is_consistent()),
    }
}

/// Every model of `d` up to the horizon, in initial-valuation order.
pub fn models(d: &DomainDescription, opts: &Options) -> Result<Vec<Model>, Error> {
    Ok(opts.model_set(d, &[])?.models().to_vec())
}
