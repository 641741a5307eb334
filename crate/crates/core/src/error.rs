use alloc::string::String;

use crate::validate::ValidationReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain failed validation with {} violation(s)", .0.violations.len())]
    Invalid(ValidationReport),

    #[error("grounding would produce {count} instances (cap {cap})")]
    GroundingCap { count: usize, cap: usize },

    #[error("expected ground input, found `{0}`")]
    NotGround(String),

    #[error("ramification fixpoint exceeded {cap} derived laws; cyclic chain through {chain}")]
    RamificationCycle { cap: usize, chain: String },

    #[error("{count} fluents exceed the model enumeration cap of {cap}")]
    FluentCap { count: usize, cap: usize },

    #[error("derivation search exceeded {cap} nodes")]
    Resource { cap: usize },

    #[error("query mentions undeclared fluent `{0}`")]
    UnknownFluent(String),

    #[error("query time {time} lies beyond horizon {horizon}")]
    BeyondHorizon { time: u32, horizon: u32 },
}
