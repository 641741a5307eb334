//! Reasoning about narratives in the action language E.
//!
//! A [`DomainDescription`] collects action laws, occurrences, observations and
//! ramification constraints. Queries are answered by translating the domain
//! into an argumentation program ([`argprog`]) and searching for admissible
//! extensions ([`engine`]). The [`oracle`] module enumerates models directly
//! over a finite horizon and serves as an independent reference.

#![no_std]

extern crate alloc;

pub mod argprog;
pub mod domain;
pub mod engine;
pub mod error;
pub mod ground;
pub mod oracle;
pub mod validate;

#[cfg(test)]
mod fixtures;

pub use domain::{
    Action, CProp, DomainDescription, Fluent, FluentLiteral, HProp, Proposition, RProp, Signature,
    TProp, Term, TimePoint, Vocabulary,
};
pub use error::{Error, Result};
pub use ground::{ground_domain, salient_times};
pub use validate::{validate_domain, ValidationReport, Violation, ViolationKind};
