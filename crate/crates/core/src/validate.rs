//! Structural checks on domain descriptions.
//!
//! A valid domain uses only declared symbols, keeps h- and t-propositions
//! ground, and keeps every c-proposition strongly range-restricted: each
//! variable in the conditions also occurs in the action or effect arguments.
//! R-propositions may carry variables only when the condition variables are
//! drawn from the head's.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::domain::{Action, DomainDescription, Fluent, FluentLiteral, Proposition, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    UndeclaredFluent { name: String, arity: usize },
    UndeclaredAction { name: String, arity: usize },
    UndeclaredConstant(String),
    /// A condition variable that is not bound by the action/effect (or head).
    UnboundVariable(String),
    NonGround(String),
    DuplicateCondition(String),
    ComplementaryConditions(String),
    HeadInConditions,
    EmptyConditions,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::UndeclaredFluent { name, arity } => {
                write!(f, "undeclared fluent {name}/{arity}")
            }
            ViolationKind::UndeclaredAction { name, arity } => {
                write!(f, "undeclared action {name}/{arity}")
            }
            ViolationKind::UndeclaredConstant(c) => write!(f, "undeclared constant {c}"),
            ViolationKind::UnboundVariable(v) => {
                write!(f, "variable {v} is not range-restricted")
            }
            ViolationKind::NonGround(v) => write!(f, "must be ground but contains variable {v}"),
            ViolationKind::DuplicateCondition(l) => write!(f, "condition {l} is repeated"),
            ViolationKind::ComplementaryConditions(fl) => {
                write!(f, "conditions contain both {fl} and ~{fl}")
            }
            ViolationKind::HeadInConditions => f.write_str("head literal occurs in its own conditions"),
            ViolationKind::EmptyConditions => f.write_str("condition set is empty"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Position of the offending proposition in input order.
    pub index: usize,
    pub statement: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`: {}", self.statement, self.kind)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

struct Checker<'d> {
    domain: &'d DomainDescription,
    index: usize,
    statement: String,
    out: Vec<Violation>,
}

impl Checker<'_> {
    fn report(&mut self, kind: ViolationKind) {
        if self.out.iter().any(|v| v.index == self.index && v.kind == kind) {
            return;
        }
        self.out.push(Violation { index: self.index, statement: self.statement.clone(), kind });
    }

    fn args(&mut self, args: &[Term]) {
        for arg in args {
            if let Term::Const(c) = arg {
                if !self.domain.vocabulary.has_constant(c) {
                    self.report(ViolationKind::UndeclaredConstant(c.clone()));
                }
            }
        }
    }

    fn fluent(&mut self, fluent: &Fluent) {
        if !self.domain.vocabulary.has_fluent(&fluent.name, fluent.arity()) {
            self.report(ViolationKind::UndeclaredFluent {
                name: fluent.name.clone(),
                arity: fluent.arity(),
            });
        }
        self.args(&fluent.args);
    }

    fn action(&mut self, action: &Action) {
        if !self.domain.vocabulary.has_action(&action.name, action.arity()) {
            self.report(ViolationKind::UndeclaredAction {
                name: action.name.clone(),
                arity: action.arity(),
            });
        }
        self.args(&action.args);
    }

    fn ground(&mut self, args: &[Term]) {
        if let Some(v) = args.iter().find(|a| a.is_var()) {
            self.report(ViolationKind::NonGround(v.name().to_string()));
        }
    }

    fn condition_set(&mut self, conditions: &[FluentLiteral]) {
        for (i, lit) in conditions.iter().enumerate() {
            self.fluent(&lit.fluent);
            if conditions[..i].contains(lit) {
                self.report(ViolationKind::DuplicateCondition(lit.to_string()));
            }
            if lit.positive && conditions.contains(&lit.complement()) {
                self.report(ViolationKind::ComplementaryConditions(lit.fluent.to_string()));
            }
        }
    }

    fn bound_by(&mut self, conditions: &[FluentLiteral], bound: &BTreeSet<&str>) {
        for lit in conditions {
            for v in lit.fluent.vars() {
                if !bound.contains(v) {
                    self.report(ViolationKind::UnboundVariable(v.to_string()));
                }
            }
        }
    }
}

/// Checks symbols, groundness and range restriction. Never fails; problems
/// are collected in the report.
pub fn validate_domain(d: &DomainDescription) -> ValidationReport {
    let mut checker = Checker { domain: d, index: 0, statement: String::new(), out: Vec::new() };
    for (index, prop) in d.propositions().iter().enumerate() {
        checker.index = index;
        checker.statement = prop.to_string();
        match prop {
            Proposition::Causal(c) => {
                checker.action(&c.action);
                checker.fluent(&c.effect.fluent);
                checker.condition_set(&c.conditions);
                let bound: BTreeSet<&str> = c.action.vars().chain(c.effect.fluent.vars()).collect();
                checker.bound_by(&c.conditions, &bound);
            }
            Proposition::Happens(h) => {
                checker.action(&h.action);
                checker.ground(&h.action.args);
            }
            Proposition::Holds(t) => {
                checker.fluent(&t.literal.fluent);
                checker.ground(&t.literal.fluent.args);
            }
            Proposition::Ramification(r) => {
                checker.fluent(&r.head.fluent);
                if r.conditions.is_empty() {
                    checker.report(ViolationKind::EmptyConditions);
                }
                checker.condition_set(&r.conditions);
                if r.conditions.contains(&r.head) {
                    checker.report(ViolationKind::HeadInConditions);
                }
                let bound: BTreeSet<&str> = r.head.fluent.vars().collect();
                checker.bound_by(&r.conditions, &bound);
            }
        }
    }
    ValidationReport { violations: checker.out }
}
