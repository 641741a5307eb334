//! Vocabulary, propositions and domain descriptions.
//!
//! A domain is an ordered list of propositions over a declared vocabulary of
//! fluents, actions and object constants. Proposition arguments are [`Term`]s;
//! schemas with variables are expanded by [`crate::ground::ground_domain`]
//! before reasoning.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A point on the natural-number time line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TimePoint(pub u32);

impl TimePoint {
    pub const ZERO: TimePoint = TimePoint(0);

    pub fn value(self) -> u32 {
        self.0
    }
}

impl From<u32> for TimePoint {
    fn from(value: u32) -> Self {
        TimePoint(value)
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An argument of a fluent or action: an object constant or a variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    /// Classifies an identifier: a leading uppercase letter marks a variable.
    pub fn from_ident(ident: &str) -> Term {
        if ident.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
            Term::Var(ident.to_string())
        } else {
            Term::Const(ident.to_string())
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Const(name) | Term::Var(name) => name,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

macro_rules! symbol_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name {
            pub name: String,
            pub args: Vec<Term>,
        }

        impl $name {
            pub fn new(name: impl Into<String>) -> Self {
                Self { name: name.into(), args: Vec::new() }
            }

            pub fn with_args(name: impl Into<String>, args: Vec<Term>) -> Self {
                Self { name: name.into(), args }
            }

            pub fn is_ground(&self) -> bool {
                self.args.iter().all(|arg| !arg.is_var())
            }

            pub fn arity(&self) -> usize {
                self.args.len()
            }

            pub fn vars(&self) -> impl Iterator<Item = &str> {
                self.args.iter().filter(|a| a.is_var()).map(Term::name)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.name)?;
                write_args(f, &self.args, ", ")
            }
        }
    };
}

symbol_type!(
    /// A fluent constant, possibly parameterised by object constants.
    Fluent
);
symbol_type!(
    /// An action constant, possibly parameterised by object constants.
    Action
);

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term], sep: &str) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, arg) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{arg}")?;
    }
    f.write_str(")")
}

/// The name used for a symbol in clause and query syntax: the surface name
/// with its first letter lower-cased (`TurnOff` becomes `turnOff`).
pub fn clause_name(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(first) => first.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Renders a fluent or action in clause syntax, e.g. `at(a,b)`.
pub fn clause_symbol(name: &str, args: &[Term]) -> String {
    let mut out = clause_name(name);
    if !args.is_empty() {
        out.push('(');
        for (i, arg) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(arg.name());
        }
        out.push(')');
    }
    out
}

/// A fluent or its negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FluentLiteral {
    pub fluent: Fluent,
    pub positive: bool,
}

impl FluentLiteral {
    pub fn pos(fluent: Fluent) -> Self {
        Self { fluent, positive: true }
    }

    pub fn neg(fluent: Fluent) -> Self {
        Self { fluent, positive: false }
    }

    pub fn complement(&self) -> Self {
        Self { fluent: self.fluent.clone(), positive: !self.positive }
    }
}

impl fmt::Display for FluentLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.fluent)
    }
}

fn write_literal_set(f: &mut fmt::Formatter<'_>, lits: &[FluentLiteral]) -> fmt::Result {
    f.write_str("{")?;
    for (i, lit) in lits.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{lit}")?;
    }
    f.write_str("}")
}

/// `A initiates F when C` (positive effect) or `A terminates F when C`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CProp {
    pub action: Action,
    pub effect: FluentLiteral,
    pub conditions: Vec<FluentLiteral>,
}

impl CProp {
    pub fn is_ground(&self) -> bool {
        self.action.is_ground()
            && self.effect.fluent.is_ground()
            && self.conditions.iter().all(|c| c.fluent.is_ground())
    }
}

impl fmt::Display for CProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = if self.effect.positive { "initiates" } else { "terminates" };
        write!(f, "{} {} {}", self.action, verb, self.effect.fluent)?;
        if !self.conditions.is_empty() {
            f.write_str(" when ")?;
            write_literal_set(f, &self.conditions)?;
        }
        f.write_str(".")
    }
}

/// `A happens-at T`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HProp {
    pub action: Action,
    pub time: TimePoint,
}

impl fmt::Display for HProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} happens-at {}.", self.action, self.time)
    }
}

/// `L holds-at T`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TProp {
    pub literal: FluentLiteral,
    pub time: TimePoint,
}

impl fmt::Display for TProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} holds-at {}.", self.literal, self.time)
    }
}

/// `L whenever C`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RProp {
    pub head: FluentLiteral,
    pub conditions: Vec<FluentLiteral>,
}

impl RProp {
    pub fn is_ground(&self) -> bool {
        self.head.fluent.is_ground() && self.conditions.iter().all(|c| c.fluent.is_ground())
    }
}

impl fmt::Display for RProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} whenever ", self.head)?;
        write_literal_set(f, &self.conditions)?;
        f.write_str(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Proposition {
    Causal(CProp),
    Happens(HProp),
    Holds(TProp),
    Ramification(RProp),
}

impl Proposition {
    pub fn is_ground(&self) -> bool {
        match self {
            Proposition::Causal(c) => c.is_ground(),
            Proposition::Happens(h) => h.action.is_ground(),
            Proposition::Holds(t) => t.literal.fluent.is_ground(),
            Proposition::Ramification(r) => r.is_ground(),
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proposition::Causal(p) => p.fmt(f),
            Proposition::Happens(p) => p.fmt(f),
            Proposition::Holds(p) => p.fmt(f),
            Proposition::Ramification(p) => p.fmt(f),
        }
    }
}

/// A declared fluent or action name together with its arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub name: String,
    pub arity: usize,
}

impl Signature {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Self { name: name.into(), arity }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    pub fluents: Vec<Signature>,
    pub actions: Vec<Signature>,
    pub constants: Vec<String>,
}

impl Vocabulary {
    pub fn has_fluent(&self, name: &str, arity: usize) -> bool {
        self.fluents.iter().any(|s| s.name == name && s.arity == arity)
    }

    pub fn has_action(&self, name: &str, arity: usize) -> bool {
        self.actions.iter().any(|s| s.name == name && s.arity == arity)
    }

    pub fn has_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    /// Finds the declared fluent name written as `name` in clause syntax.
    ///
    /// An exact match wins; otherwise the unique declaration whose clause name
    /// equals `name` is returned.
    pub fn resolve_fluent_name<'a>(&'a self, name: &'a str, arity: usize) -> Option<&'a str> {
        if self.has_fluent(name, arity) {
            return Some(name);
        }
        let mut found = self
            .fluents
            .iter()
            .filter(|s| s.arity == arity && clause_name(&s.name) == name);
        let first = found.next()?;
        if found.next().is_some() {
            return None;
        }
        Some(&first.name)
    }
}

/// An ordered collection of propositions over a vocabulary.
///
/// Identical h- and t-propositions collapse on insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DomainDescription {
    pub vocabulary: Vocabulary,
    propositions: Vec<Proposition>,
}

impl DomainDescription {
    pub fn new(vocabulary: Vocabulary) -> Self {
        Self { vocabulary, propositions: Vec::new() }
    }

    pub fn declare_fluent(&mut self, name: impl Into<String>, arity: usize) {
        let sig = Signature::new(name, arity);
        if !self.vocabulary.fluents.contains(&sig) {
            self.vocabulary.fluents.push(sig);
        }
    }

    pub fn declare_action(&mut self, name: impl Into<String>, arity: usize) {
        let sig = Signature::new(name, arity);
        if !self.vocabulary.actions.contains(&sig) {
            self.vocabulary.actions.push(sig);
        }
    }

    pub fn declare_constant(&mut self, name: impl Into<String>) {
        let name = name.into();
        if !self.vocabulary.constants.contains(&name) {
            self.vocabulary.constants.push(name);
        }
    }

    /// Appends a proposition; returns `false` if it was a duplicate
    /// h- or t-proposition and was dropped.
    pub fn push(&mut self, prop: Proposition) -> bool {
        let collapses = matches!(prop, Proposition::Happens(_) | Proposition::Holds(_));
        if collapses && self.propositions.contains(&prop) {
            return false;
        }
        self.propositions.push(prop);
        true
    }

    pub fn with(mut self, prop: Proposition) -> Self {
        self.push(prop);
        self
    }

    /// Removes the proposition at `index` (input order).
    pub fn remove(&mut self, index: usize) -> Proposition {
        self.propositions.remove(index)
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    pub fn is_empty(&self) -> bool {
        self.propositions.is_empty()
    }

    pub fn cprops(&self) -> impl Iterator<Item = &CProp> {
        self.propositions.iter().filter_map(|p| match p {
            Proposition::Causal(c) => Some(c),
            _ => None,
        })
    }

    pub fn hprops(&self) -> impl Iterator<Item = &HProp> {
        self.propositions.iter().filter_map(|p| match p {
            Proposition::Happens(h) => Some(h),
            _ => None,
        })
    }

    pub fn tprops(&self) -> impl Iterator<Item = &TProp> {
        self.propositions.iter().filter_map(|p| match p {
            Proposition::Holds(t) => Some(t),
            _ => None,
        })
    }

    pub fn rprops(&self) -> impl Iterator<Item = &RProp> {
        self.propositions.iter().filter_map(|p| match p {
            Proposition::Ramification(r) => Some(r),
            _ => None,
        })
    }

    /// Largest time point mentioned by an h- or t-proposition.
    pub fn max_time(&self) -> Option<TimePoint> {
        let h = self.hprops().map(|h| h.time);
        let t = self.tprops().map(|t| t.time);
        h.chain(t).max()
    }

    pub fn is_ground(&self) -> bool {
        self.propositions.iter().all(Proposition::is_ground)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_an_involution() {
        let lit = FluentLiteral::pos(Fluent::new("Running"));
        assert_eq!(lit.complement().complement(), lit);
        assert_ne!(lit.complement(), lit);
    }

    #[test]
    fn clause_names_lower_the_first_letter() {
        assert_eq!(clause_name("TurnOff"), "turnOff");
        assert_eq!(clause_name("petrol"), "petrol");
        assert_eq!(clause_symbol("At", &[Term::from_ident("a"), Term::from_ident("b")]), "at(a,b)");
    }

    #[test]
    fn duplicate_occurrences_collapse() {
        let mut d = DomainDescription::default();
        let h = Proposition::Happens(HProp { action: Action::new("Go"), time: TimePoint(3) });
        assert!(d.push(h.clone()));
        assert!(!d.push(h));
        assert_eq!(d.hprops().count(), 1);
    }

    #[test]
    fn rendering_matches_surface_syntax() {
        let c = CProp {
            action: Action::new("InjectB"),
            effect: FluentLiteral::pos(Fluent::new("Protected")),
            conditions: alloc::vec![FluentLiteral::neg(Fluent::new("TypeO"))],
        };
        assert_eq!(c.to_string(), "InjectB initiates Protected when {~TypeO}.");
        let c = CProp { conditions: Vec::new(), effect: c.effect.complement(), ..c };
        assert_eq!(c.to_string(), "InjectB terminates Protected.");
    }

    #[test]
    fn resolve_by_clause_name() {
        let mut d = DomainDescription::default();
        d.declare_fluent("Protected", 0);
        assert_eq!(d.vocabulary.resolve_fluent_name("protected", 0), Some("Protected"));
        assert_eq!(d.vocabulary.resolve_fluent_name("Protected", 0), Some("Protected"));
        assert_eq!(d.vocabulary.resolve_fluent_name("protected", 1), None);
        d.declare_fluent("protected", 0);
        assert_eq!(d.vocabulary.resolve_fluent_name("protected", 0), Some("protected"));
    }
}
