//! Small domains for unit tests, built without the surface parser.

use alloc::vec::Vec;

use crate::domain::*;

pub(crate) fn lit(s: &str) -> FluentLiteral {
    match s.strip_prefix('~') {
        Some(name) => FluentLiteral::neg(Fluent::new(name)),
        None => FluentLiteral::pos(Fluent::new(s)),
    }
}

fn lits(ss: &[&str]) -> Vec<FluentLiteral> {
    ss.iter().map(|s| lit(s)).collect()
}

pub(crate) struct Builder(pub DomainDescription);

impl Builder {
    pub fn new(fluents: &[&str], actions: &[&str]) -> Self {
        let mut d = DomainDescription::default();
        for f in fluents {
            d.declare_fluent(*f, 0);
        }
        for a in actions {
            d.declare_action(*a, 0);
        }
        Builder(d)
    }

    /// `effect` prefixed with `~` terminates.
    pub fn causes(mut self, action: &str, effect: &str, when: &[&str]) -> Self {
        self.0.push(Proposition::Causal(CProp {
            action: Action::new(action),
            effect: lit(effect),
            conditions: lits(when),
        }));
        self
    }

    pub fn happens(mut self, action: &str, t: u32) -> Self {
        self.0.push(Proposition::Happens(HProp { action: Action::new(action), time: TimePoint(t) }));
        self
    }

    pub fn holds(mut self, l: &str, t: u32) -> Self {
        self.0.push(Proposition::Holds(TProp { literal: lit(l), time: TimePoint(t) }));
        self
    }

    pub fn whenever(mut self, head: &str, when: &[&str]) -> Self {
        self.0.push(Proposition::Ramification(RProp { head: lit(head), conditions: lits(when) }));
        self
    }

    pub fn build(self) -> DomainDescription {
        self.0
    }
}

pub(crate) fn dv() -> DomainDescription {
    Builder::new(&["Protected", "TypeO"], &["InjectA", "InjectB"])
        .causes("InjectA", "Protected", &["TypeO"])
        .causes("InjectB", "Protected", &["~TypeO"])
        .happens("InjectA", 2)
        .happens("InjectB", 3)
        .build()
}

fn dp_builder(with_d3: bool) -> Builder {
    let b = Builder::new(&["Picture", "Loaded", "Digital"], &["Take"])
        .causes("Take", "Picture", &["Loaded"])
        .happens("Take", 2);
    let b = if with_d3 { b.holds("~Picture", 1) } else { b };
    b.holds("Picture", 3)
}

pub(crate) fn dp() -> DomainDescription {
    dp_builder(true).build()
}

pub(crate) fn dp_no3() -> DomainDescription {
    dp_builder(false).build()
}

pub(crate) fn dp5() -> DomainDescription {
    dp_builder(true).causes("Take", "Picture", &["Digital"]).build()
}

fn dc_builder() -> Builder {
    Builder::new(&["Running", "Petrol"], &["TurnOn", "TurnOff", "Empty", "JumpStart"])
        .causes("TurnOn", "Running", &["Petrol"])
        .causes("TurnOff", "~Running", &[])
        .causes("Empty", "~Petrol", &[])
        .whenever("~Running", &["~Petrol"])
        .holds("Running", 1)
        .happens("TurnOff", 2)
        .happens("TurnOn", 5)
        .happens("Empty", 8)
}

pub(crate) fn dc() -> DomainDescription {
    dc_builder().build()
}

pub(crate) fn dc_jumpstart() -> DomainDescription {
    dc_builder().causes("JumpStart", "Running", &[]).happens("JumpStart", 11).build()
}

pub(crate) fn di() -> DomainDescription {
    Builder::new(
        &["Infected", "TypeA", "TypeB", "Danger", "Allergic"],
        &["Expose", "InjectA"],
    )
    .causes("Expose", "Infected", &["TypeA"])
    .happens("Expose", 3)
    .holds("~Infected", 1)
    .holds("Infected", 6)
    .causes("Expose", "Infected", &["TypeB"])
    .causes("InjectA", "Danger", &["TypeA"])
    .causes("InjectA", "Danger", &["TypeB"])
    .happens("InjectA", 4)
    .whenever("Allergic", &["TypeA", "Infected"])
    .whenever("Allergic", &["TypeB"])
    .build()
}
