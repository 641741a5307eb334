//! The bundled example domains and their expected query results.

use std::fmt;

use eres_core::engine::Outcome;

use crate::parser::{parse_domain, parse_query, resolve_query};
use crate::reason::{self, Backend, Options};
use crate::Error;

pub const DOMAINS: &[(&str, &str)] = &[
    ("dv.e", include_str!("../corpus/dv.e")),
    ("dp.e", include_str!("../corpus/dp.e")),
    ("dp_no3.e", include_str!("../corpus/dp_no3.e")),
    ("dp5.e", include_str!("../corpus/dp5.e")),
    ("dc.e", include_str!("../corpus/dc.e")),
    ("dc_jumpstart.e", include_str!("../corpus/dc_jumpstart.e")),
    ("di.e", include_str!("../corpus/di.e")),
];

/// One golden per line: `<domain> <expected> <query>`, where the query is
/// `check` for a consistency test. Lines `X = [...]` list the expected
/// explanations of the golden above them.
pub const GOLDENS: &str = include_str!("../corpus/goldens.txt");

pub fn domain_text(name: &str) -> Option<&'static str> {
    DOMAINS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Succeeds,
    Fails,
    Consistent,
    Inconsistent,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Succeeds => "succeeds",
            Expected::Fails => "fails",
            Expected::Consistent => "consistent",
            Expected::Inconsistent => "inconsistent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Golden {
    pub line: usize,
    pub domain: String,
    pub expected: Expected,
    /// `None` for a consistency check.
    pub query: Option<String>,
    pub explanations: Vec<String>,
}

impl Golden {
    fn expected_text(&self) -> String {
        let mut out = self.expected.to_string();
        for x in &self.explanations {
            out.push_str(&format!("; X = {x}"));
        }
        out
    }
}

pub fn goldens() -> Vec<Golden> {
    parse_goldens(GOLDENS).expect("bundled goldens are well formed")
}

pub fn parse_goldens(text: &str) -> Result<Vec<Golden>, String> {
    let mut out: Vec<Golden> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(x) = line.strip_prefix("X = ") {
            let last = out.last_mut().ok_or_else(|| format!("line {}: explanation without a query", i + 1))?;
            last.explanations.push(x.to_string());
            continue;
        }
        let mut parts = line.splitn(3, ' ');
        let (Some(domain), Some(expected), Some(query)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!("line {}: expected `<domain> <expected> <query>`", i + 1));
        };
        let expected = match expected {
            "succeeds" => Expected::Succeeds,
            "fails" => Expected::Fails,
            "consistent" => Expected::Consistent,
            "inconsistent" => Expected::Inconsistent,
            other => return Err(format!("line {}: unknown verdict `{other}`", i + 1)),
        };
        let query = (query != "check").then(|| query.trim().to_string());
        out.push(Golden { line: i + 1, domain: domain.to_string(), expected, query, explanations: Vec::new() });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenResult {
    pub golden: Golden,
    pub actual: String,
    pub passed: bool,
}

/// Runs one golden. With the oracle backend, explanation queries are
/// checked as plain credulous queries.
pub fn run_golden(g: &Golden, backend: Backend) -> Result<GoldenResult, Error> {
    let text = domain_text(&g.domain).ok_or_else(|| Error::Usage(format!("no bundled domain `{}`", g.domain)))?;
    let d = parse_domain(text).map_err(|source| Error::Parse { path: g.domain.clone().into(), source })?;
    let opts = Options { backend, ..Options::default() };
    let (actual, passed) = match &g.query {
        None => {
            let ok = reason::check(&d, &opts)?;
            let actual = if ok { Expected::Consistent } else { Expected::Inconsistent };
            (actual.to_string(), actual == g.expected)
        }
        Some(q) => {
            let mut query = resolve_query(parse_query(q).map_err(|source| Error::Query { source })?, &d.vocabulary);
            let explaining = backend == Backend::Argumentation;
            if !explaining && query.mode == eres_core::engine::QueryMode::Explain {
                query.mode = eres_core::engine::QueryMode::Credulous;
            }
            let v = reason::answer(&d, &query, &opts)?;
            let mut actual = v.outcome.to_string();
            let xs: Vec<String> = v.explanations.iter().map(|x| x.to_string()).collect();
            for x in &xs {
                actual.push_str(&format!("; X = {x}"));
            }
            let want = if g.expected == Expected::Succeeds { Outcome::Succeeds } else { Outcome::Fails };
            let passed = v.outcome == want && (!explaining || g.explanations.is_empty() || xs == g.explanations);
            (actual, passed)
        }
    };
    Ok(GoldenResult { golden: g.clone(), actual, passed })
}

impl fmt::Display for GoldenResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.golden;
        write!(
            f,
            "{} {} {}: expected {}, got {}",
            if self.passed { "ok  " } else { "FAIL" },
            g.domain,
            g.query.as_deref().unwrap_or("check"),
            g.expected_text(),
            self.actual
        )
    }
}
