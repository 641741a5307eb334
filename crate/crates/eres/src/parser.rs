//! Surface syntax for domain descriptions and queries.
//!
//! Domains are sequences of `.`-terminated statements:
//!
//! ```text
//! fluent Running.             % declarations
//! action TurnOn.
//! const a.
//! TurnOn initiates Running when {Petrol}.
//! TurnOff terminates Running.
//! TurnOn happens-at 5.
//! ~Running holds-at 3.
//! ~Running whenever {~Petrol}.
//! ```
//!
//! Queries use clause syntax: `sceptical([holds(running,6)])`,
//! `credulous([neg(holds(running,3))])` or `credulous([holds(picture,3)],X)`.

use std::fmt::{self, Write as _};

use eres_core::argprog::HoldsLiteral;
use eres_core::engine::{Query, QueryMode};
use eres_core::{
    Action, CProp, DomainDescription, Fluent, FluentLiteral, HProp, Proposition, RProp, TProp, Term,
    TimePoint, Vocabulary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    /// Byte offsets into the input.
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(u32),
    HappensAt,
    HoldsAt,
    Dot,
    Comma,
    Tilde,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::HappensAt => f.write_str("`happens-at`"),
            Tok::HoldsAt => f.write_str("`holds-at`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&(start, c)) = chars.peek() {
        let span_at = |end: usize| SourceSpan { line, column: col, start, end };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '%' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        let single = match c {
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '~' => Some(Tok::Tilde),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((tok, span_at(start + 1)));
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                end = i + d.len_utf8();
                chars.next();
            }
            let digits = &text[start..end];
            let span = span_at(end);
            let n = digits.parse::<u32>().map_err(|_| ParseError {
                message: format!("time point `{digits}` is out of range"),
                span,
            })?;
            out.push((Tok::Number(n), span));
            col += end - start;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek().filter(|(_, d)| is_ident_char(*d)) {
                end = i + d.len_utf8();
                chars.next();
            }
            let word = &text[start..end];
            let rest = &text[end..];
            let keyword = match word {
                "happens" => Some(Tok::HappensAt),
                "holds" => Some(Tok::HoldsAt),
                _ => None,
            };
            let joined = rest.starts_with("-at") && !rest[3..].starts_with(is_ident_char);
            if let (Some(tok), true) = (keyword, joined) {
                for _ in 0..3 {
                    chars.next();
                }
                end += 3;
                out.push((tok, span_at(end)));
            } else {
                out.push((Tok::Ident(word.to_string()), span_at(end)));
            }
            col += text[start..end].chars().count();
            continue;
        }
        return Err(ParseError {
            message: format!("unexpected character `{c}`"),
            span: span_at(start + c.len_utf8()),
        });
    }
    let end = text.len();
    out.push((Tok::End, SourceSpan { line, column: col, start: end, end }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { message: message.into(), span: self.span() })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.unexpected(&tok.to_string())
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(wanted),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == word) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        match *self.peek() {
            Tok::Number(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("a time point"),
        }
    }

    /// `( arg, ... )`, if present.
    fn args(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        if !self.eat(&Tok::LParen) {
            return Ok(out);
        }
        loop {
            out.push(self.ident("an argument")?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn symbol(&mut self, wanted: &str) -> Result<(String, Vec<Term>), ParseError> {
        let name = self.ident(wanted)?;
        let args = self.args()?.iter().map(|a| Term::from_ident(a)).collect();
        Ok((name, args))
    }

    fn literal(&mut self) -> Result<FluentLiteral, ParseError> {
        let positive = !self.eat(&Tok::Tilde);
        let (name, args) = self.symbol("a fluent")?;
        Ok(FluentLiteral { fluent: Fluent::with_args(name, args), positive })
    }

    fn literal_set(&mut self) -> Result<Vec<FluentLiteral>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            out.push(self.literal()?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(out)
    }

    fn declaration(&mut self, d: &mut DomainDescription) -> Result<(), ParseError> {
        let (Tok::Ident(kind), _) = self.bump() else { unreachable!("checked by caller") };
        loop {
            let span = self.span();
            let name = self.ident("a name")?;
            let arity = self.args()?.len();
            match kind.as_str() {
                "fluent" => d.declare_fluent(name, arity),
                "action" => d.declare_action(name, arity),
                _ => {
                    if arity > 0 || Term::from_ident(&name).is_var() {
                        return Err(ParseError {
                            message: format!("`{name}` is not a valid object constant"),
                            span,
                        });
                    }
                    d.declare_constant(name);
                }
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Dot)
    }

    fn proposition(&mut self) -> Result<Proposition, ParseError> {
        if *self.peek() == Tok::Tilde {
            let literal = self.literal()?;
            return self.literal_statement(literal);
        }
        let (name, args) = self.symbol("a statement")?;
        let prop = if self.keyword("initiates") || self.keyword("terminates") {
            let Tok::Ident(verb) = &self.toks[self.pos - 1].0 else { unreachable!() };
            let positive = verb == "initiates";
            let (f, fargs) = self.symbol("a fluent")?;
            let conditions = if self.keyword("when") { self.literal_set()? } else { Vec::new() };
            Proposition::Causal(CProp {
                action: Action::with_args(name, args),
                effect: FluentLiteral { fluent: Fluent::with_args(f, fargs), positive },
                conditions,
            })
        } else if self.eat(&Tok::HappensAt) {
            let time = TimePoint(self.number()?);
            Proposition::Happens(HProp { action: Action::with_args(name, args), time })
        } else if matches!(self.peek(), Tok::HoldsAt) || matches!(self.peek(), Tok::Ident(w) if w == "whenever") {
            return self.literal_statement(FluentLiteral::pos(Fluent::with_args(name, args)));
        } else {
            return self.unexpected("`initiates`, `terminates`, `happens-at`, `holds-at` or `whenever`");
        };
        self.expect(Tok::Dot)?;
        Ok(prop)
    }

    fn literal_statement(&mut self, literal: FluentLiteral) -> Result<Proposition, ParseError> {
        let prop = if self.eat(&Tok::HoldsAt) {
            Proposition::Holds(TProp { literal, time: TimePoint(self.number()?) })
        } else if self.keyword("whenever") {
            Proposition::Ramification(RProp { head: literal, conditions: self.literal_set()? })
        } else {
            return self.unexpected("`holds-at` or `whenever`");
        };
        self.expect(Tok::Dot)?;
        Ok(prop)
    }

    fn query_literal(&mut self) -> Result<HoldsLiteral, ParseError> {
        let positive = !self.keyword("neg");
        if !positive {
            self.expect(Tok::LParen)?;
        }
        if !self.keyword("holds") {
            return self.unexpected("`holds(...)` or `neg(holds(...))`");
        }
        self.expect(Tok::LParen)?;
        let span = self.span();
        let name = self.ident("a fluent")?;
        let args = self.args()?;
        if let Some(var) = std::iter::once(&name).chain(&args).find(|a| Term::from_ident(a).is_var()) {
            return Err(ParseError { message: format!("query literal is not ground: `{var}` is a variable"), span });
        }
        self.expect(Tok::Comma)?;
        if let Tok::Ident(v) = self.peek() {
            return self.error(format!("query literal is not ground: `{v}` is a variable"));
        }
        let time = TimePoint(self.number()?);
        self.expect(Tok::RParen)?;
        if !positive {
            self.expect(Tok::RParen)?;
        }
        let fluent = Fluent::with_args(name, args.iter().map(|a| Term::from_ident(a)).collect());
        Ok(HoldsLiteral { fluent, positive, time })
    }
}

/// Parses a domain description. Symbols are not checked against the
/// declarations here; see [`eres_core::validate_domain`].
pub fn parse_domain(text: &str) -> Result<DomainDescription, ParseError> {
    let mut p = Parser::new(text)?;
    let mut d = DomainDescription::default();
    while *p.peek() != Tok::End {
        let is_decl = matches!(p.peek(), Tok::Ident(k) if k == "fluent" || k == "action" || k == "const")
            && matches!(p.peek_at(1), Tok::Ident(_));
        if is_decl {
            p.declaration(&mut d)?;
        } else {
            let prop = p.proposition()?;
            d.push(prop);
        }
    }
    Ok(d)
}

/// Parses `sceptical([...])`, `credulous([...])` or `credulous([...],X)`.
/// Fluent names stay as written; see [`resolve_query`].
pub fn parse_query(text: &str) -> Result<Query, ParseError> {
    let mut p = Parser::new(text)?;
    let span = p.span();
    let mode = match p.ident("`sceptical` or `credulous`")?.as_str() {
        "sceptical" => QueryMode::Sceptical,
        "credulous" => QueryMode::Credulous,
        other => {
            return Err(ParseError { message: format!("unknown query predicate `{other}`"), span });
        }
    };
    p.expect(Tok::LParen)?;
    p.expect(Tok::LBracket)?;
    let mut literals = Vec::new();
    if *p.peek() == Tok::RBracket {
        return p.error("goal list is empty");
    }
    loop {
        literals.push(p.query_literal()?);
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    p.expect(Tok::RBracket)?;
    let mut mode = mode;
    if p.eat(&Tok::Comma) {
        let span = p.span();
        let var = p.ident("an explanation variable")?;
        if mode != QueryMode::Credulous || !Term::from_ident(&var).is_var() {
            return Err(ParseError {
                message: "only `credulous` takes an explanation variable".to_string(),
                span,
            });
        }
        mode = QueryMode::Explain;
    }
    p.expect(Tok::RParen)?;
    p.eat(&Tok::Dot);
    p.expect(Tok::End)?;
    Ok(Query { mode, literals })
}

/// Maps clause-syntax fluent names (`protected`) to the declared ones
/// (`Protected`). Unresolvable names are left alone.
pub fn resolve_query(mut query: Query, vocabulary: &Vocabulary) -> Query {
    for l in &mut query.literals {
        if let Some(name) = vocabulary.resolve_fluent_name(&l.fluent.name, l.fluent.arity()) {
            l.fluent.name = name.to_string();
        }
    }
    query
}

/// Canonical text: declarations, a blank line, then the propositions in
/// input order.
pub fn print_domain(d: &DomainDescription) -> String {
    let mut out = String::new();
    let v = &d.vocabulary;
    let sig = |out: &mut String, kind: &str, name: &str, arity: usize| {
        let params: Vec<String> = (1..=arity).map(|i| format!("X{i}")).collect();
        if params.is_empty() {
            let _ = writeln!(out, "{kind} {name}.");
        } else {
            let _ = writeln!(out, "{kind} {name}({}).", params.join(", "));
        }
    };
    for s in &v.fluents {
        sig(&mut out, "fluent", &s.name, s.arity);
    }
    for s in &v.actions {
        sig(&mut out, "action", &s.name, s.arity);
    }
    for c in &v.constants {
        let _ = writeln!(out, "const {c}.");
    }
    if !out.is_empty() && !d.is_empty() {
        out.push('\n');
    }
    for p in d.propositions() {
        let _ = writeln!(out, "{p}");
    }
    out
}
