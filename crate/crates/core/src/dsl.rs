//! The `.cm` input language: a lexer, an LL(1) parser producing a
//! [`Document`] with source spans, a canonical pretty-printer, and
//! elaboration of a document into rings, ideals, modules and pairs.
//!
//! ```text
//! ring R = poly(x, y)/(x*y) over GF(32003);
//! ideal I = (x);
//! module M = quotient(R, I);
//! module N = coker(R, [[x]], shifts=[(0, 1)]);
//! pair P = (M, N) wrt I;
//! expect P.cd = infinite [paper];
//! ```
//!
//! Polynomials are kept as raw text until elaboration so that homogeneity
//! errors can point at the offending entry.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graded::{Elem, FreeModule};
use crate::groebner::{syzygies, Ideal};
use crate::homological::{ext, hom_module};
use crate::local_cohomology::deficiency;
use crate::module::GradedModule;
use crate::monomial::{Degree, OrderKind};
use crate::pair::present_over;
use crate::poly::Poly;
use crate::ring::{Grading, Ring, RingRef, RingSpec};

/// A source location. Spans never take part in equality, so a document and
/// its pretty-printed reparse compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Span {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

/// Polynomial source text, trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyText {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DegreeLit {
    Fine(Vec<i64>),
    Coarse(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdealExpr {
    Gens(Vec<PolyText>),
    Maximal(Name),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleExpr {
    /// Rows are generators, columns are relations.
    Coker { ring: Name, matrix: Vec<Vec<PolyText>>, shifts: Option<Vec<DegreeLit>> },
    /// The submodule of `⊕ R(-shifts)` generated by the matrix columns.
    Image { ring: Name, matrix: Vec<Vec<PolyText>>, shifts: Option<Vec<DegreeLit>> },
    Free { ring: Name, shifts: Option<Vec<DegreeLit>> },
    /// `M / I M`.
    Quotient { base: Name, ideal: Name },
    Shift { base: Name, by: DegreeLit },
    Ext { index: usize, m: Name, n: Name },
    Hom { m: Name, n: Name },
    Tensor { m: Name, n: Name },
    Deficiency { q: usize, n: Name },
    ChangeRing { m: Name, ring: Name },
    IdealModule { ideal: Name },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Paper,
    Derived,
    Trivial,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Paper => "paper",
            Tag::Derived => "derived",
            Tag::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    /// `infinite`, `no`, `yes(2)`, `at_least(3)`, `true`, ...
    Word(String, Option<i64>),
    /// A set of monomial primes, each a list of variable names.
    Primes(Vec<Vec<Name>>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Word(w, None) => write!(f, "{w}"),
            Value::Word(w, Some(n)) => write!(f, "{w}({n})"),
            Value::Primes(ps) => {
                let items: Vec<String> = ps
                    .iter()
                    .map(|p| match p.is_empty() {
                        true => "(0)".to_string(),
                        false => format!("({})", p.iter().map(|v| v.text.as_str()).collect::<Vec<_>>().join(", ")),
                    })
                    .collect();
                write!(f, "{{{}}}", items.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Ring {
        name: Name,
        vars: Vec<Name>,
        relations: Vec<PolyText>,
        characteristic: Option<u32>,
        weights: Option<Vec<u32>>,
        order: Option<Name>,
    },
    Ideal { name: Name, expr: IdealExpr, ring: Option<Name> },
    Module { name: Name, expr: ModuleExpr },
    Pair { name: Name, m: Name, n: Name, ideal: Name, using: Option<Name> },
    Expect { subject: Name, quantity: Name, value: Value, tag: Tag },
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Document {
    pub decls: Vec<Decl>,
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' || (c == b'/' && bytes.get(i + 1) == Some(&b'/')) {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let column = src[line_start..i].chars().count() + 1;
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse::<i64>().map_err(|_| Error::Parse {
                line,
                column,
                message: "integer literal out of range".into(),
            })?;
            Tok::Int(n)
        } else if b"()[]{},;=/*+-^.".contains(&c) {
            i += 1;
            Tok::Punct(c as char)
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(Error::Parse { line, column, message: format!("unexpected character `{ch}`") });
        };
        out.push(Token { tok, span: Span { start, end: i, line, column } });
    }
    let column = src[line_start..].chars().count() + 1;
    out.push(Token { tok: Tok::Eof, span: Span { start: src.len(), end: src.len(), line, column } });
    Ok(out)
}

// ---------------------------------------------------------------- parser

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.span().error(format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn is_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn punct(&mut self, c: char) -> Result<()> {
        if self.is_punct(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn keyword(&mut self, w: &str) -> Result<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn name(&mut self) -> Result<Name> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let span = self.bump().span;
                Ok(Name { text, span })
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn uint(&mut self) -> Result<i64> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        if self.is_punct('-') {
            self.bump();
            return Ok(-self.uint()?);
        }
        self.uint()
    }

    /// Comma-separated items up to (not including) `close`.
    fn list<T>(&mut self, close: char, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = Vec::new();
        if self.is_punct(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.is_punct(',') {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    /// Raw text of one polynomial, ending before a top-level `,`, `)`, `]`
    /// or `;`.
    fn poly(&mut self) -> Result<PolyText> {
        let first = self.span();
        let mut last = first;
        let mut depth = 0usize;
        let mut any = false;
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Punct(',' | ']' | ';') if depth == 0 => break,
                Tok::Punct(')') if depth == 0 => break,
                Tok::Punct('(') => depth += 1,
                Tok::Punct(')') => depth -= 1,
                Tok::Punct('[' | '{' | '}' | '=') => return Err(self.unexpected("a polynomial")),
                _ => {}
            }
            last = self.bump().span;
            any = true;
        }
        if !any {
            return Err(self.unexpected("a polynomial"));
        }
        let span = Span { start: first.start, end: last.end, line: first.line, column: first.column };
        Ok(PolyText { text: self.src[span.start..span.end].trim().to_string(), span })
    }

    fn degree(&mut self) -> Result<DegreeLit> {
        if self.is_punct('(') {
            self.bump();
            let v = self.list(')', |p| p.int())?;
            self.punct(')')?;
            Ok(DegreeLit::Fine(v))
        } else {
            Ok(DegreeLit::Coarse(self.int()?))
        }
    }

    fn degrees(&mut self) -> Result<Vec<DegreeLit>> {
        self.punct('[')?;
        let v = self.list(']', |p| p.degree())?;
        self.punct(']')?;
        Ok(v)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<PolyText>>> {
        self.punct('[')?;
        let rows = self.list(']', |p| {
            p.punct('[')?;
            let row = p.list(']', |p| p.poly())?;
            p.punct(']')?;
            Ok(row)
        })?;
        self.punct(']')?;
        Ok(rows)
    }

    fn opt_shifts(&mut self) -> Result<Option<Vec<DegreeLit>>> {
        if self.is_punct(',') {
            self.bump();
            self.keyword("shifts")?;
            self.punct('=')?;
            return Ok(Some(self.degrees()?));
        }
        Ok(None)
    }

    fn document(&mut self) -> Result<Document> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(Document { decls })
    }

    fn decl(&mut self) -> Result<Decl> {
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("a declaration")),
        };
        let d = match kw.as_str() {
            "ring" => self.ring()?,
            "ideal" => self.ideal()?,
            "module" => {
                self.bump();
                let name = self.name()?;
                self.punct('=')?;
                Decl::Module { name, expr: self.module_expr()? }
            }
            "pair" => {
                self.bump();
                let name = self.name()?;
                self.punct('=')?;
                self.punct('(')?;
                let m = self.name()?;
                self.punct(',')?;
                let n = self.name()?;
                self.punct(')')?;
                self.keyword("wrt")?;
                let ideal = self.name()?;
                let using = if self.is_word("using") {
                    self.bump();
                    Some(self.name()?)
                } else {
                    None
                };
                Decl::Pair { name, m, n, ideal, using }
            }
            "expect" => self.expect()?,
            _ => return Err(self.unexpected("`ring`, `ideal`, `module`, `pair` or `expect`")),
        };
        self.punct(';')?;
        Ok(d)
    }

    fn ring(&mut self) -> Result<Decl> {
        self.bump();
        let name = self.name()?;
        self.punct('=')?;
        self.keyword("poly")?;
        self.punct('(')?;
        let vars = self.list(')', |p| p.name())?;
        self.punct(')')?;
        let mut relations = Vec::new();
        if self.is_punct('/') {
            self.bump();
            self.punct('(')?;
            relations = self.list(')', |p| p.poly())?;
            self.punct(')')?;
        }
        let mut characteristic = None;
        if self.is_word("over") {
            self.bump();
            self.keyword("GF")?;
            self.punct('(')?;
            let span = self.span();
            let p = self.uint()?;
            characteristic = Some(u32::try_from(p).map_err(|_| span.error("characteristic out of range"))?);
            self.punct(')')?;
        }
        let mut weights = None;
        if self.is_word("weights") {
            self.bump();
            self.punct('(')?;
            let span = self.span();
            let w = self.list(')', |p| p.uint())?;
            self.punct(')')?;
            let w = w.into_iter().map(u32::try_from).collect::<std::result::Result<Vec<_>, _>>();
            weights = Some(w.map_err(|_| span.error("weight out of range"))?);
        }
        let mut order = None;
        if self.is_word("order") {
            self.bump();
            order = Some(self.name()?);
        }
        Ok(Decl::Ring { name, vars, relations, characteristic, weights, order })
    }

    fn ideal(&mut self) -> Result<Decl> {
        self.bump();
        let name = self.name()?;
        self.punct('=')?;
        let expr = if self.is_word("maximal") {
            self.bump();
            self.punct('(')?;
            let r = self.name()?;
            self.punct(')')?;
            IdealExpr::Maximal(r)
        } else {
            self.punct('(')?;
            let gens = self.list(')', |p| p.poly())?;
            self.punct(')')?;
            IdealExpr::Gens(gens)
        };
        let ring = if self.is_word("in") {
            self.bump();
            Some(self.name()?)
        } else {
            None
        };
        Ok(Decl::Ideal { name, expr, ring })
    }

    fn module_expr(&mut self) -> Result<ModuleExpr> {
        let head = self.name()?;
        self.punct('(')?;
        let e = match head.text.as_str() {
            "coker" | "image" => {
                let ring = self.name()?;
                self.punct(',')?;
                let matrix = self.matrix()?;
                let shifts = self.opt_shifts()?;
                if head.text == "coker" {
                    ModuleExpr::Coker { ring, matrix, shifts }
                } else {
                    ModuleExpr::Image { ring, matrix, shifts }
                }
            }
            "free" => {
                let ring = self.name()?;
                let shifts = if self.is_punct(',') {
                    self.bump();
                    Some(self.degrees()?)
                } else {
                    None
                };
                ModuleExpr::Free { ring, shifts }
            }
            "quotient" => {
                let base = self.name()?;
                self.punct(',')?;
                ModuleExpr::Quotient { base, ideal: self.name()? }
            }
            "shift" => {
                let base = self.name()?;
                self.punct(',')?;
                ModuleExpr::Shift { base, by: self.degree()? }
            }
            "ext" | "deficiency" => {
                let span = self.span();
                let k = usize::try_from(self.uint()?).map_err(|_| span.error("index out of range"))?;
                self.punct(',')?;
                let a = self.name()?;
                if head.text == "ext" {
                    self.punct(',')?;
                    ModuleExpr::Ext { index: k, m: a, n: self.name()? }
                } else {
                    ModuleExpr::Deficiency { q: k, n: a }
                }
            }
            "hom" | "tensor" => {
                let m = self.name()?;
                self.punct(',')?;
                let n = self.name()?;
                if head.text == "hom" {
                    ModuleExpr::Hom { m, n }
                } else {
                    ModuleExpr::Tensor { m, n }
                }
            }
            "change_ring" => {
                let m = self.name()?;
                self.punct(',')?;
                ModuleExpr::ChangeRing { m, ring: self.name()? }
            }
            "ideal_module" => ModuleExpr::IdealModule { ideal: self.name()? },
            other => return Err(head.span.error(format!("unknown module constructor `{other}`"))),
        };
        self.punct(')')?;
        Ok(e)
    }

    fn expect(&mut self) -> Result<Decl> {
        self.bump();
        let subject = self.name()?;
        self.punct('.')?;
        let quantity = self.name()?;
        self.punct('=')?;
        let value = match self.peek().clone() {
            Tok::Int(_) | Tok::Punct('-') => Value::Int(self.int()?),
            Tok::Ident(w) => {
                self.bump();
                let arg = if self.is_punct('(') {
                    self.bump();
                    let n = self.int()?;
                    self.punct(')')?;
                    Some(n)
                } else {
                    None
                };
                Value::Word(w, arg)
            }
            Tok::Punct('{') => {
                self.bump();
                let primes = self.list('}', |p| {
                    p.punct('(')?;
                    // `(0)` is the zero ideal.
                    if matches!(p.peek(), Tok::Int(0)) {
                        p.bump();
                        p.punct(')')?;
                        return Ok(Vec::new());
                    }
                    let vs = p.list(')', |p| p.name())?;
                    p.punct(')')?;
                    Ok(vs)
                })?;
                self.punct('}')?;
                Value::Primes(primes)
            }
            _ => return Err(self.unexpected("a value")),
        };
        self.punct('[')?;
        let tag_name = self.name()?;
        let tag = match tag_name.text.as_str() {
            "paper" => Tag::Paper,
            "derived" => Tag::Derived,
            "trivial" => Tag::Trivial,
            other => return Err(tag_name.span.error(format!("unknown tag `{other}`, expected paper, derived or trivial"))),
        };
        self.punct(']')?;
        Ok(Decl::Expect { subject, quantity, value, tag })
    }
}

pub fn parse(src: &str) -> Result<Document> {
    let toks = lex(src)?;
    Parser { src, toks, pos: 0 }.document()
}

// ---------------------------------------------------------------- printer

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

fn print_degree(d: &DegreeLit) -> String {
    match d {
        DegreeLit::Fine(v) => format!("({})", join(v, |x| x.to_string())),
        DegreeLit::Coarse(x) => x.to_string(),
    }
}

fn print_matrix(m: &[Vec<PolyText>]) -> String {
    format!("[{}]", join(m, |row| format!("[{}]", join(row, |p| p.text.clone()))))
}

fn print_shifts(s: &Option<Vec<DegreeLit>>) -> String {
    match s {
        Some(v) => format!(", shifts=[{}]", join(v, print_degree)),
        None => String::new(),
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Coker { ring, matrix, shifts } => {
                write!(f, "coker({}, {}{})", ring.text, print_matrix(matrix), print_shifts(shifts))
            }
            ModuleExpr::Image { ring, matrix, shifts } => {
                write!(f, "image({}, {}{})", ring.text, print_matrix(matrix), print_shifts(shifts))
            }
            ModuleExpr::Free { ring, shifts: None } => write!(f, "free({})", ring.text),
            ModuleExpr::Free { ring, shifts: Some(s) } => {
                write!(f, "free({}, [{}])", ring.text, join(s, print_degree))
            }
            ModuleExpr::Quotient { base, ideal } => write!(f, "quotient({}, {})", base.text, ideal.text),
            ModuleExpr::Shift { base, by } => write!(f, "shift({}, {})", base.text, print_degree(by)),
            ModuleExpr::Ext { index, m, n } => write!(f, "ext({index}, {}, {})", m.text, n.text),
            ModuleExpr::Hom { m, n } => write!(f, "hom({}, {})", m.text, n.text),
            ModuleExpr::Tensor { m, n } => write!(f, "tensor({}, {})", m.text, n.text),
            ModuleExpr::Deficiency { q, n } => write!(f, "deficiency({q}, {})", n.text),
            ModuleExpr::ChangeRing { m, ring } => write!(f, "change_ring({}, {})", m.text, ring.text),
            ModuleExpr::IdealModule { ideal } => write!(f, "ideal_module({})", ideal.text),
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Ring { name, vars, relations, characteristic, weights, order } => {
                write!(f, "ring {} = poly({})", name.text, join(vars, |v| v.text.clone()))?;
                if !relations.is_empty() {
                    write!(f, "/({})", join(relations, |p| p.text.clone()))?;
                }
                if let Some(p) = characteristic {
                    write!(f, " over GF({p})")?;
                }
                if let Some(w) = weights {
                    write!(f, " weights ({})", join(w, |x| x.to_string()))?;
                }
                if let Some(o) = order {
                    write!(f, " order {}", o.text)?;
                }
            }
            Decl::Ideal { name, expr, ring } => {
                match expr {
                    IdealExpr::Gens(g) => write!(f, "ideal {} = ({})", name.text, join(g, |p| p.text.clone()))?,
                    IdealExpr::Maximal(r) => write!(f, "ideal {} = maximal({})", name.text, r.text)?,
                }
                if let Some(r) = ring {
                    write!(f, " in {}", r.text)?;
                }
            }
            Decl::Module { name, expr } => write!(f, "module {} = {expr}", name.text)?,
            Decl::Pair { name, m, n, ideal, using } => {
                write!(f, "pair {} = ({}, {}) wrt {}", name.text, m.text, n.text, ideal.text)?;
                if let Some(c) = using {
                    write!(f, " using {}", c.text)?;
                }
            }
            Decl::Expect { subject, quantity, value, tag } => {
                write!(f, "expect {}.{} = {value} [{tag}]", subject.text, quantity.text)?
            }
        }
        f.write_char(';')
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- elaboration

#[derive(Clone, Debug)]
pub struct PairDef {
    pub name: String,
    pub ideal_name: String,
    pub m_name: String,
    pub n_name: String,
    pub c_name: Option<String>,
    pub ideal: Ideal,
    pub m: GradedModule,
    pub n: GradedModule,
    pub c: Option<GradedModule>,
}

#[derive(Clone, Debug)]
pub struct ExpectDef {
    pub subject: String,
    pub quantity: String,
    pub value: Value,
    pub tag: Tag,
    pub line: usize,
}

/// The objects a document defines, by name.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub rings: BTreeMap<String, RingRef>,
    pub ideals: BTreeMap<String, Ideal>,
    pub modules: BTreeMap<String, GradedModule>,
    pub pairs: Vec<PairDef>,
    pub expectations: Vec<ExpectDef>,
    last_ring: Option<String>,
}

impl Env {
    fn taken(&self, n: &Name) -> Result<()> {
        let used = self.rings.contains_key(&n.text)
            || self.ideals.contains_key(&n.text)
            || self.modules.contains_key(&n.text)
            || self.pairs.iter().any(|p| p.name == n.text);
        if used {
            return Err(n.span.error(format!("`{}` is already defined", n.text)));
        }
        Ok(())
    }

    fn ring(&self, n: &Name) -> Result<RingRef> {
        self.rings.get(&n.text).cloned().ok_or_else(|| n.span.error(format!("unresolved ring `{}`", n.text)))
    }

    fn ideal(&self, n: &Name) -> Result<Ideal> {
        self.ideals.get(&n.text).cloned().ok_or_else(|| n.span.error(format!("unresolved ideal `{}`", n.text)))
    }

    /// A module name, or a ring name standing for the ring as a module.
    pub fn module(&self, n: &Name) -> Result<GradedModule> {
        if let Some(m) = self.modules.get(&n.text) {
            return Ok(m.clone());
        }
        if let Some(r) = self.rings.get(&n.text) {
            return Ok(GradedModule::ring_module(r));
        }
        Err(n.span.error(format!("unresolved module `{}`", n.text)))
    }

    pub fn module_named(&self, name: &str) -> Option<GradedModule> {
        self.module(&Name { text: name.to_string(), span: Span::default() }).ok()
    }

    pub fn pair(&self, name: &str) -> Option<&PairDef> {
        self.pairs.iter().find(|p| p.name == name)
    }
}

fn same_ring(a: &RingRef, b: &RingRef, at: &Span) -> Result<()> {
    if a != b {
        return Err(at.error("objects live over different rings"));
    }
    Ok(())
}

fn parse_poly_at(ring: &RingRef, p: &PolyText) -> Result<Poly> {
    crate::polyparse::parse_poly(&ring.poly, &p.text).map_err(|e| {
        let mut s = p.span;
        s.column += e.offset;
        s.error(format!("in polynomial `{}`: {}", p.text, e.message))
    })
}

fn homogeneous_at(ring: &RingRef, p: &PolyText) -> Result<Poly> {
    let f = parse_poly_at(ring, p)?;
    if !f.is_zero() && ring.poly_degree(&f).is_none() {
        return Err(p.span.error(format!("`{}` is not homogeneous", p.text)));
    }
    Ok(f)
}

fn degree_at(ring: &RingRef, d: &DegreeLit, at: &Span) -> Result<Degree> {
    let v: Vec<i64> = match d {
        DegreeLit::Fine(v) => v.clone(),
        DegreeLit::Coarse(x) => vec![*x],
    };
    let fine = ring.grading == Grading::Fine;
    if matches!(d, DegreeLit::Fine(_)) != fine || v.len() != ring.degree_len() {
        let want = if fine { format!("a {}-tuple", ring.degree_len()) } else { "an integer".to_string() };
        return Err(at.error(format!("degree {} should be {want} for this ring", print_degree(d))));
    }
    let v = v.into_iter().map(i32::try_from).collect::<std::result::Result<Vec<_>, _>>();
    Ok(Degree(v.map_err(|_| at.error("degree out of range"))?))
}

fn shifts_at(ring: &RingRef, s: &Option<Vec<DegreeLit>>, count: usize, at: &Span) -> Result<Vec<Degree>> {
    match s {
        None => Ok(vec![ring.zero_degree(); count]),
        Some(v) => {
            if v.len() != count {
                return Err(at.error(format!("{} shifts given for {count} generators", v.len())));
            }
            v.iter().map(|d| degree_at(ring, d, at)).collect()
        }
    }
}

/// Matrix entries as polynomials, checked homogeneous one by one.
fn matrix_at(ring: &RingRef, m: &[Vec<PolyText>], at: &Span) -> Result<Vec<Vec<Poly>>> {
    let width = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != width) {
        return Err(at.error("matrix rows have different lengths"));
    }
    m.iter().map(|row| row.iter().map(|p| homogeneous_at(ring, p)).collect()).collect()
}

fn columns(m: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let width = m.first().map_or(0, |r| r.len());
    (0..width).map(|k| m.iter().map(|row| row[k].clone()).collect()).collect()
}

fn column_error(e: Error, matrix: &[Vec<PolyText>], at: &Span) -> Error {
    match e {
        Error::InhomogeneousColumn { column, detail } => {
            let span = matrix.iter().find_map(|row| row.get(column)).map_or(*at, |p| p.span);
            span.error(format!("column {column} is not homogeneous for the given shifts: {detail}"))
        }
        other => at.error(other.to_string()),
    }
}

fn elab_module(env: &Env, e: &ModuleExpr, at: &Span) -> Result<GradedModule> {
    let wrap = |r: Result<GradedModule>| r.map_err(|err| at.error(err.to_string()));
    match e {
        ModuleExpr::Coker { ring, matrix, shifts } => {
            let r = env.ring(ring)?;
            let m = matrix_at(&r, matrix, at)?;
            let shifts = shifts_at(&r, shifts, m.len(), at)?;
            GradedModule::new(r, shifts, columns(&m)).map_err(|err| column_error(err, matrix, at))
        }
        ModuleExpr::Image { ring, matrix, shifts } => {
            let r = env.ring(ring)?;
            let m = matrix_at(&r, matrix, at)?;
            let shifts = shifts_at(&r, shifts, m.len(), at)?;
            let target = FreeModule::new(r.clone(), shifts);
            let mut gens = Vec::new();
            for (k, col) in columns(&m).into_iter().enumerate() {
                let col = target.reduce(&col);
                if FreeModule::is_zero(&col) {
                    continue;
                }
                let elem = target.elem(col.clone()).ok_or_else(|| {
                    let detail = col.iter().map(|p| r.poly.format(p)).collect::<Vec<_>>().join(", ");
                    column_error(Error::InhomogeneousColumn { column: k, detail }, matrix, at)
                })?;
                gens.push(elem);
            }
            let rels = syzygies(&target, &gens);
            let shifts = gens.iter().map(|g: &Elem| g.deg.clone()).collect();
            Ok(GradedModule::from_elems(r, shifts, rels).prune().module)
        }
        ModuleExpr::Free { ring, shifts } => {
            let r = env.ring(ring)?;
            let count = shifts.as_ref().map_or(1, |s| s.len());
            let shifts = shifts_at(&r, shifts, count, at)?;
            Ok(GradedModule::free(r, shifts))
        }
        ModuleExpr::Quotient { base, ideal } => {
            let m = env.module(base)?;
            let i = env.ideal(ideal)?;
            same_ring(&m.ring, &i.ring, &ideal.span)?;
            Ok(m.quotient_by(&i.gens))
        }
        ModuleExpr::Shift { base, by } => {
            let m = env.module(base)?;
            let d = degree_at(&m.ring, by, at)?;
            Ok(m.shift(&d))
        }
        ModuleExpr::Ext { index, m, n } => {
            let (a, b) = (env.module(m)?, env.module(n)?);
            same_ring(&a.ring, &b.ring, &n.span)?;
            wrap(ext(*index, &a, &b).and_then(|s| present_over(&s, &a.ring)))
        }
        ModuleExpr::Hom { m, n } => {
            let (a, b) = (env.module(m)?, env.module(n)?);
            same_ring(&a.ring, &b.ring, &n.span)?;
            wrap(hom_module(&a, &b).and_then(|s| present_over(&s, &a.ring)))
        }
        ModuleExpr::Tensor { m, n } => {
            let (a, b) = (env.module(m)?, env.module(n)?);
            same_ring(&a.ring, &b.ring, &n.span)?;
            Ok(a.tensor(&b).prune().module)
        }
        ModuleExpr::Deficiency { q, n } => {
            let b = env.module(n)?;
            wrap(deficiency(*q, &b).and_then(|k| present_over(&k.module, &b.ring)))
        }
        ModuleExpr::ChangeRing { m, ring } => {
            let a = env.module(m)?;
            let r = env.ring(ring)?;
            wrap(a.change_ring(&r))
        }
        ModuleExpr::IdealModule { ideal } => Ok(env.ideal(ideal)?.as_module()),
    }
}

fn elab_ring(d: &Decl) -> Result<RingRef> {
    let Decl::Ring { name, vars, relations, characteristic, weights, order } = d else { unreachable!() };
    let names: Vec<String> = vars.iter().map(|v| v.text.clone()).collect();
    let order_kind = match order.as_ref().map(|o| o.text.as_str()) {
        None | Some("grevlex") => OrderKind::Grevlex,
        Some("lex") => OrderKind::Lex,
        Some(other) => {
            return Err(order.as_ref().unwrap().span.error(format!("unknown order `{other}`, expected grevlex or lex")))
        }
    };
    let grading = match weights {
        Some(w) => Grading::Coarse(w.clone()),
        None => Grading::Fine,
    };
    let characteristic = characteristic.unwrap_or(crate::field::DEFAULT_CHARACTERISTIC);
    let bare = Ring::new(RingSpec {
        names: names.clone(),
        characteristic,
        order: order_kind,
        grading: grading.clone(),
        relations: vec![],
    })
    .map_err(|e| name.span.error(e.to_string()))?;
    let mut rels = Vec::new();
    for r in relations {
        let f = parse_poly_at(&bare, r)?;
        if !f.is_zero() && bare.poly_degree(&f).is_none() {
            return Err(r.span.error(format!("relation `{}` is not homogeneous", r.text)));
        }
        if grading == Grading::Fine && !f.is_monomial() && !f.is_zero() {
            return Err(r.span.error(format!(
                "relation `{}` is not a monomial; use `weights (...)` for a coarse grading",
                r.text
            )));
        }
        rels.push(f);
    }
    Ring::new(RingSpec { names, characteristic, order: order_kind, grading, relations: rels })
        .map_err(|e| name.span.error(e.to_string()))
}

/// Resolves and type-checks every declaration in order.
pub fn elaborate(doc: &Document) -> Result<Env> {
    let mut env = Env::default();
    for d in &doc.decls {
        match d {
            Decl::Ring { name, .. } => {
                env.taken(name)?;
                let r = elab_ring(d)?;
                env.rings.insert(name.text.clone(), r);
                env.last_ring = Some(name.text.clone());
            }
            Decl::Ideal { name, expr, ring } => {
                env.taken(name)?;
                let ideal = match expr {
                    IdealExpr::Maximal(r) => Ideal::maximal(&env.ring(r)?),
                    IdealExpr::Gens(gens) => {
                        let r = match ring {
                            Some(r) => env.ring(r)?,
                            None => {
                                let last = env.last_ring.clone().ok_or_else(|| name.span.error("no ring declared yet"))?;
                                env.rings[&last].clone()
                            }
                        };
                        let ps = gens.iter().map(|g| homogeneous_at(&r, g)).collect::<Result<Vec<_>>>()?;
                        Ideal::new(&r, ps).map_err(|e| name.span.error(e.to_string()))?
                    }
                };
                env.ideals.insert(name.text.clone(), ideal);
            }
            Decl::Module { name, expr } => {
                env.taken(name)?;
                let m = elab_module(&env, expr, &name.span)?;
                env.modules.insert(name.text.clone(), m);
            }
            Decl::Pair { name, m, n, ideal, using } => {
                env.taken(name)?;
                let i = env.ideal(ideal)?;
                let (mm, nn) = (env.module(m)?, env.module(n)?);
                same_ring(&mm.ring, &i.ring, &m.span)?;
                same_ring(&nn.ring, &i.ring, &n.span)?;
                let c = match using {
                    Some(c) => {
                        let cm = env.module(c)?;
                        same_ring(&cm.ring, &i.ring, &c.span)?;
                        Some(cm)
                    }
                    None => None,
                };
                env.pairs.push(PairDef {
                    name: name.text.clone(),
                    ideal_name: ideal.text.clone(),
                    m_name: m.text.clone(),
                    n_name: n.text.clone(),
                    c_name: using.as_ref().map(|c| c.text.clone()),
                    ideal: i,
                    m: mm,
                    n: nn,
                    c,
                });
            }
            Decl::Expect { subject, quantity, value, tag } => {
                let known = env.rings.contains_key(&subject.text)
                    || env.ideals.contains_key(&subject.text)
                    || env.modules.contains_key(&subject.text)
                    || env.pair(&subject.text).is_some();
                if !known {
                    return Err(subject.span.error(format!("unresolved name `{}`", subject.text)));
                }
                env.expectations.push(ExpectDef {
                    subject: subject.text.clone(),
                    quantity: quantity.text.clone(),
                    value: value.clone(),
                    tag: tag.clone(),
                    line: subject.span.line,
                });
            }
        }
    }
    Ok(env)
}

/// Parses and elaborates in one step.
pub fn load(src: &str) -> Result<Env> {
    elaborate(&parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "\
# Example with a zero divisor
ring R = poly(x,y)/(x*y) over GF(32003);
ideal I = (x);
module M = quotient(R, I);
module N = coker(R, [[x]], shifts=[(0,1)]);
pair P = (M, N) wrt I;
expect P.cd = infinite [paper];
expect P.verdict = no [paper];
";

    #[test]
    fn parses_and_elaborates() {
        let doc = parse(EX).unwrap();
        assert_eq!(doc.decls.len(), 7);
        let env = elaborate(&doc).unwrap();
        assert_eq!(env.rings.len(), 1);
        assert_eq!(env.modules.len(), 2);
        let p = env.pair("P").unwrap();
        assert_eq!(p.n.shifts, vec![Degree(vec![0, 1])]);
        assert_eq!(env.expectations.len(), 2);
    }

    #[test]
    fn round_trip() {
        let doc = parse(EX).unwrap();
        let printed = doc.to_string();
        assert_eq!(parse(&printed).unwrap(), doc);
        assert_eq!(parse(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn inhomogeneous_entry_is_located() {
        let src = "ring R = poly(x,y)/(x*y);\nmodule Bad = coker(R, [[x + 1]]);\n";
        match load(src) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 25));
                assert!(message.contains("x + 1"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("ring R = poly(x,y)\nideal I = (x);") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 1)),
            other => panic!("{other:?}"),
        }
        match load("ring R = poly(x);\npair P = (M, R) wrt I;") {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("unresolved"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(load("ring R = poly(x);\nring R = poly(y);"), Err(Error::Parse { .. })));
    }

    #[test]
    fn coarse_rings_and_constructors() {
        let src = "\
ring R = poly(x,y,z)/(y^2 - x*z, z^2 - x^2*y, y*z - x^3) weights (3,4,5);
ideal m = maximal(R);
module W = deficiency(1, R);
module K = quotient(R, m);
module F = free(R, [0, 3]);
module T = tensor(W, K);
module H = hom(W, W);
module E = ext(1, K, R);
module S = shift(K, -2);
module J = ideal_module(m);
module Im = image(R, [[x, y, z]]);
";
        let env = load(src).unwrap();
        assert_eq!(env.modules["W"].minimal_generator_count(), 2);
        assert_eq!(env.modules["F"].shifts, vec![Degree(vec![0]), Degree(vec![3])]);
        assert_eq!(env.modules["T"].minimal_generator_count(), 2);
        assert_eq!(env.modules["S"].shifts, vec![Degree(vec![-2])]);
        for d in 0..12 {
            let deg = Degree(vec![d]);
            assert_eq!(env.modules["J"].dim(&deg), env.modules["Im"].dim(&deg));
        }
        let doc = parse(src).unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn fine_rings_reject_binomial_relations() {
        assert!(matches!(load("ring R = poly(x,y)/(x^2 - y^2);"), Err(Error::Parse { .. })));
        assert!(load("ring R = poly(x,y)/(x^2 - y^2) weights (1,1);").is_ok());
    }
}
