//! The `.lca` algebra-definition language, polynomial parsing, and the JSON
//! forms of cochains.
//!
//! ```text
//! algebra esv
//! generator L weight 2
//! generator N weight 1
//! virasoro L
//! bracket [L, L] = (d + 2*x) L
//! bracket [L, N] = (d + x) N
//! bracket [N, M] = 2 M       # comments run to end of line
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraError, GenCombo, Generator};
use crate::cochain::Cochain;
use crate::poly::{scalar, Poly, Scalar};

const KEYWORDS: [&str; 5] = ["algebra", "generator", "weight", "virasoro", "bracket"];
const MAX_EXPONENT: u32 = 64;
const MAX_DEPTH: usize = 64;

/// 1-based line/column plus byte offsets `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub span: SourceSpan,
    pub message: String,
    /// Token kinds that would have been accepted, for syntax errors.
    pub expected: Vec<String>,
}

impl Diagnostic {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic { span, message: message.into(), expected: Vec::new() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut line_start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let span_at = |start: usize, end: usize| SourceSpan {
            line,
            column: text[line_start..start].chars().count() + 1,
            start,
            end,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = i + 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    end = j + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(text[i..end].to_string()), span: span_at(i, end) });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    end = j + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            if let Some(&(j, '.')) = chars.peek() {
                return Err(Diagnostic::new(
                    span_at(i, j + 1),
                    "floating-point literals are not accepted; write rationals as p/q",
                ));
            }
            let n: BigInt = text[i..end].parse().expect("digit run parses");
            out.push(Token { tok: Tok::Int(n), span: span_at(i, end) });
            continue;
        }
        if "[](),=+-*/^".contains(c) {
            chars.next();
            out.push(Token { tok: Tok::Sym(c), span: span_at(i, i + 1) });
            continue;
        }
        if c == '.' {
            return Err(Diagnostic::new(
                span_at(i, i + 1),
                "floating-point literals are not accepted; write rationals as p/q",
            ));
        }
        return Err(Diagnostic::new(span_at(i, i + c.len_utf8()), format!("unexpected character {c:?}")));
    }
    let end = text.len();
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan { line, column: text[line_start..].chars().count() + 1, start: end, end },
    });
    Ok(out)
}

/// Which polynomial variables a context admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyVars {
    /// `d` and `x`: bracket coefficients.
    Bracket,
    /// `x1, x2, ...`: cochain values.
    Cochain,
}

fn lambda_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

fn is_reserved(name: &str) -> bool {
    name == "d" || name == "x" || name.strip_prefix('x').is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
        || KEYWORDS.contains(&name)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: PolyVars,
    depth: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Diagnostic {
        let t = self.peek();
        Diagnostic {
            span: t.span,
            message: format!("unexpected {}", t.tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<SourceSpan> {
        if self.peek().tok == Tok::Sym(c) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<SourceSpan> {
        if self.at_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    fn expect_name(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        match &self.peek().tok {
            Tok::Ident(s) if !is_reserved(s) => {
                let s = s.clone();
                Ok((s, self.bump().span))
            }
            Tok::Ident(s) => {
                Err(Diagnostic::new(self.peek().span, format!("`{s}` is reserved and cannot be used as {what}")))
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn rational(&mut self) -> PResult<Scalar> {
        let neg = self.eat_sym('-');
        let num = match &self.peek().tok {
            Tok::Int(n) => n.clone(),
            _ => return Err(self.error(&["rational"])),
        };
        self.bump();
        let mut r = Scalar::from_integer(num);
        if self.eat_sym('/') {
            let den = match &self.peek().tok {
                Tok::Int(n) => n.clone(),
                _ => return Err(self.error(&["integer denominator"])),
            };
            if den.is_zero() {
                return Err(Diagnostic::new(self.peek().span, "zero denominator"));
            }
            self.bump();
            r /= Scalar::from_integer(den);
        }
        Ok(if neg { -r } else { r })
    }

    fn starts_atom(&self) -> bool {
        match &self.peek().tok {
            Tok::Int(_) => true,
            Tok::Sym('(') => true,
            Tok::Ident(s) => self.is_variable(s),
            _ => false,
        }
    }

    fn is_variable(&self, s: &str) -> bool {
        match self.vars {
            PolyVars::Bracket => s == "d" || s == "x",
            PolyVars::Cochain => lambda_index(s).is_some(),
        }
    }

    fn atom(&mut self) -> PResult<Poly> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(_) => Ok(Poly::constant(self.rational()?)),
            Tok::Sym('(') => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(Diagnostic::new(t.span, "expression nested too deeply"));
                }
                self.bump();
                let p = self.poly_expr()?;
                self.expect_sym(')')?;
                self.depth -= 1;
                Ok(p)
            }
            Tok::Ident(s) if self.is_variable(s) => {
                self.bump();
                Ok(match self.vars {
                    PolyVars::Bracket if s == "d" => Poly::del(),
                    PolyVars::Bracket => Poly::x(),
                    PolyVars::Cochain => Poly::lam(lambda_index(s).unwrap()),
                })
            }
            Tok::Ident(s) => Err(Diagnostic {
                span: t.span,
                message: format!("unknown symbol {s}"),
                expected: self.variable_names(),
            }),
            _ => Err(Diagnostic { expected: self.variable_names(), ..self.error(&["number", "`(`"]) }),
        }
    }

    fn variable_names(&self) -> Vec<String> {
        let mut v = vec!["number".to_string(), "`(`".to_string()];
        match self.vars {
            PolyVars::Bracket => v.extend(["`d`".to_string(), "`x`".to_string()]),
            PolyVars::Cochain => v.push("`x1`, `x2`, ...".to_string()),
        }
        v
    }

    fn factor(&mut self) -> PResult<Poly> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let t = self.peek().clone();
            let Tok::Int(e) = &t.tok else { return Err(self.error(&["integer exponent"])) };
            let e: u32 = e.try_into().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
                Diagnostic::new(t.span, format!("exponent larger than {MAX_EXPONENT}"))
            })?;
            self.bump();
            if (base.total_degree().max(0) as u64) * (e as u64) > MAX_EXPONENT as u64 {
                return Err(Diagnostic::new(t.span, "power too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn term(&mut self) -> PResult<Poly> {
        let mut p = self.factor()?;
        loop {
            // juxtaposition is implicit multiplication
            if self.eat_sym('*') || self.starts_atom() {
                p = &p * &self.factor()?;
            } else {
                return Ok(p);
            }
            if p.total_degree() > MAX_EXPONENT as i64 {
                return Err(Diagnostic::new(self.peek().span, "polynomial degree too large"));
            }
        }
    }

    fn poly_expr(&mut self) -> PResult<Poly> {
        let neg = self.eat_sym('-');
        if !neg {
            self.eat_sym('+');
        }
        let mut p = self.term()?;
        if neg {
            p = -p;
        }
        loop {
            if self.eat_sym('+') {
                p = p + self.term()?;
            } else if self.eat_sym('-') {
                p = p - self.term()?;
            } else {
                return Ok(p);
            }
        }
    }

    // term := sign? (factor "*"?)* GENERATOR
    fn bracket_term(&mut self, first: bool) -> PResult<Option<(Poly, String, SourceSpan)>> {
        let mut coeff = Poly::one();
        if self.eat_sym('-') {
            coeff = -coeff;
        } else if !first {
            self.expect_sym('+')?;
        }
        let start = self.peek().span;
        loop {
            match &self.peek().tok {
                Tok::Ident(s) if !self.is_variable(s) && !KEYWORDS.contains(&s.as_str()) => {
                    if is_reserved(s) {
                        return Err(Diagnostic {
                            span: self.peek().span,
                            message: format!("unknown symbol {s}"),
                            expected: self.variable_names(),
                        });
                    }
                    let s = s.clone();
                    let span = self.bump().span;
                    return Ok(Some((coeff, s, span)));
                }
                _ if self.starts_atom() => {
                    coeff = &coeff * &self.factor()?;
                    self.eat_sym('*');
                    if coeff.total_degree() > MAX_EXPONENT as i64 {
                        return Err(Diagnostic::new(start, "polynomial degree too large"));
                    }
                }
                _ => {
                    if coeff.is_zero() {
                        return Ok(None);
                    }
                    return Err(self.error(&["generator name"]));
                }
            }
        }
    }

    fn at_term_continuation(&self) -> bool {
        matches!(self.peek().tok, Tok::Sym('+') | Tok::Sym('-'))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub weight: Option<Scalar>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketDecl {
    pub left: (String, SourceSpan),
    pub right: (String, SourceSpan),
    pub terms: Vec<(Poly, String, SourceSpan)>,
    pub span: SourceSpan,
}

/// Syntax tree of an `.lca` document, before name resolution.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraDoc {
    pub name: String,
    pub generators: Vec<GeneratorDecl>,
    pub brackets: Vec<BracketDecl>,
    pub virasoro: Vec<(String, SourceSpan)>,
}

pub fn parse_document(text: &str) -> Result<AlgebraDoc, Vec<Diagnostic>> {
    let toks = lex(text).map_err(|d| vec![d])?;
    let mut p = Parser { toks: &toks, pos: 0, vars: PolyVars::Bracket, depth: 0 };
    let mut doc = AlgebraDoc::default();
    let one = |d: Diagnostic| vec![d];
    p.expect_keyword("algebra").map_err(one)?;
    doc.name = p.expect_name("algebra name").map_err(one)?.0;
    loop {
        let t = p.peek().clone();
        match &t.tok {
            Tok::Eof => return Ok(doc),
            Tok::Ident(k) if k == "generator" => {
                p.bump();
                let (name, span) = p.expect_name("generator name").map_err(one)?;
                let weight = if p.at_keyword("weight") {
                    p.bump();
                    Some(p.rational().map_err(one)?)
                } else {
                    None
                };
                doc.generators.push(GeneratorDecl { name, weight, span });
            }
            Tok::Ident(k) if k == "virasoro" => {
                p.bump();
                doc.virasoro.push(p.expect_name("generator name").map_err(one)?);
            }
            Tok::Ident(k) if k == "bracket" => {
                p.bump();
                p.expect_sym('[').map_err(one)?;
                let left = p.expect_name("generator name").map_err(one)?;
                p.expect_sym(',').map_err(one)?;
                let right = p.expect_name("generator name").map_err(one)?;
                p.expect_sym(']').map_err(one)?;
                p.expect_sym('=').map_err(one)?;
                let mut terms = Vec::new();
                let mut first = true;
                while first || p.at_term_continuation() {
                    if let Some(term) = p.bracket_term(first).map_err(one)? {
                        terms.push(term);
                    }
                    first = false;
                }
                doc.brackets.push(BracketDecl { left, right, terms, span: t.span });
            }
            _ => return Err(vec![p.error(&["`generator`", "`virasoro`", "`bracket`", "end of input"])]),
        }
    }
}

/// Resolves names and validates a parsed document; missing transposes are
/// filled by skew completion.
pub fn build_algebra(doc: &AlgebraDoc) -> Result<Algebra, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    let mut generators = Vec::new();
    for g in &doc.generators {
        if index.contains_key(g.name.as_str()) {
            diags.push(Diagnostic::new(g.span, format!("duplicate declaration of generator {}", g.name)));
            continue;
        }
        index.insert(&g.name, generators.len());
        generators.push(Generator { name: g.name.clone(), weight: g.weight.clone() });
    }
    let resolve = |(name, span): &(String, SourceSpan), diags: &mut Vec<Diagnostic>| {
        let r = index.get(name.as_str()).copied();
        if r.is_none() {
            diags.push(Diagnostic::new(*span, format!("unknown generator {name}")));
        }
        r
    };
    let mut virasoro = None;
    for (i, v) in doc.virasoro.iter().enumerate() {
        if i > 0 {
            diags.push(Diagnostic::new(v.1, "duplicate virasoro declaration"));
        } else if let Some(l) = resolve(v, &mut diags) {
            if let Some(w) = &generators[l].weight {
                if w != &scalar(2) {
                    diags.push(Diagnostic::new(
                        v.1,
                        format!("self-referential weight: virasoro generator {} must have weight 2, declared {w}", v.0),
                    ));
                }
            }
            virasoro = Some(l);
        }
    }
    let mut entries: BTreeMap<(usize, usize), (GenCombo, SourceSpan)> = BTreeMap::new();
    for b in &doc.brackets {
        let (Some(i), Some(j)) = (resolve(&b.left, &mut diags), resolve(&b.right, &mut diags)) else { continue };
        let mut combo = GenCombo::new();
        for (p, g, span) in &b.terms {
            if let Some(k) = resolve(&(g.clone(), *span), &mut diags) {
                let e = combo.entry(k).or_insert_with(Poly::zero);
                *e += p;
            }
        }
        if entries.contains_key(&(i, j)) {
            diags.push(Diagnostic::new(b.span, format!("duplicate declaration of bracket [{}, {}]", b.left.0, b.right.0)));
            continue;
        }
        entries.insert((i, j), (combo, b.span));
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let spans: BTreeMap<(usize, usize), SourceSpan> = entries.iter().map(|(k, (_, s))| (*k, *s)).collect();
    let doc_span = SourceSpan { line: 1, column: 1, start: 0, end: 0 };
    let span_of = |a: &str, b: &str| {
        let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) else { return doc_span };
        spans.get(&(i, j)).or_else(|| spans.get(&(j, i))).copied().unwrap_or(doc_span)
    };
    let to_diag = |e: AlgebraError| -> Vec<Diagnostic> {
        match &e {
            AlgebraError::SkewInconsistent(v) => v
                .iter()
                .map(|s| {
                    Diagnostic::new(
                        span_of(&s.first, &s.second),
                        format!("brackets [{0}, {1}] and [{1}, {0}] violate skew-symmetry; residual {2}", s.first, s.second, s.residual),
                    )
                })
                .collect(),
            AlgebraError::NotVirasoro(l) => {
                vec![Diagnostic::new(span_of(l, l), e.to_string())]
            }
            _ => vec![Diagnostic::new(doc_span, e.to_string())],
        }
    };
    let alg = Algebra::new(doc.name.clone(), generators, entries.into_iter().map(|(k, (c, _))| (k, c)), virasoro)
        .map_err(to_diag)?;
    alg.complete_by_skew().map_err(to_diag)
}

pub fn parse_algebra(text: &str) -> Result<Algebra, Vec<Diagnostic>> {
    build_algebra(&parse_document(text)?)
}

/// Entry point for untrusted input.
pub fn parse_algebra_bytes(bytes: &[u8]) -> Result<Algebra, Vec<Diagnostic>> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_algebra(s),
        Err(e) => {
            let start = e.valid_up_to();
            let prefix = &bytes[..start];
            let line = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
            let line_start = prefix.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
            let column = std::str::from_utf8(&prefix[line_start..]).map_or(1, |s| s.chars().count() + 1);
            Err(vec![Diagnostic::new(
                SourceSpan { line, column, start, end: start + 1 },
                "input is not valid UTF-8",
            )])
        }
    }
}

/// Parses a polynomial in the given variable set.
pub fn parse_poly(text: &str, vars: PolyVars) -> Result<Poly, Diagnostic> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, vars, depth: 0 };
    let out = p.poly_expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error(&["`+`", "`-`", "`*`", "end of input"]));
    }
    Ok(out)
}

/// Parses `p`, `-p` or `p/q`; anything else is rejected.
pub fn parse_rational(text: &str) -> Result<Scalar, Diagnostic> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, vars: PolyVars::Bracket, depth: 0 };
    let r = p.rational()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error(&["end of input"]));
    }
    Ok(r)
}

fn render_combo(a: &Algebra, combo: &GenCombo) -> String {
    combo
        .iter()
        .map(|(&k, p)| {
            let name = a.generator_name(k);
            if p == &Poly::one() {
                name.to_string()
            } else if p.total_degree() == 0 && p.coefficient(&crate::poly::Monomial::one()) > Scalar::zero() {
                format!("{p} {name}")
            } else {
                format!("({p}) {name}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Canonical `.lca` text. For each unordered pair only the `(i, j)`, `i <= j`
/// direction is written unless the transpose carries information skew
/// completion cannot recover.
pub fn render_algebra(a: &Algebra) -> String {
    let mut out = format!("algebra {}\n", a.name);
    for g in a.generators() {
        match &g.weight {
            Some(w) => out.push_str(&format!("generator {} weight {}\n", g.name, w)),
            None => out.push_str(&format!("generator {}\n", g.name)),
        }
    }
    if let Some(l) = a.virasoro() {
        out.push_str(&format!("virasoro {}\n", a.generator_name(l)));
    }
    let skew_ok = a.check_skew().passed();
    for (&(i, j), combo) in a.entries() {
        let write = i <= j || !skew_ok || a.bracket(j, i).is_empty();
        if write {
            out.push_str(&format!(
                "bracket [{}, {}] = {}\n",
                a.generator_name(i),
                a.generator_name(j),
                render_combo(a, combo)
            ));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub tuple: Vec<String>,
    pub poly: String,
}

/// JSON form of a cochain: `{q, components: [{tuple, poly}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainRecord {
    pub q: usize,
    pub components: Vec<ComponentRecord>,
}

pub fn cochain_record(c: &Cochain, a: &Algebra) -> CochainRecord {
    CochainRecord {
        q: c.q(),
        components: c
            .components()
            .map(|(k, p)| ComponentRecord {
                tuple: k.tuple().iter().map(|&g| a.generator_name(g).to_string()).collect(),
                poly: p.to_string(),
            })
            .collect(),
    }
}

pub fn cochain_from_record(r: &CochainRecord, a: &Algebra) -> Result<Cochain, Diagnostic> {
    let mut items = Vec::new();
    for comp in &r.components {
        if comp.tuple.len() != r.q {
            return Err(Diagnostic::new(SourceSpan::default(), format!("tuple {:?} does not have length {}", comp.tuple, r.q)));
        }
        let tuple = comp
            .tuple
            .iter()
            .map(|n| a.index_of(n).ok_or_else(|| Diagnostic::new(SourceSpan::default(), format!("unknown generator {n}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let p = parse_poly(&comp.poly, PolyVars::Cochain)?;
        if p.max_lambda_index() as usize > r.q {
            return Err(Diagnostic::new(SourceSpan::default(), format!("polynomial {} uses variables beyond x{}", comp.poly, r.q)));
        }
        items.push((tuple, p));
    }
    Ok(Cochain::from_tuples(r.q, items.iter().map(|(t, p)| (t.as_slice(), p.clone()))))
}

pub fn cochain_to_json(c: &Cochain, a: &Algebra) -> String {
    serde_json::to_string(&cochain_record(c, a)).expect("records serialize")
}

pub fn cochain_from_json(s: &str, a: &Algebra) -> Result<Cochain, Diagnostic> {
    let r: CochainRecord = serde_json::from_str(s)
        .map_err(|e| Diagnostic::new(SourceSpan { line: e.line(), column: e.column(), start: 0, end: 0 }, e.to_string()))?;
    cochain_from_record(&r, a)
}
