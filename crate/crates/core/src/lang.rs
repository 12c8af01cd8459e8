//! The `.lie` text format.
//!
//! ```text
//! # comment
//! algebra g3_5 dim 3
//! param alpha = 1/2
//! basis e1 e2 e3
//! meta source table2
//! [e3, e1] = e1
//! [e3, e2] = alpha e2
//! ```
//!
//! Coefficients are exact: integers, `p/q` literals, bound parameters and
//! parenthesized arithmetic over them. Decimal literals are rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactlin::{zero_vec, Rational};
use crate::liealg::{default_labels, LieAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, params: &BTreeMap<String, Rational>) -> Option<Rational> {
        Some(match self {
            Expr::Num(r) => r.clone(),
            Expr::Param(p) => params.get(p)?.clone(),
            Expr::Neg(a) => -a.eval(params)?,
            Expr::Add(a, b) => a.eval(params)? + b.eval(params)?,
            Expr::Sub(a, b) => a.eval(params)? - b.eval(params)?,
            Expr::Mul(a, b) => a.eval(params)? * b.eval(params)?,
            Expr::Div(a, b) => {
                let d = b.eval(params)?;
                if d.is_zero() {
                    return None;
                }
                a.eval(params)? / d
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(_) | Expr::Param(_) => 4,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.prec();
        if p < min {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(r) => write!(f, "{r}")?,
            Expr::Param(s) => f.write_str(s)?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_prec(f, 3)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => " * ",
                    _ => " / ",
                };
                a.write_prec(f, p)?;
                f.write_str(op)?;
                // Left-associative: an equal-precedence right operand needs parens.
                b.write_prec(f, p + 1)?;
            }
        }
        if p < min {
            f.write_str(")")?;
        }
        Ok(())
    }

    fn params(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Param(p) => {
                out.insert(p.clone());
            }
            Expr::Neg(a) => a.params(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.params(out);
                b.params(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

/// `± factor factor … label`; the coefficient is the product of the factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub factors: Vec<Expr>,
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketLine {
    pub left: usize,
    pub right: usize,
    /// Empty for an explicit `= 0`.
    pub terms: Vec<Term>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub params: BTreeMap<String, Rational>,
    pub brackets: Vec<BracketLine>,
    pub meta: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Syntax,
    UndeclaredLabel,
    UnboundParameter,
    DuplicateBracket,
    MalformedRational,
    DecimalLiteral,
    Header,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
    pub hint: Option<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        if let Some(h) = &self.hint {
            write!(f, "; hint: write `{h}`")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(Rational),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(r) => format!("`{r}`"),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    eol: usize,
}

fn diag(kind: DiagnosticKind, line: usize, column: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        kind,
        line,
        column,
        message: message.into(),
        expected: vec![],
        hint: None,
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// `123.45` as an exact fraction, for the fix-it hint.
fn decimal_hint(int_part: &str, frac_part: &str) -> Option<String> {
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(num, den).to_string())
}

fn lex(text: &str, line: usize) -> Result<Lexed, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().collect();
            if i < chars.len() && chars[i] == '.' {
                let fs = i + 1;
                let mut j = fs;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let frac: String = chars[fs..j].iter().collect();
                let mut d = diag(
                    DiagnosticKind::DecimalLiteral,
                    line,
                    col,
                    format!("decimal literal `{int_part}.{frac}` is not allowed; coefficients are exact rationals"),
                );
                d.hint = decimal_hint(&int_part, &frac);
                return Err(d);
            }
            // `p/q` with no spaces is a single literal.
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let ds = i + 1;
                let mut j = ds;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let den: String = chars[ds..j].iter().collect();
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(diag(
                        DiagnosticKind::MalformedRational,
                        line,
                        col,
                        format!("rational literal `{int_part}/0` has zero denominator"),
                    ));
                }
                if j < chars.len() && (chars[j] == '.' || chars[j] == '/') {
                    return Err(diag(
                        DiagnosticKind::MalformedRational,
                        line,
                        col,
                        "malformed rational literal",
                    ));
                }
                toks.push((Tok::Num(Rational::new(int_part.parse().expect("digits"), den)), col));
                i = j;
            } else {
                if i < chars.len() && is_ident_start(chars[i]) {
                    // `2e1` is ambiguous; require a separator.
                    let mut d = diag(
                        DiagnosticKind::Syntax,
                        line,
                        col,
                        "number runs into an identifier",
                    );
                    let rest: String = chars[i..].iter().take_while(|c| is_ident_char(**c)).collect();
                    d.hint = Some(format!("{int_part} {rest}"));
                    return Err(d);
                }
                let n: BigInt = int_part.parse().expect("digits");
                toks.push((Tok::Num(Rational::from_integer(n)), col));
            }
        } else if c == '.' {
            let fs = i + 1;
            let mut j = fs;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j > fs {
                let frac: String = chars[fs..j].iter().collect();
                let mut d = diag(
                    DiagnosticKind::DecimalLiteral,
                    line,
                    col,
                    format!("decimal literal `.{frac}` is not allowed; coefficients are exact rationals"),
                );
                d.hint = decimal_hint("0", &frac);
                return Err(d);
            }
            return Err(diag(DiagnosticKind::Syntax, line, col, "unexpected `.`"));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "[],=+-*/()".contains(c) {
            toks.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(diag(DiagnosticKind::Syntax, line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(Lexed {
        toks,
        eol: chars.iter().position(|c| *c == '#').unwrap_or(chars.len()) + 1,
    })
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    eol: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.eol, |t| t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Diagnostic {
        let found = self.peek().map_or("end of line".to_string(), Tok::describe);
        let mut d = diag(DiagnosticKind::Syntax, self.line, self.col(), format!("unexpected {found}"));
        d.expected = expected.iter().map(|s| s.to_string()).collect();
        d
    }

    fn expect_sym(&mut self, c: char) -> Result<(), Diagnostic> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{c}`")]))
        }
    }

    fn expect_end(&self) -> Result<(), Diagnostic> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.unexpected(&["end of line"]))
        }
    }
}

struct Scope<'a> {
    labels: &'a [String],
    params: &'a BTreeMap<String, Rational>,
}

impl Scope<'_> {
    fn label_index(&self, s: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == s)
    }

    fn undeclared(&self, name: &str, line: usize, col: usize) -> Diagnostic {
        let mut d = diag(
            DiagnosticKind::UndeclaredLabel,
            line,
            col,
            format!("undeclared basis label `{name}`"),
        );
        d.expected = self.labels.to_vec();
        d
    }
}

fn parse_atom(cur: &mut Cursor, scope: &Scope) -> Result<Expr, Diagnostic> {
    let col = cur.col();
    match cur.peek().cloned() {
        Some(Tok::Num(r)) => {
            cur.bump();
            Ok(Expr::Num(r))
        }
        Some(Tok::Ident(s)) => {
            if scope.params.contains_key(&s) {
                cur.bump();
                Ok(Expr::Param(s))
            } else if scope.label_index(&s).is_some() {
                Err(cur.unexpected(&["number", "parameter", "`(`"]))
            } else {
                let mut d = diag(
                    DiagnosticKind::UnboundParameter,
                    cur.line,
                    col,
                    format!("unbound parameter `{s}`"),
                );
                d.expected = scope.params.keys().cloned().collect();
                Err(d)
            }
        }
        Some(Tok::Sym('(')) => {
            cur.bump();
            let e = parse_expr(cur, scope)?;
            cur.expect_sym(')')?;
            Ok(e)
        }
        _ => Err(cur.unexpected(&["number", "parameter", "`(`"])),
    }
}

fn parse_unary(cur: &mut Cursor, scope: &Scope) -> Result<Expr, Diagnostic> {
    if cur.peek() == Some(&Tok::Sym('-')) {
        cur.bump();
        return Ok(Expr::Neg(Box::new(parse_unary(cur, scope)?)));
    }
    parse_atom(cur, scope)
}

fn parse_product(cur: &mut Cursor, scope: &Scope) -> Result<Expr, Diagnostic> {
    let mut e = parse_unary(cur, scope)?;
    loop {
        match cur.peek() {
            Some(Tok::Sym('*')) => {
                cur.bump();
                e = Expr::Mul(Box::new(e), Box::new(parse_unary(cur, scope)?));
            }
            Some(Tok::Sym('/')) => {
                cur.bump();
                e = Expr::Div(Box::new(e), Box::new(parse_unary(cur, scope)?));
            }
            _ => return Ok(e),
        }
    }
}

fn parse_expr(cur: &mut Cursor, scope: &Scope) -> Result<Expr, Diagnostic> {
    let mut e = parse_product(cur, scope)?;
    loop {
        match cur.peek() {
            Some(Tok::Sym('+')) => {
                cur.bump();
                e = Expr::Add(Box::new(e), Box::new(parse_product(cur, scope)?));
            }
            Some(Tok::Sym('-')) => {
                cur.bump();
                e = Expr::Sub(Box::new(e), Box::new(parse_product(cur, scope)?));
            }
            _ => return Ok(e),
        }
    }
}

fn parse_term(cur: &mut Cursor, scope: &Scope, negative: bool) -> Result<Term, Diagnostic> {
    let mut factors = Vec::new();
    loop {
        let col = cur.col();
        match cur.peek().cloned() {
            Some(Tok::Ident(s)) => {
                if let Some(k) = scope.label_index(&s) {
                    cur.bump();
                    return Ok(Term {
                        negative,
                        factors,
                        label: k,
                    });
                }
                if !scope.params.contains_key(&s) {
                    // Either a typo'd label or an unbound parameter: decide by
                    // what follows.
                    let next_is_term_end = matches!(
                        cur.toks.get(cur.pos + 1).map(|t| &t.0),
                        None | Some(Tok::Sym('+')) | Some(Tok::Sym('-'))
                    );
                    return Err(if next_is_term_end {
                        scope.undeclared(&s, cur.line, col)
                    } else {
                        let mut d = diag(
                            DiagnosticKind::UnboundParameter,
                            cur.line,
                            col,
                            format!("unbound parameter `{s}`"),
                        );
                        d.expected = scope.params.keys().cloned().collect();
                        d
                    });
                }
                factors.push(parse_atom(cur, scope)?);
            }
            Some(Tok::Num(_)) | Some(Tok::Sym('(')) => factors.push(parse_atom(cur, scope)?),
            _ => {
                let mut exp = vec!["number", "parameter", "`(`"];
                exp.extend(scope.labels.iter().map(String::as_str));
                return Err(cur.unexpected(&exp));
            }
        }
        while cur.peek() == Some(&Tok::Sym('/')) {
            cur.bump();
            let den = parse_atom(cur, scope)?;
            let num = factors.pop().expect("a factor was just pushed");
            factors.push(Expr::Div(Box::new(num), Box::new(den)));
        }
        if cur.peek() == Some(&Tok::Sym('*')) {
            cur.bump();
        }
    }
}

fn parse_label(cur: &mut Cursor, scope: &Scope) -> Result<usize, Diagnostic> {
    let col = cur.col();
    match cur.peek().cloned() {
        Some(Tok::Ident(s)) => {
            cur.bump();
            scope.label_index(&s).ok_or_else(|| scope.undeclared(&s, cur.line, col))
        }
        _ => {
            let exp: Vec<&str> = scope.labels.iter().map(String::as_str).collect();
            Err(cur.unexpected(&exp))
        }
    }
}

fn parse_bracket(cur: &mut Cursor, scope: &Scope) -> Result<BracketLine, Diagnostic> {
    cur.expect_sym('[')?;
    let lcol = cur.col();
    let left = parse_label(cur, scope)?;
    cur.expect_sym(',')?;
    let right = parse_label(cur, scope)?;
    cur.expect_sym(']')?;
    if left == right {
        return Err(diag(
            DiagnosticKind::Syntax,
            cur.line,
            lcol,
            format!("[{0}, {0}] is always zero and cannot be assigned", scope.labels[left]),
        ));
    }
    cur.expect_sym('=')?;
    let mut terms = Vec::new();
    if cur.peek() == Some(&Tok::Num(Rational::zero())) && cur.toks.len() == cur.pos + 1 {
        cur.bump();
        return Ok(BracketLine {
            left,
            right,
            terms,
            line: cur.line,
        });
    }
    let mut negative = false;
    match cur.peek() {
        Some(Tok::Sym('-')) => {
            cur.bump();
            negative = true;
        }
        Some(Tok::Sym('+')) => {
            cur.bump();
        }
        _ => {}
    }
    terms.push(parse_term(cur, scope, negative)?);
    loop {
        match cur.peek() {
            Some(Tok::Sym('+')) => {
                cur.bump();
                terms.push(parse_term(cur, scope, false)?);
            }
            Some(Tok::Sym('-')) => {
                cur.bump();
                terms.push(parse_term(cur, scope, true)?);
            }
            None => break,
            _ => return Err(cur.unexpected(&["`+`", "`-`", "end of line"])),
        }
    }
    Ok(BracketLine {
        left,
        right,
        terms,
        line: cur.line,
    })
}

fn parse_rational_value(cur: &mut Cursor) -> Result<Rational, Diagnostic> {
    let neg = if cur.peek() == Some(&Tok::Sym('-')) {
        cur.bump();
        true
    } else {
        false
    };
    match cur.peek().cloned() {
        Some(Tok::Num(r)) => {
            cur.bump();
            Ok(if neg { -r } else { r })
        }
        _ => {
            let mut d = cur.unexpected(&["rational literal"]);
            d.kind = DiagnosticKind::MalformedRational;
            Err(d)
        }
    }
}

pub fn parse(text: &str) -> Result<AlgebraDocument, Diagnostic> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut header: Option<(String, usize)> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut params: BTreeMap<String, Rational> = BTreeMap::new();
    let mut brackets: Vec<BracketLine> = Vec::new();
    let mut meta = Vec::new();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.chars().count() - trimmed.chars().count();
        let first_word = trimmed.split_whitespace().next().unwrap_or("");
        if first_word == "meta" {
            let rest = trimmed["meta".len()..].trim();
            let mut parts = rest.splitn(2, char::is_whitespace);
            let key = parts.next().unwrap_or("");
            if key.is_empty() {
                let mut d = diag(DiagnosticKind::Syntax, line_no, indent + 5, "`meta` needs a key");
                d.expected = vec!["meta key".into()];
                return Err(d);
            }
            meta.push((key.to_string(), parts.next().unwrap_or("").trim().to_string()));
            continue;
        }
        if first_word == "algebra" {
            if header.is_some() {
                return Err(diag(DiagnosticKind::Header, line_no, indent + 1, "second `algebra` header; one algebra per file"));
            }
            let words: Vec<&str> = trimmed.split_whitespace().collect();
            if words.len() != 4 || words[2] != "dim" {
                let mut d = diag(DiagnosticKind::Header, line_no, indent + 1, "malformed header");
                d.expected = vec!["algebra <name> dim <n>".into()];
                return Err(d);
            }
            let dim: usize = words[3].parse().map_err(|_| {
                let col = raw.rfind(words[3]).map_or(indent + 1, |b| raw[..b].chars().count() + 1);
                let mut d = diag(DiagnosticKind::Header, line_no, col, format!("dimension `{}` is not a count", words[3]));
                d.expected = vec!["nonnegative integer".into()];
                d
            })?;
            header = Some((words[1].to_string(), dim));
            continue;
        }
        let Some((_, dim)) = &header else {
            let mut d = diag(DiagnosticKind::Header, line_no, indent + 1, "missing `algebra` header");
            d.expected = vec!["algebra <name> dim <n>".into()];
            return Err(d);
        };
        let dim = *dim;
        let lexed = lex(raw, line_no)?;
        let mut cur = Cursor {
            toks: &lexed.toks,
            pos: 0,
            line: line_no,
            eol: lexed.eol,
        };
        match cur.peek().cloned() {
            Some(Tok::Ident(kw)) if kw == "param" => {
                cur.bump();
                let col = cur.col();
                let Some(Tok::Ident(name)) = cur.bump() else {
                    cur.pos -= 1;
                    return Err(cur.unexpected(&["parameter name"]));
                };
                if labels.as_ref().is_some_and(|l| l.contains(&name)) || default_labels(dim).contains(&name) && labels.is_none() {
                    return Err(diag(DiagnosticKind::Syntax, line_no, col, format!("parameter `{name}` clashes with a basis label")));
                }
                if params.contains_key(&name) {
                    return Err(diag(DiagnosticKind::Syntax, line_no, col, format!("parameter `{name}` bound twice")));
                }
                cur.expect_sym('=')?;
                let v = parse_rational_value(&mut cur)?;
                cur.expect_end()?;
                params.insert(name, v);
            }
            Some(Tok::Ident(kw)) if kw == "basis" => {
                cur.bump();
                if labels.is_some() || !brackets.is_empty() {
                    return Err(diag(DiagnosticKind::Syntax, line_no, indent + 1, "`basis` must come once, before any bracket"));
                }
                let mut ls: Vec<String> = Vec::new();
                while let Some(t) = cur.peek().cloned() {
                    let col = cur.col();
                    match t {
                        Tok::Ident(s) => {
                            if ls.contains(&s) || params.contains_key(&s) {
                                return Err(diag(DiagnosticKind::Syntax, line_no, col, format!("label `{s}` declared twice")));
                            }
                            ls.push(s);
                            cur.bump();
                        }
                        _ => return Err(cur.unexpected(&["label"])),
                    }
                }
                if ls.len() != dim {
                    return Err(diag(
                        DiagnosticKind::Header,
                        line_no,
                        cur.eol,
                        format!("`basis` lists {} labels but dim is {dim}", ls.len()),
                    ));
                }
                labels = Some(ls);
            }
            Some(Tok::Sym('[')) => {
                let ls = labels.get_or_insert_with(|| default_labels(dim));
                let scope = Scope {
                    labels: ls,
                    params: &params,
                };
                let b = parse_bracket(&mut cur, &scope)?;
                let key = (b.left.min(b.right), b.left.max(b.right));
                if let Some(prev) = seen.insert(key, line_no) {
                    let d = diag(
                        DiagnosticKind::DuplicateBracket,
                        line_no,
                        indent + 1,
                        format!(
                            "bracket [{}, {}] already given on line {prev}; the reversed order is implied",
                            ls[key.0], ls[key.1]
                        ),
                    );
                    return Err(d);
                }
                brackets.push(b);
            }
            _ => return Err(cur.unexpected(&["`param`", "`basis`", "`meta`", "`[`"])),
        }
    }
    let Some((name, dim)) = header else {
        let mut d = diag(DiagnosticKind::Header, 1, 1, "missing `algebra` header");
        d.expected = vec!["algebra <name> dim <n>".into()];
        return Err(d);
    };
    Ok(AlgebraDocument {
        labels: labels.unwrap_or_else(|| default_labels(dim)),
        name,
        dim,
        params,
        brackets,
        meta,
    })
}

impl AlgebraDocument {
    pub fn to_algebra(&self) -> Result<LieAlgebra, Diagnostic> {
        let mut g = LieAlgebra::with_labels(self.name.clone(), self.labels.clone());
        for b in &self.brackets {
            let mut v = zero_vec(self.dim);
            for t in &b.terms {
                let mut c = Rational::one();
                for f in &t.factors {
                    c *= f.eval(&self.params).ok_or_else(|| {
                        diag(
                            DiagnosticKind::MalformedRational,
                            b.line,
                            1,
                            format!("coefficient `{f}` divides by zero"),
                        )
                    })?;
                }
                if t.negative {
                    c = -c;
                }
                v[t.label] += c;
            }
            g.set_bracket(b.left, b.right, &v);
        }
        Ok(g)
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Parameters actually used by some bracket, in name order.
    pub fn used_params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for b in &self.brackets {
            for t in &b.terms {
                for f in &t.factors {
                    f.params(&mut out);
                }
            }
        }
        out
    }

    /// Numeric document for an algebra: one line per nonzero bracket pair.
    pub fn from_algebra(g: &LieAlgebra) -> AlgebraDocument {
        let mut lines: BTreeMap<(usize, usize), Vec<Term>> = BTreeMap::new();
        for ((i, j, k), c) in g.constants() {
            let negative = *c < Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            let factors = if mag.is_one() { vec![] } else { vec![Expr::Num(mag)] };
            lines.entry((*i, *j)).or_default().push(Term {
                negative,
                factors,
                label: *k,
            });
        }
        AlgebraDocument {
            name: g.name().to_string(),
            dim: g.dim(),
            labels: g.labels().to_vec(),
            params: BTreeMap::new(),
            brackets: lines
                .into_iter()
                .enumerate()
                .map(|(n, ((i, j), terms))| BracketLine {
                    left: i,
                    right: j,
                    terms,
                    line: n + 3,
                })
                .collect(),
            meta: vec![],
        }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Num(_) | Expr::Param(_) => write!(f, "{e}"),
        _ => write!(f, "({e})"),
    }
}

/// Prints a document that parses back to an equal one (line numbers aside,
/// which are renumbered to match the printed layout).
impl fmt::Display for AlgebraDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} dim {}", self.name, self.dim)?;
        for (k, v) in &self.params {
            writeln!(f, "param {k} = {v}")?;
        }
        if self.labels != default_labels(self.dim) {
            writeln!(f, "basis {}", self.labels.join(" "))?;
        }
        for (k, v) in &self.meta {
            if v.is_empty() {
                writeln!(f, "meta {k}")?;
            } else {
                writeln!(f, "meta {k} {v}")?;
            }
        }
        for b in &self.brackets {
            write!(f, "[{}, {}] = ", self.labels[b.left], self.labels[b.right])?;
            if b.terms.is_empty() {
                f.write_str("0")?;
            }
            for (n, t) in b.terms.iter().enumerate() {
                match (n, t.negative) {
                    (0, true) => f.write_str("-")?,
                    (0, false) => {}
                    (_, true) => f.write_str(" - ")?,
                    (_, false) => f.write_str(" + ")?,
                }
                for fac in &t.factors {
                    write_factor(f, fac)?;
                    f.write_str(" ")?;
                }
                f.write_str(&self.labels[t.label])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl AlgebraDocument {
    /// Same document with bracket line numbers dropped, for structural comparison.
    pub fn without_positions(&self) -> AlgebraDocument {
        let mut d = self.clone();
        for b in &mut d.brackets {
            b.line = 0;
        }
        d
    }
}
