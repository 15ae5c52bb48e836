//! Text grammar for polynomials and points.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | "+" unary | power
//! power  := atom ("^" NATURAL)?
//! atom   := NUMBER | IDENT | "(" expr ")"
//! NUMBER := DIGITS ("/" DIGITS)?
//! IDENT  := [A-Za-z_][A-Za-z0-9_]*
//! point  := "(" (NUMBER_SIGNED ("," NUMBER_SIGNED)*)? ")"
//! ```
//!
//! Multiplication is always explicit. Variable order is supplied by the
//! caller and never inferred from the text.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{format_rational, Point, Polynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{message} at {}..{}", span.start, span.end)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>, expected: &[&str]) -> Self {
        Self {
            span,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

type PResult<T> = Result<T, ParseError>;

/// Ordered, distinct variable names. Position `i` names `x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variables(Vec<String>);

impl Variables {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> PResult<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ParseError::new(
                SourceSpan::new(0, 0),
                "variable list is empty",
                &["identifier"],
            ));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(ParseError::new(
                    SourceSpan::new(0, 0),
                    format!("invalid variable name `{name}`"),
                    &["identifier"],
                ));
            }
            if names[..i].contains(name) {
                return Err(ParseError::new(
                    SourceSpan::new(0, 0),
                    format!("duplicate variable name `{name}`"),
                    &[],
                ));
            }
        }
        Ok(Self(names))
    }

    /// Comma-separated list, e.g. `x,y,z`.
    pub fn parse_list(text: &str) -> PResult<Self> {
        Self::new(text.split(',').map(str::trim))
    }

    /// `x1, ..., xn`.
    pub fn indexed(n: usize) -> Self {
        Self((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Display for Variables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_) => "number".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> PResult<Vec<(Tok, SourceSpan)>> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let offset = |i: usize| bytes.get(i).map_or(text.len(), |b| b.0);
    while i < bytes.len() {
        let (start, c) = bytes[i];
        let single = |t| (t, SourceSpan::new(start, start + c.len_utf8()));
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push(single(Tok::Plus)),
            '-' | '\u{2212}' => out.push(single(Tok::Minus)),
            '*' => out.push(single(Tok::Star)),
            '^' => out.push(single(Tok::Caret)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            ',' => out.push(single(Tok::Comma)),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].1.is_ascii_digit() {
                    j += 1;
                }
                let numer: BigInt = text[start..offset(j)].parse().expect("digits");
                let mut denom = BigInt::one();
                if j < bytes.len() && bytes[j].1 == '/' {
                    let ds = j + 1;
                    let mut k = ds;
                    while k < bytes.len() && bytes[k].1.is_ascii_digit() {
                        k += 1;
                    }
                    if k == ds {
                        return Err(ParseError::new(
                            SourceSpan::new(offset(j), offset(ds)),
                            "fraction literal is missing its denominator",
                            &["digits"],
                        ));
                    }
                    denom = text[offset(ds)..offset(k)].parse().expect("digits");
                    if denom.is_zero() {
                        return Err(ParseError::new(
                            SourceSpan::new(start, offset(k)),
                            "zero denominator",
                            &[],
                        ));
                    }
                    j = k;
                }
                out.push((
                    Tok::Num(Rational::new(numer, denom)),
                    SourceSpan::new(start, offset(j)),
                ));
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].1.is_ascii_alphanumeric() || bytes[j].1 == '_') {
                    j += 1;
                }
                out.push((
                    Tok::Ident(text[start..offset(j)].to_string()),
                    SourceSpan::new(start, offset(j)),
                ));
                i = j;
                continue;
            }
            '.' => {
                return Err(ParseError::new(
                    SourceSpan::new(start, start + 1),
                    "decimal literals are not supported; use a fraction such as 3/4",
                    &["integer", "fraction"],
                ))
            }
            other => {
                return Err(ParseError::new(
                    SourceSpan::new(start, start + other.len_utf8()),
                    format!("unexpected character `{other}`"),
                    &["number", "identifier", "operator"],
                ))
            }
        }
        i += 1;
    }
    out.push((Tok::End, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    vars: &'a Variables,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
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

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::new(
            self.span(),
            format!("unexpected {}", self.peek().describe()),
            expected,
        )
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, span) = self.bump();
        match tok {
            Tok::Num(n) if n.is_integer() => {
                let e: u32 = n.numer().try_into().map_err(|_| {
                    ParseError::new(span, "exponent too large", &["natural number"])
                })?;
                Ok(base.pow(e))
            }
            Tok::Num(_) => Err(ParseError::new(
                span,
                "exponent must be a natural number",
                &["natural number"],
            )),
            Tok::Minus => Err(ParseError::new(
                span,
                "negative exponent",
                &["natural number"],
            )),
            other => Err(ParseError::new(
                span,
                format!("unexpected {} after `^`", other.describe()),
                &["natural number"],
            )),
        }
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        let n = self.vars.len();
        let span = self.span();
        match self.peek().clone() {
            Tok::Num(c) => {
                self.bump();
                Ok(Polynomial::constant(n, c))
            }
            Tok::Ident(name) => {
                self.bump();
                let idx = self.vars.index_of(&name).ok_or_else(|| {
                    ParseError::new(
                        span,
                        format!("unknown variable `{name}` (declared: {})", self.vars),
                        &[],
                    )
                })?;
                Ok(Polynomial::var(n, idx).expect("index in range"))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["`)`", "operator"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected(&["number", "identifier", "`(`"])),
        }
    }
}

pub fn parse_polynomial(text: &str, vars: &Variables) -> PResult<Polynomial> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["operator", "end of input"]));
    }
    Ok(out)
}

/// Parses `"(1/2, -3, 0)"`.
pub fn parse_point(text: &str) -> PResult<Point> {
    let toks = lex(text)?;
    let mut pos = 0;
    let err = |pos: usize, expected: &[&str]| {
        let (t, span) = &toks[pos];
        ParseError::new(*span, format!("unexpected {}", t.describe()), expected)
    };
    if toks[pos].0 != Tok::LParen {
        return Err(err(pos, &["`(`"]));
    }
    pos += 1;
    let mut coords = Vec::new();
    if toks[pos].0 == Tok::RParen {
        pos += 1;
    } else {
        loop {
            let mut negate = false;
            while matches!(toks[pos].0, Tok::Minus | Tok::Plus) {
                negate ^= toks[pos].0 == Tok::Minus;
                pos += 1;
            }
            match &toks[pos].0 {
                Tok::Num(c) => coords.push(if negate { -c } else { c.clone() }),
                _ => return Err(err(pos, &["rational literal"])),
            }
            pos += 1;
            match toks[pos].0 {
                Tok::Comma => pos += 1,
                Tok::RParen => {
                    pos += 1;
                    break;
                }
                _ => return Err(err(pos, &["`,`", "`)`"])),
            }
        }
    }
    if toks[pos].0 != Tok::End {
        return Err(err(pos, &["end of input"]));
    }
    Ok(Point::new(coords))
}

/// Canonical text with default names `x1..xn`.
pub fn format_polynomial(p: &Polynomial) -> String {
    format_polynomial_with(p, &Variables::indexed(p.num_vars()))
}

/// Canonical text: terms in descending lex order, `a - b` rather than
/// `a + -b`, coefficient `1` omitted. `parse(format(p)) == p`.
pub fn format_polynomial_with(p: &Polynomial, vars: &Variables) -> String {
    assert_eq!(p.num_vars(), vars.len(), "variable list length mismatch");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors = Vec::new();
        if !abs.is_one() || e.is_zero() {
            factors.push(format_rational(&abs));
        }
        for (i, &d) in e.iter().enumerate() {
            match d {
                0 => {}
                1 => factors.push(vars.names()[i].clone()),
                _ => factors.push(format!("{}^{}", vars.names()[i], d)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Contents of a basis file: optional `vars:` header, one polynomial per
/// line, `#` comments.
#[derive(Debug, Clone)]
pub struct BasisFile {
    pub vars: Variables,
    pub polys: Vec<Polynomial>,
}

/// Error while reading a line-oriented input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}: {source}")]
    Line { line: usize, source: ParseError },
    #[error("no variable list: add a `vars:` header or pass one explicitly")]
    MissingVars,
    #[error("header declares vars `{header}` but `{given}` was given")]
    ConflictingVars { header: String, given: String },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_basis_file(text: &str, given: Option<&Variables>) -> Result<BasisFile, FileError> {
    let mut header: Option<Variables> = None;
    let mut bodies = Vec::new();
    for (line_no, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("vars:") {
            if header.is_none() && bodies.is_empty() {
                header = Some(
                    Variables::parse_list(rest).map_err(|source| FileError::Line {
                        line: line_no,
                        source,
                    })?,
                );
                continue;
            }
        }
        bodies.push((line_no, line));
    }
    let vars = match (header, given) {
        (Some(h), Some(g)) if &h != g => {
            return Err(FileError::ConflictingVars {
                header: h.to_string(),
                given: g.to_string(),
            })
        }
        (Some(h), _) => h,
        (None, Some(g)) => g.clone(),
        (None, None) => return Err(FileError::MissingVars),
    };
    let polys = bodies
        .into_iter()
        .map(|(line, text)| {
            parse_polynomial(text, &vars).map_err(|source| FileError::Line { line, source })
        })
        .collect::<Result<_, _>>()?;
    Ok(BasisFile { vars, polys })
}

/// One point per line, `#` comments.
pub fn parse_points_file(text: &str) -> Result<Vec<Point>, FileError> {
    content_lines(text)
        .map(|(line, text)| parse_point(text).map_err(|source| FileError::Line { line, source }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn vars(s: &str) -> Variables {
        Variables::parse_list(s).unwrap()
    }

    #[test]
    fn circle_and_counterexample() {
        let circle = parse_polynomial("x^2 + y^2 - 1", &vars("x,y")).unwrap();
        let expected = Polynomial::from_terms(
            2,
            [
                (vec![2, 0], int(1)),
                (vec![0, 2], int(1)),
                (vec![0, 0], int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(circle, expected);
        let f = parse_polynomial("x*z - y^2", &vars("x,y,z")).unwrap();
        let expected =
            Polynomial::from_terms(3, [(vec![1, 0, 1], int(1)), (vec![0, 2, 0], int(-1))]).unwrap();
        assert_eq!(f, expected);
        assert!(parse_polynomial("0", &vars("x")).unwrap().is_zero());
    }

    #[test]
    fn precedence() {
        let v = vars("x");
        // ^ binds tighter than unary minus.
        assert_eq!(
            parse_polynomial("-x^2", &v).unwrap(),
            -parse_polynomial("x^2", &v).unwrap()
        );
        assert_eq!(
            parse_polynomial("2 - 3 - 4", &v).unwrap(),
            Polynomial::constant(1, int(-5))
        );
        assert_eq!(
            parse_polynomial("3/4*x", &v).unwrap(),
            Polynomial::var(1, 0).unwrap().scale(&rat(3, 4))
        );
        assert_eq!(
            parse_polynomial("(x + 1)^2", &v).unwrap(),
            parse_polynomial("x^2 + 2*x + 1", &v).unwrap()
        );
    }

    #[test]
    fn errors_carry_spans() {
        let v = vars("x,y");
        let e = parse_polynomial("x + z", &v).unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 4, end: 5 });
        assert!(e.message.contains("unknown variable"));
        let e = parse_polynomial("x^-1", &v).unwrap_err();
        assert!(e.message.contains("negative exponent"));
        let e = parse_polynomial("2x", &v).unwrap_err();
        assert_eq!(e.span.start, 1);
        let e = parse_polynomial("x + ", &v).unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 4, end: 4 });
        assert!(parse_polynomial("1/0", &v).is_err());
        assert!(parse_polynomial("0.5", &v).is_err());
        assert!(parse_polynomial("x^1/2", &v).is_err());
        assert!(parse_polynomial("(x", &v).is_err());
    }

    #[test]
    fn variables_validation() {
        assert!(Variables::parse_list("x,x").is_err());
        assert!(Variables::parse_list("x,2y").is_err());
        assert!(Variables::parse_list("").is_err());
        assert_eq!(Variables::indexed(2).to_string(), "x1,x2");
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("(0, 0)").unwrap(), Point::origin(2));
        assert_eq!(
            parse_point("(1, 0)").unwrap(),
            Point::new(vec![int(1), int(0)])
        );
        assert_eq!(
            parse_point("(3/5, 4/5)").unwrap(),
            Point::new(vec![rat(3, 5), rat(4, 5)])
        );
        assert_eq!(
            parse_point("(1/2, -3, 0)").unwrap(),
            Point::new(vec![rat(1, 2), int(-3), int(0)])
        );
        assert!(parse_point("(1/2,").is_err());
        assert!(parse_point("1, 2").is_err());
        assert!(parse_point("(x)").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_polynomial(&Polynomial::zero(2)), "0");
        let x1x2 = parse_polynomial("x1*x2", &vars("x1,x2")).unwrap();
        assert_eq!(format_polynomial(&x1x2), "x1*x2");
        let circle = parse_polynomial("-1 + y^2 + x^2", &vars("x,y")).unwrap();
        assert_eq!(
            format_polynomial_with(&circle, &vars("x,y")),
            "x^2 + y^2 - 1"
        );
        let r = parse_polynomial("y^2 - 3/4", &vars("x,y")).unwrap();
        assert_eq!(format_polynomial_with(&r, &vars("x,y")), "y^2 - 3/4");
        let neg = parse_polynomial("-2/3*x*y + 1", &vars("x,y")).unwrap();
        assert_eq!(format_polynomial_with(&neg, &vars("x,y")), "-2/3*x*y + 1");
    }

    #[test]
    fn basis_file() {
        let text = "# circle\nvars: x,y\nx^2 + y^2 - 1\n\ny - x  # a line\n";
        let b = parse_basis_file(text, None).unwrap();
        assert_eq!(b.vars, vars("x,y"));
        assert_eq!(b.polys.len(), 2);
        assert_eq!(
            parse_basis_file("x\n", None).unwrap_err(),
            FileError::MissingVars
        );
        assert!(matches!(
            parse_basis_file("vars: x\nx\n", Some(&vars("y"))),
            Err(FileError::ConflictingVars { .. })
        ));
        let e = parse_basis_file("vars: x\nx +\n", None).unwrap_err();
        assert!(matches!(e, FileError::Line { line: 2, .. }));
        let pts = parse_points_file("(0)\n# c\n(1/2)\n").unwrap();
        assert_eq!(
            pts,
            vec![Point::new(vec![int(0)]), Point::new(vec![rat(1, 2)])]
        );
    }
}
