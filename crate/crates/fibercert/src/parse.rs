//! Polynomial expression and problem-file parsing, plus the canonical
//! renderer that round-trips with the parser.
//!
//! Expression grammar (whitespace-insensitive, LL(1)):
//!
//! ```text
//! expr     := '-'? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! rational := uint ('/' uint)?
//! var      := 'x' | 'y' | 'z' | 'w' | 'x' uint
//! ```
//!
//! `x, y, z, w` alias `x1..x4` when there are at most four variables; with
//! five or more variables only the indexed `x<k>` names are recognized.
//! Explicit `*` is required between factors and `^` takes a literal
//! non-negative integer exponent. Parenthesized subexpressions are expanded
//! eagerly, so parsing always yields a canonical sparse polynomial.
//!
//! Problem files are line-oriented UTF-8 with `#` comments and keys
//! `n`, `p<k>`, `g<i><j>`, `alpha`, `target`, `assume_det_nonvanishing`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{MultiPoly, PolyMap};

/// Parse failure with 1-based line/column position.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str, start_line: usize, start_col: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = start_line;
    let mut col = start_col;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                chars.next();
                col += 1;
                let tok = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(Spanned { tok, line: tline, col: tcol });
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let value = digits.parse::<BigInt>().expect("digit string");
                out.push(Spanned { tok: Tok::Int(value), line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        name.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(name), line: tline, col: tcol });
            }
            other => {
                return Err(ParseError::new(tline, tcol, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

/// How identifier tokens map to variable indices.
enum VarTable<'a> {
    /// `x,y,z,w` aliases plus `x<k>`, for a fixed variable count.
    Canonical(usize),
    /// Explicit names, matched verbatim.
    Named(&'a [String]),
}

impl VarTable<'_> {
    fn nvars(&self) -> usize {
        match self {
            VarTable::Canonical(n) => *n,
            VarTable::Named(names) => names.len(),
        }
    }

    fn resolve(&self, name: &str) -> Option<usize> {
        match self {
            VarTable::Named(names) => names.iter().position(|n| n == name),
            VarTable::Canonical(nvars) => {
                if *nvars <= 4 {
                    if let Some(i) = ["x", "y", "z", "w"].iter().position(|&a| a == name) {
                        return (i < *nvars).then_some(i);
                    }
                }
                let digits = name.strip_prefix('x')?;
                if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                    return None;
                }
                let k: usize = digits.parse().ok()?;
                (1 <= k && k <= *nvars).then(|| k - 1)
            }
        }
    }
}

struct ExprParser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: VarTable<'a>,
    end_line: usize,
    end_col: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or((self.end_line, self.end_col), |t| (t.line, t.col))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, message)
    }

    fn parse_expr(&mut self) -> Result<MultiPoly, ParseError> {
        let nvars = self.vars.nvars();
        let mut negate_first = false;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus)) {
            self.next();
            negate_first = true;
        }
        let mut acc = self.parse_term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        debug_assert_eq!(acc.nvars(), nvars);
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek().map(|t| &t.tok), Some(Tok::Star)) {
            self.next();
            let f = self.parse_factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.parse_base()?;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Caret)) {
            self.next();
            let (line, col) = self.here();
            match self.next().map(|t| t.tok) {
                Some(Tok::Int(k)) => {
                    let k: u32 = k.try_into().map_err(|_| {
                        ParseError::new(line, col, "exponent too large")
                    })?;
                    return Ok(base.power(k));
                }
                _ => {
                    return Err(ParseError::new(
                        line,
                        col,
                        "exponent must be a non-negative integer literal",
                    ));
                }
            }
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> Result<MultiPoly, ParseError> {
        let nvars = self.vars.nvars();
        let (line, col) = self.here();
        match self.next().map(|t| t.tok) {
            Some(Tok::Int(n)) => {
                // Optional '/ uint' completes a rational literal.
                if matches!(self.peek().map(|t| &t.tok), Some(Tok::Slash)) {
                    self.next();
                    let (dline, dcol) = self.here();
                    match self.next().map(|t| t.tok) {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(ParseError::new(dline, dcol, "zero denominator"));
                            }
                            Ok(MultiPoly::constant(nvars, BigRational::new(n, d)))
                        }
                        _ => Err(ParseError::new(
                            dline,
                            dcol,
                            "expected integer denominator after '/'",
                        )),
                    }
                } else {
                    Ok(MultiPoly::constant(nvars, BigRational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.vars.resolve(&name) {
                Some(i) => Ok(MultiPoly::variable(nvars, i)),
                None => Err(ParseError::new(line, col, format!("unknown variable '{name}'"))),
            },
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                match self.next().map(|t| t.tok) {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some(tok) => Err(ParseError::new(line, col, format!("unexpected token {tok:?}"))),
            None => Err(ParseError::new(line, col, "unexpected end of expression")),
        }
    }
}

fn parse_with_table(
    text: &str,
    vars: VarTable<'_>,
    start_line: usize,
    start_col: usize,
) -> Result<MultiPoly, ParseError> {
    let toks = tokenize(text, start_line, start_col)?;
    let end_col = start_col + text.chars().count();
    let mut parser = ExprParser { toks, pos: 0, vars, end_line: start_line, end_col };
    let poly = parser.parse_expr()?;
    if let Some(extra) = parser.peek() {
        return Err(ParseError::new(
            extra.line,
            extra.col,
            format!("unexpected trailing token {:?}", extra.tok),
        ));
    }
    Ok(poly)
}

/// Parse an expression in the canonical variables for `nvars`.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly, ParseError> {
    assert!(nvars >= 1, "nvars must be positive");
    parse_with_table(text, VarTable::Canonical(nvars), 1, 1)
}

/// Parse an expression with explicit variable names (matched verbatim).
///
/// Useful for ad-hoc aliases like a chain variable `h`; problem files always
/// use the canonical names.
pub fn parse_poly_with_vars(text: &str, names: &[String]) -> Result<MultiPoly, ParseError> {
    assert!(!names.is_empty(), "need at least one variable name");
    parse_with_table(text, VarTable::Named(names), 1, 1)
}

/// Canonical display name of variable `i` (zero-based) among `nvars`.
pub fn var_name(i: usize, nvars: usize) -> String {
    if nvars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn render_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical rendering: terms in descending graded-lex order, explicit `*`
/// between factors, `a/b` rationals. Round-trips through `parse_poly`.
pub fn render(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let nvars = p.nvars();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_unit() {
            factors.push(render_coeff(&abs));
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(var_name(i, nvars)),
                _ => factors.push(format!("{}^{}", var_name(i, nvars), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Full problem statement: a square map plus the auxiliary data the
/// certification rules consume. Missing fields take documented defaults
/// (identity matrix, all-ones exponents, origin target).
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub nvars: usize,
    pub map: PolyMap,
    /// Explicit combination matrix, when the problem file supplied one.
    pub gmatrix: Option<Vec<Vec<MultiPoly>>>,
    /// Per-component exponents, all >= 1.
    pub alpha: Vec<u32>,
    pub target: Vec<BigRational>,
    pub assume_det_nonvanishing: bool,
    /// Which defaults were applied while parsing, for report echoes.
    pub applied_defaults: Vec<String>,
}

impl ProblemSpec {
    /// Wrap a bare map with all defaults.
    pub fn from_map(map: PolyMap) -> Self {
        let nvars = map.nvars();
        ProblemSpec {
            nvars,
            map,
            gmatrix: None,
            alpha: vec![1; nvars],
            target: vec![BigRational::zero(); nvars],
            assume_det_nonvanishing: false,
            applied_defaults: vec![
                "gmatrix = identity".into(),
                "alpha = all ones".into(),
                "target = origin".into(),
            ],
        }
    }

    /// The combination matrix in effect: explicit or identity.
    pub fn effective_gmatrix(&self) -> Vec<Vec<MultiPoly>> {
        match &self.gmatrix {
            Some(g) => g.clone(),
            None => identity_matrix(self.nvars),
        }
    }
}

/// Identity matrix of polynomials.
pub fn identity_matrix(nvars: usize) -> Vec<Vec<MultiPoly>> {
    (0..nvars)
        .map(|i| {
            (0..nvars)
                .map(|j| if i == j { MultiPoly::one(nvars) } else { MultiPoly::zero(nvars) })
                .collect()
        })
        .collect()
}

/// Parse a signed rational literal like `-3/4` or `7`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let t = text.trim();
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (-1, r.trim()),
        None => (1, t),
    };
    let (num_str, den_str) = match rest.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (rest, "1"),
    };
    let bad = |msg: &str| ParseError::new(1, 1, format!("{msg}: '{text}'"));
    if num_str.is_empty() || !num_str.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("malformed rational"));
    }
    if den_str.is_empty() || !den_str.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("malformed rational"));
    }
    let num: BigInt = num_str.parse().unwrap();
    let den: BigInt = den_str.parse().unwrap();
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num * BigInt::from(sign), den))
}

/// Parse a problem file into a fully populated `ProblemSpec`.
pub fn parse_problem_file(text: &str) -> Result<ProblemSpec, ParseError> {
    struct Line<'a> {
        no: usize,
        key: &'a str,
        value: &'a str,
        value_col: usize,
    }

    let mut lines: Vec<Line> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let eq = content.find('=').ok_or_else(|| {
            ParseError::new(no, 1, "expected 'key = value'")
        })?;
        let key = content[..eq].trim();
        let value_raw = &content[eq + 1..];
        let leading_ws = value_raw.len() - value_raw.trim_start().len();
        lines.push(Line {
            no,
            key,
            value: value_raw.trim(),
            value_col: eq + 2 + leading_ws,
        });
    }

    // Variable count first; everything else depends on it.
    let mut nvars: Option<usize> = None;
    for l in &lines {
        if l.key == "n" {
            if nvars.is_some() {
                return Err(ParseError::new(l.no, 1, "duplicate 'n'"));
            }
            let v: usize = l
                .value
                .parse()
                .map_err(|_| ParseError::new(l.no, l.value_col, "n must be a positive integer"))?;
            if v == 0 {
                return Err(ParseError::new(l.no, l.value_col, "n must be a positive integer"));
            }
            nvars = Some(v);
        }
    }
    let n = nvars.ok_or_else(|| ParseError::new(1, 1, "missing n"))?;

    let mut components: Vec<Option<MultiPoly>> = vec![None; n];
    let mut gentries: Vec<Vec<Option<MultiPoly>>> = vec![vec![None; n]; n];
    let mut any_g = false;
    let mut alpha: Option<Vec<u32>> = None;
    let mut target: Option<Vec<BigRational>> = None;
    let mut assume = false;

    let parse_expr_at = |l: &Line| -> Result<MultiPoly, ParseError> {
        parse_with_table(l.value, VarTable::Canonical(n), l.no, l.value_col)
    };

    for l in &lines {
        let key = l.key;
        if key == "n" {
            continue;
        }
        if let Some(k) = key.strip_prefix('p') {
            if k.chars().all(|c| c.is_ascii_digit()) && !k.is_empty() {
                let idx: usize = k
                    .parse()
                    .map_err(|_| ParseError::new(l.no, 1, format!("bad component index '{key}'")))?;
                if idx == 0 || idx > n {
                    return Err(ParseError::new(
                        l.no,
                        1,
                        format!("component index {idx} out of range 1..={n}"),
                    ));
                }
                if components[idx - 1].is_some() {
                    return Err(ParseError::new(l.no, 1, format!("duplicate '{key}'")));
                }
                components[idx - 1] = Some(parse_expr_at(l)?);
                continue;
            }
        }
        if let Some(k) = key.strip_prefix('g') {
            if k.len() == 2 && k.chars().all(|c| c.is_ascii_digit()) {
                if n > 9 {
                    return Err(ParseError::new(
                        l.no,
                        1,
                        "explicit g-matrix entries are supported for n <= 9",
                    ));
                }
                let i = k[0..1].parse::<usize>().unwrap();
                let j = k[1..2].parse::<usize>().unwrap();
                if i == 0 || i > n || j == 0 || j > n {
                    return Err(ParseError::new(
                        l.no,
                        1,
                        format!("matrix index ({i},{j}) out of range 1..={n}"),
                    ));
                }
                if gentries[i - 1][j - 1].is_some() {
                    return Err(ParseError::new(l.no, 1, format!("duplicate '{key}'")));
                }
                gentries[i - 1][j - 1] = Some(parse_expr_at(l)?);
                any_g = true;
                continue;
            }
        }
        match key {
            "alpha" => {
                let mut vals = Vec::new();
                for piece in l.value.split(',') {
                    let v: u32 = piece.trim().parse().map_err(|_| {
                        ParseError::new(l.no, l.value_col, "alpha entries must be positive integers")
                    })?;
                    if v == 0 {
                        return Err(ParseError::new(l.no, l.value_col, "alpha entries must be >= 1"));
                    }
                    vals.push(v);
                }
                if vals.len() != n {
                    return Err(ParseError::new(
                        l.no,
                        l.value_col,
                        format!("alpha has {} entries, expected {n}", vals.len()),
                    ));
                }
                alpha = Some(vals);
            }
            "target" => {
                let mut vals = Vec::new();
                for piece in l.value.split(',') {
                    let r = parse_rational(piece).map_err(|e| {
                        ParseError::new(l.no, l.value_col, e.message)
                    })?;
                    vals.push(r);
                }
                if vals.len() != n {
                    return Err(ParseError::new(
                        l.no,
                        l.value_col,
                        format!("target has {} entries, expected {n}", vals.len()),
                    ));
                }
                target = Some(vals);
            }
            "assume_det_nonvanishing" => {
                assume = match l.value {
                    "true" => true,
                    "false" => false,
                    _ => {
                        return Err(ParseError::new(
                            l.no,
                            l.value_col,
                            "assume_det_nonvanishing must be 'true' or 'false'",
                        ))
                    }
                };
            }
            _ => {
                return Err(ParseError::new(l.no, 1, format!("unknown key '{key}'")));
            }
        }
    }

    let mut comps = Vec::with_capacity(n);
    for (idx, c) in components.into_iter().enumerate() {
        match c {
            Some(p) => comps.push(p),
            None => {
                return Err(ParseError::new(
                    1,
                    1,
                    format!("missing component p{} (file declares n = {n})", idx + 1),
                ))
            }
        }
    }

    let gmatrix = if any_g {
        let mut rows = Vec::with_capacity(n);
        for (i, row) in gentries.into_iter().enumerate() {
            let mut cells = Vec::with_capacity(n);
            for (j, cell) in row.into_iter().enumerate() {
                match cell {
                    Some(p) => cells.push(p),
                    None => {
                        return Err(ParseError::new(
                            1,
                            1,
                            format!("malformed matrix block: missing g{}{}", i + 1, j + 1),
                        ))
                    }
                }
            }
            rows.push(cells);
        }
        Some(rows)
    } else {
        None
    };

    let mut applied_defaults = Vec::new();
    if gmatrix.is_none() {
        applied_defaults.push("gmatrix = identity".to_string());
    }
    if alpha.is_none() {
        applied_defaults.push("alpha = all ones".to_string());
    }
    if target.is_none() {
        applied_defaults.push("target = origin".to_string());
    }

    Ok(ProblemSpec {
        nvars: n,
        map: PolyMap::new(comps),
        gmatrix,
        alpha: alpha.unwrap_or_else(|| vec![1; n]),
        target: target.unwrap_or_else(|| vec![BigRational::zero(); n]),
        assume_det_nonvanishing: assume,
        applied_defaults,
    })
}

/// Render a map as a problem file in the documented format.
pub fn render_problem_file(map: &PolyMap, comment: &str) -> String {
    let mut out = String::new();
    if !comment.is_empty() {
        for line in comment.lines() {
            out.push_str(&format!("# {line}\n"));
        }
    }
    out.push_str(&format!("n = {}\n", map.nvars()));
    for (j, p) in map.components().iter().enumerate() {
        out.push_str(&format!("p{} = {}\n", j + 1, render(p)));
    }
    out
}
