//! The line-oriented algebra description format.
//!
//! ```text
//! # comment
//! algebra F1 kind dgla weight-cap 2 arity-cap 2
//! generator x degree 0 weight 1
//! generator u degree 1 weight 1
//! generator v degree 1 weight 2
//! op 2 [x,u] = v
//! element xi = u
//! ```
//!
//! Further statements: `convention factorial|plain` (A∞ Maurer–Cartan
//! factorials) and `path NAME t^K [dt] = TERMS` for polynomial paths.
//! Terms are `COEFF NAME` or `NAME`; words in the tensor algebra are
//! written `a*b`.

use std::collections::HashSet;
use std::fmt::Write as _;

use mcgauge::gauge::NcAlgebra;
use mcgauge::structure::PolyPath;
use mcgauge::{AlgebraSpec, GradedElement, Kind, McConvention, NcPolynomial, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(#[from] mcgauge::Error),
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A linear combination of words in generator names; a word of length one
/// is a generator, the empty word is the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub terms: Vec<(Vec<String>, Rational)>,
}

impl Expr {
    /// Reads the expression as an element of the algebra's vector space.
    pub fn to_graded(&self) -> Result<GradedElement<Rational>, FormatError> {
        let mut out = GradedElement::zero();
        for (w, c) in &self.terms {
            match w.len() {
                0 if c == &Rational::from_integer(0.into()) => {}
                1 => out.add_term(w[0].clone(), c.clone()),
                _ => {
                    return Err(FormatError::Semantic(mcgauge::Error::InvalidInput(
                        format!(
                            "`{}` is not a linear combination of generators",
                            self.display()
                        ),
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Reads the expression as a polynomial in the tensor algebra.
    pub fn to_nc(&self, algebra: &NcAlgebra) -> Result<NcPolynomial<Rational>, FormatError> {
        Ok(algebra.from_named_words(self.terms.iter().cloned())?)
    }

    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::from_integer(0.into());
            let mag = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let word = w.join("*");
            if word.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == Rational::from_integer(1.into()) {
                out.push_str(&word);
            } else {
                let _ = write!(out, "{mag} {word}");
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A parsed algebra file.
#[derive(Debug, Clone)]
pub struct SpecDocument {
    pub spec: AlgebraSpec<Rational>,
    /// Named elements in file order.
    pub elements: Vec<(String, Expr)>,
    /// Named paths in file order.
    pub paths: Vec<(String, PolyPath<Rational>)>,
}

impl SpecDocument {
    pub fn element(&self, name: &str) -> Option<&Expr> {
        self.elements
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
    }

    pub fn path(&self, name: &str) -> Option<&PolyPath<Rational>> {
        self.paths.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// Resolves a command-line argument: a named element, a generator, or
    /// an inline expression such as `2 x - y`.
    pub fn resolve(&self, text: &str) -> Result<Expr, FormatError> {
        if let Some(e) = self.element(text) {
            return Ok(e.clone());
        }
        let declared: HashSet<String> = self
            .spec
            .generators()
            .iter()
            .map(|g| g.name.clone())
            .collect();
        parse_expr(text, 1, 1, &declared)
    }
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str, column0: usize) -> Tokens<'_> {
    let mut items = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                items.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        items.push((s, &text[s..]));
    }
    Tokens {
        items: items
            .into_iter()
            .map(|(i, t)| (column0 + text[..i].chars().count(), t))
            .collect(),
    }
}

fn is_rational(tok: &str) -> bool {
    let mut parts = tok.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let den = parts.next();
    !num.is_empty()
        && num.chars().all(|c| c.is_ascii_digit())
        && den.is_none_or(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
}

fn check_name(name: &str, line: usize, column: usize) -> Result<(), FormatError> {
    let first = name.chars().next();
    if name.is_empty()
        || first.is_some_and(|c| c.is_ascii_digit() || c == '+' || c == '-' || c == '=')
        || name.contains('*')
    {
        return Err(parse_err(line, column, format!("invalid name `{name}`")));
    }
    Ok(())
}

/// Parses `TERM (+|-) TERM …` with names checked against `declared`.
pub fn parse_expr(
    text: &str,
    line: usize,
    column0: usize,
    declared: &HashSet<String>,
) -> Result<Expr, FormatError> {
    // split glued signs such as `-u` or `-1/2`
    let mut toks: Vec<(usize, String)> = Vec::new();
    for (col, t) in tokenize(text, column0).items {
        if t.len() > 1 && (t.starts_with('-') || t.starts_with('+')) {
            toks.push((col, t[..1].to_string()));
            toks.push((col + 1, t[1..].to_string()));
        } else {
            toks.push((col, t.to_string()));
        }
    }
    if toks.is_empty() {
        return Err(parse_err(line, column0, "expected an expression"));
    }
    let mut terms: Vec<(Vec<String>, Rational)> = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut negative = false;
        let (col, tok) = &toks[i];
        if tok == "+" || tok == "-" {
            negative = tok == "-";
            i += 1;
        } else if !first {
            return Err(parse_err(
                line,
                *col,
                format!("expected `+` or `-`, found `{tok}`"),
            ));
        }
        first = false;
        let Some((col, tok)) = toks.get(i) else {
            return Err(parse_err(
                line,
                column0 + text.chars().count(),
                "expression ends after a sign",
            ));
        };
        let mut coeff = Rational::from_integer(1.into());
        let mut word: Vec<String> = Vec::new();
        if is_rational(tok) {
            coeff = tok
                .parse::<Rational>()
                .map_err(|_| parse_err(line, *col, format!("bad number `{tok}`")))?;
            if coeff.denom() == &0.into() {
                return Err(parse_err(line, *col, "zero denominator"));
            }
            i += 1;
            if let Some((c2, t2)) = toks.get(i) {
                if t2 != "+" && t2 != "-" {
                    word = parse_word(t2, line, *c2, declared)?;
                    i += 1;
                }
            }
        } else {
            word = parse_word(tok, line, *col, declared)?;
            i += 1;
        }
        terms.push((word, if negative { -coeff } else { coeff }));
    }
    Ok(Expr { terms })
}

fn parse_word(
    tok: &str,
    line: usize,
    column: usize,
    declared: &HashSet<String>,
) -> Result<Vec<String>, FormatError> {
    let mut out = Vec::new();
    let mut col = column;
    for part in tok.split('*') {
        check_name(part, line, col)?;
        if !declared.contains(part) {
            return Err(parse_err(
                line,
                col,
                format!("undeclared generator `{part}`"),
            ));
        }
        out.push(part.to_string());
        col += part.chars().count() + 1;
    }
    Ok(out)
}

fn expect_keyword(
    toks: &[(usize, &str)],
    i: usize,
    keyword: &str,
    line: usize,
) -> Result<(), FormatError> {
    match toks.get(i) {
        Some((_, t)) if *t == keyword => Ok(()),
        Some((c, t)) => Err(parse_err(
            line,
            *c,
            format!("expected `{keyword}`, found `{t}`"),
        )),
        None => Err(parse_err(line, 1, format!("expected `{keyword}`"))),
    }
}

fn number<T: std::str::FromStr>(
    toks: &[(usize, &str)],
    i: usize,
    what: &str,
    line: usize,
) -> Result<T, FormatError> {
    match toks.get(i) {
        Some((c, t)) => t
            .parse()
            .map_err(|_| parse_err(line, *c, format!("expected {what}, found `{t}`"))),
        None => Err(parse_err(line, 1, format!("expected {what}"))),
    }
}

/// Splits `head = body`, returning the body and its starting column.
fn split_eq(text: &str, line: usize) -> Result<(&str, &str, usize), FormatError> {
    let pos = text
        .find('=')
        .ok_or_else(|| parse_err(line, text.chars().count() + 1, "expected `=`"))?;
    let body = &text[pos + 1..];
    Ok((&text[..pos], body, text[..pos + 1].chars().count() + 1))
}

/// Parses the bracketed key of an `op` line, splitting on top-level commas.
fn parse_key(text: &str, line: usize, column: usize) -> Result<Vec<String>, FormatError> {
    let t = text.trim();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(parse_err(line, column, "expected a key `[G1,...,GI]`"));
    }
    let inner = &t[1..t.len() - 1];
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth -= 1;
                current.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut current)),
            _ => current.push(ch),
        }
    }
    out.push(current);
    Ok(out.into_iter().map(|s| s.trim().to_string()).collect())
}

/// Parses an algebra file.
pub fn parse_spec(text: &str) -> Result<SpecDocument, FormatError> {
    let mut builder = None;
    let mut declared: HashSet<String> = HashSet::new();
    let mut raw_elements: Vec<(String, Expr)> = Vec::new();
    let mut raw_paths: Vec<(String, u32, bool, Expr, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content, 1).items;
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        if builder.is_none() && keyword != "algebra" {
            return Err(parse_err(
                line,
                col,
                "the first statement must be `algebra`",
            ));
        }
        match keyword {
            "algebra" => {
                if builder.is_some() {
                    return Err(parse_err(line, col, "second `algebra` statement"));
                }
                let name = toks
                    .get(1)
                    .ok_or_else(|| parse_err(line, col, "missing algebra name"))?
                    .1;
                expect_keyword(&toks, 2, "kind", line)?;
                let kind: Kind = match toks.get(3) {
                    Some((c, t)) => t.parse().map_err(|_| {
                        parse_err(
                            line,
                            *c,
                            format!("unknown kind `{t}` (dgla, dga, linf, ainf)"),
                        )
                    })?,
                    None => return Err(parse_err(line, 1, "missing kind")),
                };
                expect_keyword(&toks, 4, "weight-cap", line)?;
                let w: u32 = number(&toks, 5, "a weight cap", line)?;
                expect_keyword(&toks, 6, "arity-cap", line)?;
                let a: usize = number(&toks, 7, "an arity cap", line)?;
                if let Some((c, t)) = toks.get(8) {
                    return Err(parse_err(line, *c, format!("unexpected `{t}`")));
                }
                builder = Some(AlgebraSpec::<Rational>::builder(name, kind, w, a));
            }
            "convention" => {
                let c = match toks.get(1) {
                    Some((_, "factorial")) => McConvention::Factorial,
                    Some((_, "plain")) => McConvention::Plain,
                    Some((c, t)) => {
                        return Err(parse_err(line, *c, format!("unknown convention `{t}`")))
                    }
                    None => return Err(parse_err(line, col, "missing convention")),
                };
                builder.as_mut().expect("checked").set_convention(c);
            }
            "generator" => {
                let (c, name) = *toks
                    .get(1)
                    .ok_or_else(|| parse_err(line, col, "missing generator name"))?;
                check_name(name, line, c)?;
                expect_keyword(&toks, 2, "degree", line)?;
                let d: i64 = number(&toks, 3, "a degree", line)?;
                expect_keyword(&toks, 4, "weight", line)?;
                let w: u32 = number(&toks, 5, "a weight", line)?;
                if let Some((c, t)) = toks.get(6) {
                    return Err(parse_err(line, *c, format!("unexpected `{t}`")));
                }
                if !declared.insert(name.to_string()) {
                    return Err(parse_err(
                        line,
                        c,
                        format!("generator `{name}` declared twice"),
                    ));
                }
                builder
                    .as_mut()
                    .expect("checked")
                    .add_generator(mcgauge::Generator::new(name, d, w));
            }
            "op" => {
                let arity: usize = number(&toks, 1, "an arity", line)?;
                let (head, body, body_col) = split_eq(content, line)?;
                let key_start = head
                    .find('[')
                    .ok_or_else(|| parse_err(line, col, "expected a key `[G1,...,GI]`"))?;
                let key_col = head[..key_start].chars().count() + 1;
                let key = parse_key(&head[key_start..], line, key_col)?;
                if key.len() != arity {
                    return Err(parse_err(
                        line,
                        key_col,
                        format!("arity {arity} but the key lists {} generators", key.len()),
                    ));
                }
                for k in &key {
                    if !declared.contains(k) {
                        return Err(parse_err(
                            line,
                            key_col,
                            format!("undeclared generator `{k}`"),
                        ));
                    }
                }
                let value = parse_expr(body, line, body_col, &declared)?.to_graded()?;
                builder.as_mut().expect("checked").add_op(key, value);
            }
            "element" => {
                let (head, body, body_col) = split_eq(content, line)?;
                let htoks = tokenize(head, 1).items;
                if htoks.len() != 2 {
                    return Err(parse_err(line, col, "expected `element NAME = TERMS`"));
                }
                let name = htoks[1].1;
                check_name(name, line, htoks[1].0)?;
                if raw_elements.iter().any(|(n, _)| n == name) {
                    return Err(parse_err(
                        line,
                        htoks[1].0,
                        format!("element `{name}` defined twice"),
                    ));
                }
                raw_elements.push((
                    name.to_string(),
                    parse_expr(body, line, body_col, &declared)?,
                ));
            }
            "path" => {
                let (head, body, body_col) = split_eq(content, line)?;
                let htoks = tokenize(head, 1).items;
                let bad = || parse_err(line, col, "expected `path NAME t^K [dt] = TERMS`");
                if htoks.len() < 3 || htoks.len() > 4 {
                    return Err(bad());
                }
                let power: u32 = htoks[2]
                    .1
                    .strip_prefix("t^")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(bad)?;
                let dt = match htoks.get(3) {
                    None => false,
                    Some((_, "dt")) => true,
                    Some(_) => return Err(bad()),
                };
                let expr = parse_expr(body, line, body_col, &declared)?;
                raw_paths.push((htoks[1].1.to_string(), power, dt, expr, line));
            }
            other => {
                return Err(parse_err(line, col, format!("unknown statement `{other}`")));
            }
        }
    }
    let builder = builder.ok_or_else(|| parse_err(1, 1, "missing `algebra` statement"))?;
    let spec = builder.build()?;
    let mut paths: Vec<(String, PolyPath<Rational>)> = Vec::new();
    for (name, power, dt, expr, _) in raw_paths {
        let e = expr.to_graded()?;
        let idx = match paths.iter().position(|(n, _)| *n == name) {
            Some(i) => i,
            None => {
                paths.push((name, PolyPath::zero()));
                paths.len() - 1
            }
        };
        if dt {
            paths[idx].1.add_dt(power, &e);
        } else {
            paths[idx].1.add_t(power, &e);
        }
    }
    Ok(SpecDocument {
        spec,
        elements: raw_elements,
        paths,
    })
}

/// Canonical text of a document; [`parse_spec`] reads it back unchanged.
pub fn print_spec(doc: &SpecDocument) -> String {
    let spec = &doc.spec;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "algebra {} kind {} weight-cap {} arity-cap {}",
        spec.name(),
        spec.kind(),
        spec.weight_cap(),
        spec.arity_cap()
    );
    if spec.kind() == Kind::Ainf && spec.mc_convention() != McConvention::default() {
        let _ = writeln!(out, "convention {}", spec.mc_convention().as_str());
    }
    for g in spec.generators() {
        let _ = writeln!(
            out,
            "generator {} degree {} weight {}",
            g.name, g.degree, g.weight
        );
    }
    for (key, value) in spec.ops() {
        let names: Vec<&str> = key.iter().map(|g| g.name.as_str()).collect();
        let _ = writeln!(
            out,
            "op {} [{}] = {}",
            key.len(),
            names.join(","),
            value.display(spec)
        );
    }
    for (name, e) in &doc.elements {
        let _ = writeln!(out, "element {name} = {}", e.display());
    }
    for (name, p) in &doc.paths {
        out.push_str(&print_path(name, p, spec));
    }
    out
}

/// `path` statements for a polynomial path.
pub fn print_path(name: &str, p: &PolyPath<Rational>, spec: &AlgebraSpec<Rational>) -> String {
    let mut out = String::new();
    for (k, e) in &p.t_part {
        if !e.is_zero() {
            let _ = writeln!(out, "path {name} t^{k} = {}", e.display(spec));
        }
    }
    for (k, e) in &p.dt_part {
        if !e.is_zero() {
            let _ = writeln!(out, "path {name} t^{k} dt = {}", e.display(spec));
        }
    }
    out
}

/// A document holding just a spec.
pub fn document(spec: AlgebraSpec<Rational>) -> SpecDocument {
    SpecDocument {
        spec,
        elements: Vec::new(),
        paths: Vec::new(),
    }
}
