//! Text formats: noncommutative polynomials, presentation files, machine
//! configurations and rewrite traces.
//!
//! A presentation file looks like
//!
//! ```text
//! # comment
//! name: example
//! field: QQ
//! alphabet: x y z
//! precedence: z > y > x
//! order: deglex
//! rel y x = x y
//! rel z z = 2*x - 1/3*y
//! ```
//!
//! `precedence` is optional (declaration order, first highest), `order` is
//! `deglex` or `wreath <heavy symbols...>`. Words are whitespace-separated
//! symbol names; the built-in presentations are addressable as
//! `@minsky-nil` and `@minsky-zd`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{Alphabet, Field, MonomialOrder, NcPolynomial, OrderKind, Scalar, Word};
use crate::minsky::{self, MachineConfig, Mode};
use crate::rewrite::{Presentation, RewriteStep};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Symbol(String),
    Plus,
    Minus,
    Star,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((col, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Token::Star));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
                let mut value = BigRational::from_integer(num);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(Error::parse(line, i + 1, "expected denominator"));
                    }
                    let den: BigInt = chars[dstart..i].iter().collect::<String>().parse().unwrap();
                    if den == BigInt::from(0) {
                        return Err(Error::parse(line, dstart + 1, "zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                out.push((col, Token::Number(value)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push((col, Token::Symbol(chars[start..i].iter().collect())));
            }
            other => return Err(Error::parse(line, col, format!("unexpected `{other}`"))),
        }
    }
    Ok(out)
}

/// Parses `2*x y - 1/3*z + 1`-style text. A term is an optional coefficient
/// (optionally followed by `*`) and a whitespace-separated word; `0` is the
/// zero polynomial and a bare number is a multiple of the unit.
pub fn parse_polynomial(text: &str, alphabet: &Alphabet, field: Field) -> Result<NcPolynomial> {
    parse_polynomial_at(text, alphabet, field, 1, 0)
}

fn parse_polynomial_at(
    text: &str,
    alphabet: &Alphabet,
    field: Field,
    line: usize,
    col_offset: usize,
) -> Result<NcPolynomial> {
    let tokens = tokenize(text, line).map_err(|e| shift(e, col_offset))?;
    let err = |col: usize, msg: &str| Error::parse(line, col + col_offset, msg);
    if tokens.is_empty() {
        return Err(err(1, "empty polynomial"));
    }
    let mut poly = NcPolynomial::zero(field);
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = BigRational::one();
        match &tokens[i].1 {
            Token::Plus => i += 1,
            Token::Minus => {
                sign = -sign;
                i += 1;
            }
            _ if first => {}
            _ => return Err(err(tokens[i].0, "expected `+` or `-` between terms")),
        }
        first = false;
        let term_col = tokens.get(i).map(|t| t.0).unwrap_or(text.len() + 1);
        let mut coeff = sign;
        let mut has_number = false;
        if let Some((_, Token::Number(q))) = tokens.get(i) {
            coeff *= q;
            has_number = true;
            i += 1;
            if let Some((_, Token::Star)) = tokens.get(i) {
                i += 1;
            }
        }
        let mut letters = Vec::new();
        while let Some((col, Token::Symbol(name))) = tokens.get(i) {
            letters.push(
                alphabet
                    .id(name)
                    .map_err(|_| err(*col, &format!("unknown symbol `{name}`")))?,
            );
            i += 1;
        }
        if !has_number && letters.is_empty() {
            return Err(err(term_col, "expected a term"));
        }
        let scalar =
            Scalar::from_rational(field, &coeff).map_err(|e| err(term_col, &e.to_string()))?;
        poly.add_term(Word::from(letters), scalar);
    }
    Ok(poly)
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column: column + offset,
            message,
        },
        other => other,
    }
}

/// Renders terms in descending `order`; `0` for the zero polynomial.
pub fn format_polynomial(p: &NcPolynomial, alphabet: &Alphabet, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Word, &Scalar)> = p.terms().collect();
    terms.sort_by(|(u, _), (v, _)| order.cmp(v, u));
    let mut out = String::new();
    for (i, (w, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { c.neg() } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if w.is_empty() {
            out.push_str(&magnitude.to_string());
        } else {
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&alphabet.render(w));
        }
    }
    out
}

/// Resolves `@minsky-nil` / `@minsky-zd`; anything else is parsed as
/// presentation text.
pub fn builtin(name: &str) -> Option<Presentation> {
    match name {
        "@minsky-nil" => Some(minsky::build_presentation(Mode::Nilpotency)),
        "@minsky-zd" => Some(minsky::build_presentation(Mode::ZeroDivisor)),
        _ => None,
    }
}

/// Parses a presentation file (or a built-in name).
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    if let Some(p) = builtin(text.trim()) {
        return Ok(p);
    }
    let mut name = String::from("unnamed");
    let mut field = Field::Rational;
    let mut names: Option<Vec<String>> = None;
    let mut precedence: Option<Vec<String>> = None;
    let mut order_spec: Option<(usize, Vec<String>)> = None;
    let mut rels: Vec<(usize, usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("rel ") {
            let Some(eq) = rest.find('=') else {
                return Err(Error::parse(line, indent + 1, "relation needs `=`"));
            };
            let lhs_col = indent + 4;
            rels.push((
                line,
                lhs_col,
                rest[..eq].to_string(),
                rest[eq + 1..].to_string(),
            ));
            continue;
        }
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(Error::parse(
                line,
                indent + 1,
                "expected `key: value` or `rel ...`",
            ));
        };
        let value = value.trim();
        match key.trim() {
            "name" => name = value.to_string(),
            "field" => {
                field = value
                    .parse()
                    .map_err(|e: Error| Error::parse(line, indent + 1, e.to_string()))?
            }
            "alphabet" => names = Some(value.split_whitespace().map(String::from).collect()),
            "precedence" => {
                precedence = Some(
                    value
                        .split('>')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                )
            }
            "order" => {
                let mut parts = value.split_whitespace();
                let kind = parts.next().unwrap_or("");
                let heavy: Vec<String> = parts.map(String::from).collect();
                match kind {
                    "deglex" if heavy.is_empty() => order_spec = Some((line, Vec::new())),
                    "wreath" if !heavy.is_empty() => order_spec = Some((line, heavy)),
                    _ => {
                        return Err(Error::parse(
                            line,
                            indent + 1,
                            "order must be `deglex` or `wreath <heavy symbols>`",
                        ))
                    }
                }
            }
            other => {
                return Err(Error::parse(
                    line,
                    indent + 1,
                    format!("unknown header `{other}`"),
                ))
            }
        }
    }

    let names = names.ok_or_else(|| Error::parse(1, 1, "missing `alphabet:` header"))?;
    let alphabet = match &precedence {
        Some(prec) => Alphabet::with_precedence(&names, prec),
        None => Alphabet::new(&names),
    }
    .map_err(|e| Error::parse(1, 1, e.to_string()))?;
    let order = match order_spec {
        None => MonomialOrder::deglex(&alphabet),
        Some((_, heavy)) if heavy.is_empty() => MonomialOrder::deglex(&alphabet),
        Some((line, heavy)) => {
            let ids = heavy
                .iter()
                .map(|h| alphabet.id(h))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::parse(line, 1, e.to_string()))?;
            MonomialOrder::wreath(&alphabet, &ids)
                .map_err(|e| Error::parse(line, 1, e.to_string()))?
        }
    };

    let mut relations = Vec::with_capacity(rels.len());
    for (line, col, lhs, rhs) in rels {
        let lead = parse_polynomial_at(&lhs, &alphabet, field, line, col)?;
        let tail = parse_polynomial_at(&rhs, &alphabet, field, line, col + lhs.len() + 1)?;
        let lead_word = match lead.terms().next() {
            Some((w, c)) if lead.is_monomial() && c.is_one() => w.clone(),
            _ => {
                return Err(Error::parse(
                    line,
                    col + 1,
                    "left side of a relation must be a single word",
                ))
            }
        };
        let oriented = tail
            .words()
            .all(|w| order.cmp(&lead_word, w) == Ordering::Greater);
        if !oriented {
            return Err(Error::Orientation {
                relation: format!("line {line}: {} = {}", lhs.trim(), rhs.trim()),
            });
        }
        relations.push((lead_word, tail));
    }
    Presentation::from_relations(name, alphabet, order, field, relations)
}

/// Writes a presentation in the file format read by [`parse_presentation`].
pub fn serialize_presentation(pres: &Presentation) -> String {
    let alphabet = pres.alphabet();
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", pres.name()));
    out.push_str(&format!("field: {}\n", pres.field()));
    out.push_str(&format!("alphabet: {}\n", alphabet.names().join(" ")));
    out.push_str(&format!(
        "precedence: {}\n",
        alphabet.precedence().join(" > ")
    ));
    match pres.order().kind() {
        OrderKind::DegLex => out.push_str("order: deglex\n"),
        OrderKind::Wreath { heavy } => {
            let names: Vec<&str> = heavy.iter().map(|&h| alphabet.name(h)).collect();
            out.push_str(&format!("order: wreath {}\n", names.join(" ")));
        }
    }
    for rule in pres.rules() {
        out.push_str(&format!(
            "rel {} = {}\n",
            alphabet.render(&rule.lead),
            format_polynomial(&rule.tail, alphabet, pres.order())
        ));
    }
    out
}

/// Parses `state:2 current:3 left:[3] right:[0,1]`.
pub fn parse_config(text: &str) -> Result<MachineConfig> {
    let mut state = None;
    let mut current = None;
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let (key, after) = rest
            .split_once(':')
            .ok_or_else(|| Error::InvalidConfig(format!("expected `key:value` in `{rest}`")))?;
        let after = after.trim_start();
        let (value, tail) = if after.starts_with('[') {
            let end = after
                .find(']')
                .ok_or_else(|| Error::InvalidConfig("unterminated `[`".into()))?;
            (&after[..=end], &after[end + 1..])
        } else {
            after.split_at(after.find(char::is_whitespace).unwrap_or(after.len()))
        };
        rest = tail.trim_start();
        let int = |v: &str| -> Result<u8> {
            v.trim()
                .parse::<u8>()
                .map_err(|_| Error::InvalidConfig(format!("`{v}` is not a small integer")))
        };
        let list = |v: &str| -> Result<Vec<u8>> {
            let inner = v
                .strip_prefix('[')
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| Error::InvalidConfig(format!("`{v}` is not a list")))?;
            inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(int)
                .collect()
        };
        match key.trim() {
            "state" => state = Some(int(value)?),
            "current" => current = Some(int(value)?),
            "left" => left = list(value)?,
            "right" => right = list(value)?,
            other => return Err(Error::InvalidConfig(format!("unknown field `{other}`"))),
        }
    }
    MachineConfig::new(
        left,
        state.ok_or_else(|| Error::InvalidConfig("missing `state`".into()))?,
        current.ok_or_else(|| Error::InvalidConfig("missing `current`".into()))?,
        right,
    )
}

pub fn format_config(c: &MachineConfig) -> String {
    let list = |v: &[u8]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "state:{} current:{} left:[{}] right:[{}]",
        c.state,
        c.current,
        list(&c.left),
        list(&c.right)
    )
}

/// One line per step: `step#, rule#, position, lead-word, resulting-term-count`.
pub fn format_trace(steps: &[RewriteStep], pres: &Presentation) -> String {
    let mut out = String::new();
    for (i, s) in steps.iter().enumerate() {
        let lead = &pres.rules()[s.rule].lead;
        out.push_str(&format!(
            "{}, {}, {}, {}, {}\n",
            i + 1,
            s.rule,
            s.position,
            pres.alphabet().render(lead),
            s.terms_after
        ));
    }
    out
}

/// A parsed trace line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub step: usize,
    pub rule: usize,
    pub position: usize,
    pub lead: Word,
    pub terms_after: usize,
}

pub fn parse_trace(text: &str, pres: &Presentation) -> Result<Vec<TraceLine>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let fields: Vec<&str> = l.split(',').map(str::trim).collect();
            let bad = |col: usize, msg: &str| Error::parse(i + 1, col, msg);
            if fields.len() != 5 {
                return Err(bad(1, "expected five comma-separated fields"));
            }
            let num = |k: usize| {
                fields[k]
                    .parse::<usize>()
                    .map_err(|_| bad(k + 1, "not a number"))
            };
            Ok(TraceLine {
                step: num(0)?,
                rule: num(1)?,
                position: num(2)?,
                lead: pres
                    .alphabet()
                    .word(fields[3])
                    .map_err(|e| bad(4, &e.to_string()))?,
                terms_after: num(4)?,
            })
        })
        .collect()
}
