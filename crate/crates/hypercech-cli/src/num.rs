//! Scenario numbers: JSON numbers or strings such as `"3/4"`, `"sqrt(2)"`, `"1 - 2*sqrt(3)/5"`.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Text(String),
}

impl Num {
    pub fn value(&self) -> Result<f64> {
        match self {
            Num::Float(x) => Ok(*x),
            Num::Text(s) => parse_number(s),
        }
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num::Float(x)
    }
}

pub fn values(v: &[Num]) -> Result<Vec<f64>> {
    v.iter().map(Num::value).collect()
}

/// A sum of signed terms; each term is a product of factors `p`, `p/q` or `sqrt(n)`.
pub fn parse_number(s: &str) -> Result<f64> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        bail!("empty number");
    }
    let mut total = 0.0;
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1.0, &rest[1..]),
            b'-' => (-1.0, &rest[1..]),
            _ if first => (1.0, rest),
            _ => bail!("expected + or - in {s:?}"),
        };
        first = false;
        let end = term_end(body);
        if end == 0 {
            bail!("missing term in {s:?}");
        }
        total += sign * parse_term(&body[..end]).with_context(|| format!("in {s:?}"))?;
        rest = &body[end..];
    }
    Ok(total)
}

/// Position of the next top-level `+`/`-` that is not an exponent sign.
fn term_end(body: &str) -> usize {
    let bytes = body.as_bytes();
    let mut depth = 0;
    for (k, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && k > 0 && !matches!(bytes[k - 1], b'e' | b'E' | b'*' | b'/') => return k,
            _ => {}
        }
    }
    bytes.len()
}

fn parse_term(t: &str) -> Result<f64> {
    let mut value = 1.0;
    for (k, mul) in split_top(t, '*').into_iter().enumerate() {
        let parts = split_top(mul, '/');
        let head = parse_factor(parts[0])?;
        value *= head;
        for d in &parts[1..] {
            let d = parse_factor(d)?;
            if d == 0.0 {
                bail!("division by zero in factor {k}");
            }
            value /= d;
        }
    }
    Ok(value)
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_factor(f: &str) -> Result<f64> {
    if let Some(inner) = f.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let x = parse_number(inner)?;
        if x < 0.0 {
            bail!("sqrt of a negative number");
        }
        return Ok(x.sqrt());
    }
    f.parse::<f64>().with_context(|| format!("not a number: {f:?}"))
}
