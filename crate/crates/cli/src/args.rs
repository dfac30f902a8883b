//! Parsers for the argument syntaxes that are not algebra elements.

use csalg::algebra::parse_scalar;
use csalg::mu_dynamics::{doubling_orbit, SquareClosedSet};
use csalg::representations::{make_character, make_rep, Character, Matrix, MatrixRep, Mode};
use csalg::Cyclotomic;

use crate::CliError;

/// A parsed `pi(...)` or `chi(...)` descriptor.
#[derive(Clone, Debug)]
pub enum RepArg {
    Rep(MatrixRep),
    Character(Character),
}

/// Splits on `sep` outside parentheses and brackets.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `N:e` for the doubling orbit of `e`, or `N:e1,e2,...` for an explicit set.
pub fn parse_k(s: &str) -> Result<SquareClosedSet, CliError> {
    let (n, rest) = s.split_once(':').ok_or_else(|| usage(format!("expected N:e or N:e1,e2,... in '{s}'")))?;
    let n: u64 = n.trim().parse().map_err(|_| usage(format!("bad modulus in '{s}'")))?;
    let exps = rest
        .split(',')
        .map(|e| e.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| usage(format!("bad residue list in '{s}'")))?;
    if let [e] = exps[..] {
        return Ok(doubling_orbit(n, e)?.as_set().clone());
    }
    Ok(SquareClosedSet::new(n, exps)?)
}

fn parse_fields<'a>(body: &'a str, keys: &[&str]) -> Result<Vec<(&'a str, &'a str)>, CliError> {
    let mut out = Vec::new();
    for part in split_top(body, ',') {
        let (k, v) = part.split_once('=').ok_or_else(|| usage(format!("expected key=value, got '{part}'")))?;
        let k = k.trim();
        if !keys.contains(&k) {
            return Err(usage(format!("unknown key '{k}'")));
        }
        out.push((k, v.trim()));
    }
    Ok(out)
}

fn lookup<'a>(fields: &[(&str, &'a str)], key: &str) -> Option<&'a str> {
    fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

fn required<'a>(fields: &[(&str, &'a str)], key: &str) -> Result<&'a str, CliError> {
    lookup(fields, key).ok_or_else(|| usage(format!("missing key '{key}'")))
}

fn mode_of(fields: &[(&str, &str)]) -> Result<Mode, CliError> {
    match lookup(fields, "mode") {
        None => Ok(Mode::Banach),
        Some(m) => m.parse().map_err(|_| usage(format!("unknown mode '{m}'"))),
    }
}

/// `pi(k=2,e=1,gamma=1/2[,mode=algebraic])` or `chi(x=..,y=..[,mode=..])`.
pub fn parse_rep(s: &str) -> Result<RepArg, CliError> {
    let s = s.trim();
    let body = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
    if let Some(b) = body("pi(") {
        let f = parse_fields(b, &["k", "e", "gamma", "mode"])?;
        let k = required(&f, "k")?.parse().map_err(|_| usage("bad k"))?;
        let e = required(&f, "e")?.parse().map_err(|_| usage("bad e"))?;
        let gamma = lookup(&f, "gamma").map_or(Ok(Cyclotomic::one()), parse_scalar)?;
        return Ok(RepArg::Rep(make_rep(k, e, gamma, mode_of(&f)?)?));
    }
    if let Some(b) = body("chi(") {
        let f = parse_fields(b, &["x", "y", "mode"])?;
        let x = parse_scalar(required(&f, "x")?)?;
        let y = parse_scalar(required(&f, "y")?)?;
        return Ok(RepArg::Character(make_character(x, y, mode_of(&f)?)?));
    }
    Err(usage(format!("expected pi(...) or chi(...), got '{s}'")))
}

/// `[[a, b], [c, d]]`.
pub fn parse_matrix(s: &str) -> Result<Matrix, CliError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| usage(format!("expected [[..],..], got '{s}'")))?;
    let rows = split_top(inner, ',')
        .into_iter()
        .map(|row| {
            let row = row
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| usage(format!("bad matrix row '{row}'")))?;
            split_top(row, ',').into_iter().map(|c| Ok(parse_scalar(c)?)).collect()
        })
        .collect::<Result<Vec<Vec<Cyclotomic>>, CliError>>()?;
    Matrix::from_rows(rows).map_err(|e| usage(e.to_string()))
}
