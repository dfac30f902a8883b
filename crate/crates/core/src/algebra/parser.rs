//! Recursive-descent parser for algebra elements.
//!
//! ```text
//! Expr   := ('+'|'-')? Term (('+'|'-') Term)*
//! Term   := Factor ('*'? Factor)*
//! Factor := Atom ('^' SignedInt)?
//! Atom   := 'x' | 'y' | 'i' | Rational | 'z' N | 'z{' N '}' | '(' Expr ')'
//! ```
//!
//! Multiplication is noncommutative and left-associative, so `y*x` parses to
//! `x*y^2`. `i` is `zeta_4` and `zN` is `zeta_N`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::AlgebraElement;
use crate::error::{Error, Result};
use crate::exact_arith::{Cyclotomic, MAX_CONDUCTOR};
use crate::semigroup::{SemigroupElement, MAX_X_DEGREE};

// Exponents of general (non root-of-unity, non-y) bases are capped.
const MAX_GENERAL_POWER: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    X,
    Y,
    I,
    Zeta(u64),
    Num(BigRational),
    Int(BigInt), // unsigned integer literal; also usable as a rational
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let Some(&c) = self.chars.get(self.pos) else { break };
            let start = self.pos;
            let tok = match c {
                'x' => {
                    self.pos += 1;
                    Tok::X
                }
                'y' => {
                    self.pos += 1;
                    Tok::Y
                }
                'i' => {
                    self.pos += 1;
                    Tok::I
                }
                '+' => {
                    self.pos += 1;
                    Tok::Plus
                }
                '-' => {
                    self.pos += 1;
                    Tok::Minus
                }
                '*' => {
                    self.pos += 1;
                    Tok::Star
                }
                '^' => {
                    self.pos += 1;
                    Tok::Caret
                }
                '(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                ')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                'z' => {
                    self.pos += 1;
                    let braced = self.chars.get(self.pos) == Some(&'{');
                    if braced {
                        self.pos += 1;
                    }
                    let d = self
                        .digits()
                        .ok_or_else(|| Error::parse(start, "expected conductor after 'z'"))?;
                    if braced {
                        if self.chars.get(self.pos) != Some(&'}') {
                            return Err(Error::parse(self.pos, "expected '}'"));
                        }
                        self.pos += 1;
                    }
                    let n: u64 = d
                        .parse()
                        .ok()
                        .filter(|&n| (1..=MAX_CONDUCTOR).contains(&n))
                        .ok_or_else(|| Error::parse(start, format!("invalid conductor {d}")))?;
                    Tok::Zeta(n)
                }
                c if c.is_ascii_digit() => {
                    let p: BigInt = self.digits().expect("digit").parse().expect("digits");
                    // a '/' directly after an integer makes a rational literal
                    let save = self.pos;
                    self.skip_ws();
                    if self.chars.get(self.pos) == Some(&'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let q = self
                            .digits()
                            .ok_or_else(|| Error::parse(self.pos, "expected denominator"))?;
                        let q: BigInt = q.parse().expect("digits");
                        if q.is_zero() {
                            return Err(Error::parse(start, "zero denominator"));
                        }
                        Tok::Num(BigRational::new(p, q))
                    } else {
                        self.pos = save;
                        Tok::Int(p)
                    }
                }
                other => return Err(Error::parse(start, format!("unexpected character '{other}'"))),
            };
            out.push((start, tok));
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(t: Option<&Tok>) -> bool {
        matches!(
            t,
            Some(Tok::X | Tok::Y | Tok::I | Tok::Zeta(_) | Tok::Num(_) | Tok::Int(_) | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.bump();
                let pos = self.pos();
                if !Self::starts_factor(self.peek()) {
                    return Err(Error::parse(pos, "expected a factor after '*'"));
                }
            } else if !Self::starts_factor(self.peek()) {
                return Ok(acc);
            }
            let pos = self.pos();
            let rhs = self.factor()?;
            acc = acc
                .checked_product(&rhs)
                .map_err(|e| Error::parse(pos, e.to_string()))?;
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                neg = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            _ => Err(Error::parse(pos, "expected an integer exponent")),
        }
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        let pos = self.pos();
        let atom = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(atom.into_element());
        }
        self.bump();
        let epos = self.pos();
        let k = self.signed_int()?;
        atom.power(&k, pos, epos)
    }

    fn atom(&mut self) -> Result<Atom> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::X) => Ok(Atom::X),
            Some(Tok::Y) => Ok(Atom::Y),
            Some(Tok::I) => Ok(Atom::Root(4)),
            Some(Tok::Zeta(n)) => Ok(Atom::Root(n)),
            Some(Tok::Num(r)) => Ok(Atom::Scalar(Cyclotomic::from_rational(r))),
            Some(Tok::Int(v)) => Ok(Atom::Scalar(Cyclotomic::from_rational(BigRational::from_integer(v)))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(Atom::Group(e)),
                    _ => Err(Error::parse(close, "expected ')'")),
                }
            }
            Some(t) => Err(Error::parse(pos, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

enum Atom {
    X,
    Y,
    Root(u64),
    Scalar(Cyclotomic),
    Group(AlgebraElement),
}

impl Atom {
    fn into_element(self) -> AlgebraElement {
        match self {
            Atom::X => AlgebraElement::x(),
            Atom::Y => AlgebraElement::y(),
            Atom::Root(n) => AlgebraElement::scalar(Cyclotomic::root_of_unity(n, 1).expect("valid conductor")),
            Atom::Scalar(c) => AlgebraElement::scalar(c),
            Atom::Group(e) => e,
        }
    }

    fn power(self, k: &BigInt, pos: usize, epos: usize) -> Result<AlgebraElement> {
        let to_parse = |e: Error| Error::parse(pos, e.to_string());
        match self {
            Atom::X => {
                if k.is_negative() {
                    return Err(Error::parse(epos, "x is not invertible"));
                }
                let m = k
                    .to_u32()
                    .filter(|&m| m < MAX_X_DEGREE)
                    .ok_or_else(|| Error::parse(epos, "x-degree overflow (limit 2^31)"))?;
                Ok(AlgebraElement::monomial(
                    SemigroupElement::new(m, 0).map_err(to_parse)?,
                    Cyclotomic::one(),
                ))
            }
            Atom::Y => Ok(AlgebraElement::monomial(
                SemigroupElement::y_pow(k.clone()),
                Cyclotomic::one(),
            )),
            Atom::Root(n) => {
                let r = crate::series::residue(k, n);
                Ok(AlgebraElement::scalar(
                    Cyclotomic::root_of_unity(n, r as i128).map_err(to_parse)?,
                ))
            }
            Atom::Scalar(c) => scalar_power(&c, k, epos).map(AlgebraElement::scalar),
            Atom::Group(e) => {
                if let Some((c, n)) = e.as_unit() {
                    let c = scalar_power(c, k, epos)?;
                    return Ok(AlgebraElement::monomial(SemigroupElement::y_pow(n * k), c));
                }
                if k.is_negative() {
                    return Err(Error::parse(epos, format!("({e}) is not invertible")));
                }
                let k = k
                    .to_u64()
                    .filter(|&k| k <= MAX_GENERAL_POWER)
                    .ok_or_else(|| Error::parse(epos, "exponent too large"))?;
                e.pow(k).map_err(to_parse)
            }
        }
    }
}

fn scalar_power(c: &Cyclotomic, k: &BigInt, epos: usize) -> Result<Cyclotomic> {
    if c.is_zero() && k.is_negative() {
        return Err(Error::parse(epos, "division by zero"));
    }
    if let Some(e) = c.as_root_of_unity() {
        let order = if c.conductor() % 2 == 1 {
            2 * c.conductor()
        } else {
            c.conductor()
        };
        let total = crate::series::residue(&(k * BigInt::from(e)), order);
        let root = Cyclotomic::root_of_unity(order, total as i128)
            .map_err(|e| Error::parse(epos, e.to_string()))?;
        return Ok(root.promote_into(c.field()).unwrap_or(root));
    }
    if k.abs() > BigInt::from(MAX_GENERAL_POWER) {
        return Err(Error::parse(epos, "exponent too large"));
    }
    c.pow(k).map_err(|e| Error::parse(epos, e.to_string()))
}

/// Parses an element in the grammar above.
pub fn parse_element(text: &str) -> Result<AlgebraElement> {
    let toks = Lexer::new(text).tokens()?;
    let end = text.chars().count();
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks, idx: 0, end };
    let e = p.expr()?;
    if p.idx < p.toks.len() {
        return Err(Error::parse(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a scalar (an element with only an identity term).
pub fn parse_scalar(text: &str) -> Result<Cyclotomic> {
    let e = parse_element(text)?;
    if e.is_zero() {
        return Ok(Cyclotomic::zero());
    }
    let single = e.num_terms() == 1;
    let first = e.terms().next().map(|(s, c)| (s.is_identity(), c.clone()));
    match first {
        Some((true, c)) if single => Ok(c),
        _ => Err(Error::parse(0, format!("'{text}' is not a scalar"))),
    }
}

impl std::str::FromStr for AlgebraElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_element(s)
    }
}

impl std::str::FromStr for Cyclotomic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}
