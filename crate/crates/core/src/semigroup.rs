//! Normal forms `x^m y^n` and exact multiplication in `S`.
//!
//! Every element of `S` has a unique normal form with all `x` letters first.
//! Multiplication uses the closed form
//! `x^m y^n * x^p y^q = x^(m+p) y^(n 2^p + q)`; the word-rewriting normal form
//! below is an independent route used to check it.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Upper bound (exclusive) on the x-degree.
pub const MAX_X_DEGREE: u32 = 1 << 31;

/// The monomial `x^m y^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemigroupElement {
    m: u32,
    n: BigInt,
}

impl SemigroupElement {
    pub fn new(m: u32, n: impl Into<BigInt>) -> Result<Self> {
        if m >= MAX_X_DEGREE {
            return Err(Error::DegreeOverflow);
        }
        Ok(SemigroupElement { m, n: n.into() })
    }

    pub fn identity() -> Self {
        SemigroupElement {
            m: 0,
            n: BigInt::zero(),
        }
    }

    pub fn x() -> Self {
        SemigroupElement {
            m: 1,
            n: BigInt::zero(),
        }
    }

    pub fn y() -> Self {
        Self::y_pow(1)
    }

    pub fn y_pow(n: impl Into<BigInt>) -> Self {
        SemigroupElement { m: 0, n: n.into() }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.n.is_zero()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let m = self.m as u64 + other.m as u64;
        if m >= MAX_X_DEGREE as u64 {
            return Err(Error::DegreeOverflow);
        }
        let n = (&self.n << other.m as usize) + &other.n;
        Ok(SemigroupElement { m: m as u32, n })
    }

    /// The inverse of a unit `y^n`.
    pub fn invert(&self) -> Result<Self> {
        if self.m > 0 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(SemigroupElement {
            m: 0,
            n: -&self.n,
        })
    }
}

/// Closed-form product.
pub fn multiply(s: &SemigroupElement, t: &SemigroupElement) -> Result<SemigroupElement> {
    s.checked_mul(t)
}

impl<'a> Mul<&'a SemigroupElement> for &'a SemigroupElement {
    type Output = SemigroupElement;

    /// Panics if the x-degree overflows; see [`SemigroupElement::checked_mul`].
    fn mul(self, rhs: &SemigroupElement) -> SemigroupElement {
        self.checked_mul(rhs).expect("x-degree overflow")
    }
}

impl fmt::Display for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs = match self.m {
            0 => None,
            1 => Some("x".to_string()),
            m => Some(format!("x^{m}")),
        };
        let ys = if self.n.is_zero() {
            None
        } else if self.n.is_one() {
            Some("y".to_string())
        } else {
            Some(format!("y^{}", self.n))
        };
        match (xs, ys) {
            (None, None) => f.write_str("1"),
            (Some(a), None) | (None, Some(a)) => f.write_str(&a),
            (Some(a), Some(b)) => write!(f, "{a}*{b}"),
        }
    }
}

/// A generator letter of a word in `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    X,
    Y,
    YInv,
}

impl Letter {
    pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
        let mut word = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            match chars[i] {
                'x' => word.push(Letter::X),
                'y' => word.push(Letter::Y),
                'Y' => word.push(Letter::YInv),
                c if c.is_whitespace() => {}
                c => return Err(Error::parse(i, format!("unexpected letter '{c}'"))),
            }
            i += 1;
        }
        Ok(word)
    }
}

// A word with runs of y-letters compressed: `Ys(k)` stands for y^k (k may be
// negative). Each rewrite `Ys(k) X -> X Ys(2k)` is k applications of
// `yx -> xy^2` (or of `y^-1 x -> x y^-2` when k < 0).
#[derive(Clone, Debug)]
enum Token {
    X,
    Ys(BigInt),
}

/// Normal form of a word by rewriting `yx -> xy^2`, `y^-1 x -> x y^-2` and
/// cancelling `y y^-1` until every `x` precedes every `y`.
pub fn word_to_normal_form(word: &[Letter]) -> Result<SemigroupElement> {
    let mut tokens: Vec<Token> = Vec::with_capacity(word.len());
    for l in word {
        let t = match l {
            Letter::X => Token::X,
            Letter::Y => Token::Ys(BigInt::one()),
            Letter::YInv => Token::Ys(-BigInt::one()),
        };
        push_merged(&mut tokens, t);
    }
    loop {
        let pos = tokens
            .windows(2)
            .position(|w| matches!(w, [Token::Ys(_), Token::X]));
        let Some(i) = pos else { break };
        let Token::Ys(k) = std::mem::replace(&mut tokens[i], Token::X) else {
            unreachable!()
        };
        let rest: Vec<Token> = tokens.drain(i + 1..).collect();
        let mut rest = rest.into_iter();
        rest.next(); // the X that moved left
        push_merged(&mut tokens, Token::Ys(k * 2));
        for t in rest {
            push_merged(&mut tokens, t);
        }
    }
    let mut m: u64 = 0;
    let mut n = BigInt::zero();
    for t in tokens {
        match t {
            Token::X => m += 1,
            Token::Ys(k) => n += k,
        }
    }
    if m >= MAX_X_DEGREE as u64 {
        return Err(Error::DegreeOverflow);
    }
    Ok(SemigroupElement { m: m as u32, n })
}

fn push_merged(tokens: &mut Vec<Token>, t: Token) {
    match (tokens.last_mut(), t) {
        (Some(Token::Ys(a)), Token::Ys(b)) => {
            *a += b;
            if a.is_zero() {
                tokens.pop();
            }
        }
        (_, Token::Ys(b)) if b.is_zero() => {}
        (_, t) => tokens.push(t),
    }
}

/// Growth bound on the y-exponent of a product, in bits.
pub fn product_bit_bound(s: &SemigroupElement, t: &SemigroupElement) -> u64 {
    (s.n.abs().bits() + t.m as u64).max(t.n.abs().bits()) + 1
}
