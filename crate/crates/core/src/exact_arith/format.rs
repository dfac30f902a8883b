//! Plain-text rendering of rationals and cyclotomic numbers.
//!
//! A cyclotomic number is first moved to the smallest field that contains it,
//! then written as a sum of rational multiples of powers `zN^e`. Among the
//! shifted power bases `zeta^s, ..., zeta^(s+d-1)` the one giving the fewest
//! terms (then the smallest coefficients) is used, so `zeta_3^2 - 1` prints as
//! `z3^2-1` rather than `-z3-2`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::Cyclotomic;

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse display terms `(exponent, coefficient)` of an element written over
/// `Q(zeta_d)`, exponents in descending order, along with `d`.
pub fn display_terms(a: &Cyclotomic) -> (u64, Vec<(u64, BigRational)>) {
    let a = a.reduce_conductor();
    let d = a.conductor();
    let collect = |b: &Cyclotomic, s: u64| -> Vec<(u64, BigRational)> {
        b.coeffs()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| ((j as u64 + s) % d, c))
            .collect()
    };
    let mut best = collect(&a, 0);
    if d > 2 && best.len() > 1 {
        let mut best_score = score(&best);
        for s in 1..d {
            let b = a.mul_zeta(-(s as i128));
            let terms = collect(&b, s);
            let sc = score(&terms);
            if sc < best_score {
                best = terms;
                best_score = sc;
            }
        }
    }
    best.sort_by(|x, y| y.0.cmp(&x.0));
    (d, best)
}

fn score(terms: &[(u64, BigRational)]) -> (usize, BigInt) {
    let height = terms
        .iter()
        .map(|(_, c)| c.numer().abs() + c.denom())
        .fold(BigInt::zero(), |a, b| a + b);
    (terms.len(), height)
}

fn root_name(d: u64, e: u64) -> String {
    if e == 1 {
        format!("z{d}")
    } else {
        format!("z{d}^{e}")
    }
}

/// Renders one term with an explicit leading sign handled by the caller.
fn render_term(d: u64, e: u64, c: &BigRational) -> String {
    if e == 0 {
        return format_rational(c);
    }
    let root = root_name(d, e);
    if c.is_one() {
        root
    } else if *c == -BigRational::one() {
        format!("-{root}")
    } else {
        format!("{}*{root}", format_rational(c))
    }
}

pub(crate) fn join_signed(parts: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 && !p.starts_with('-') {
            out.push('+');
        }
        out.push_str(&p);
    }
    out
}

/// Number of terms in the display form; callers parenthesise when it is > 1.
pub fn display_term_count(a: &Cyclotomic) -> usize {
    display_terms(a).1.len().max(1)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (d, terms) = display_terms(self);
        let s = join_signed(terms.iter().map(|(e, c)| render_term(d, *e, c)));
        f.write_str(&s)
    }
}
