//! Constructive pieces of the classification of irreducible modules: prime
//! selection for rational angles, direct finiteness, and invariance of the
//! two-step recurrence space `G_1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::exact_arith::{BigRational, Cyclotomic};
use crate::representations::{avg_act_x, avg_act_y, AvgSequence};

/// Trial-division budget for factoring denominators.
pub const FACTOR_GUARD: u64 = 10_000_000;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest odd prime dividing `n > 0`, or `None` if `n` is a power of two.
fn largest_odd_prime_factor(n: &BigInt) -> Result<Option<BigInt>> {
    let mut n = n.abs();
    while n.is_even() && !n.is_zero() {
        n >>= 1;
    }
    let mut best = None;
    let mut d = 3u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        if d > FACTOR_GUARD {
            return Err(Error::GuardExceeded(format!(
                "factoring a denominator needs trial division beyond {FACTOR_GUARD}"
            )));
        }
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            best = Some(bd.clone());
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 2;
    }
    if n > BigInt::one() {
        best = Some(n);
    }
    Ok(best)
}

/// The least odd prime `p` exceeding every odd prime factor of the
/// denominators, with `p beta` checked to be a non-integer for each `beta`.
pub fn choose_prime(betas: &[BigRational]) -> Result<u64> {
    let mut floor = BigInt::from(2);
    for b in betas {
        if !b.is_positive() || *b >= BigRational::one() {
            return Err(Error::Precondition(format!("beta = {b} must lie strictly between 0 and 1")));
        }
        if let Some(q) = largest_odd_prime_factor(b.denom())? {
            floor = floor.max(q);
        }
    }
    let mut p = floor
        .to_u64()
        .ok_or_else(|| Error::GuardExceeded(format!("prime factor {floor} exceeds 64 bits")))?
        + 1;
    loop {
        if p % 2 == 1
            && is_prime(p)
            && betas.iter().all(|b| !(b * BigInt::from(p)).is_integer())
        {
            return Ok(p);
        }
        p += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `ab = ba = 1`.
    BothIdentities,
    /// Neither product is the identity.
    Neither,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::BothIdentities => "both-identities",
            Verdict::Neither => "neither",
        })
    }
}

/// Computes `ab` and `ba`. A one-sided inverse would contradict direct
/// finiteness and is reported as an internal error.
pub fn check_direct_finiteness(a: &AlgebraElement, b: &AlgebraElement) -> Result<Verdict> {
    let ab = a.checked_product(b)?.is_one();
    let ba = b.checked_product(a)?.is_one();
    match (ab, ba) {
        (true, true) => Ok(Verdict::BothIdentities),
        (false, false) => Ok(Verdict::Neither),
        _ => Err(Error::Internal(format!(
            "direct finiteness violated by a = {a}, b = {b} (ab = 1: {ab}, ba = 1: {ba})"
        ))),
    }
}

/// Whether the truncated sequence satisfies `g(j+2) = beta^2 g(j)` wherever
/// both indices are present.
pub fn satisfies_g1(g: &[Cyclotomic], beta_sq: &Cyclotomic) -> bool {
    g.windows(3).all(|w| w[2] == beta_sq * &w[0])
}

/// Checks that the right actions of `x` and `y` on the averaging space with
/// parameter `alpha` (a primitive cube root of unity) preserve
/// `G_1 = {g : g(j+2) = beta^2 g(j)}`, on a basis truncated to length `m`.
pub fn verify_g1_invariance(alpha: &Cyclotomic, beta: &Cyclotomic, m: usize) -> Result<bool> {
    let alpha2 = alpha * alpha;
    if alpha2 == *alpha || &alpha2 * &alpha2 != *alpha {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} must satisfy alpha^4 = alpha != alpha^2"
        )));
    }
    if beta.is_zero() {
        return Err(Error::Precondition("beta must be nonzero".into()));
    }
    if m < 6 {
        return Err(Error::Precondition(format!("truncation length {m} must be at least 6")));
    }
    let beta_sq = beta * beta;
    for start in [[Cyclotomic::one(), Cyclotomic::zero()], [Cyclotomic::zero(), Cyclotomic::one()]] {
        let mut values = start.to_vec();
        while values.len() < m {
            let v = &beta_sq * &values[values.len() - 2];
            values.push(v);
        }
        let g = AvgSequence::new(values, alpha.clone())?;
        if !satisfies_g1(g.values(), &beta_sq) {
            return Err(Error::Internal("basis vector outside G_1".into()));
        }
        let gx = avg_act_x(&g)?;
        let gy = avg_act_y(&g);
        if !satisfies_g1(gx.values(), &beta_sq) || !satisfies_g1(gy.values(), &beta_sq) {
            return Ok(false);
        }
    }
    Ok(true)
}
