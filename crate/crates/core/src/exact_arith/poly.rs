//! Dense univariate polynomial helpers over the integers and the rationals.
//!
//! Coefficients are stored lowest degree first. These are the minimum needed
//! to build cyclotomic moduli and to invert field elements.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim_int(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

#[cfg(test)]
pub(crate) fn trim_rat(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Divisors of `n` in ascending order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact quotient of `num` by the monic polynomial `den`. Panics if the
/// division leaves a remainder, which cannot happen for the cyclotomic
/// recursion.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let d = den.len() - 1;
    debug_assert!(den[d].is_one());
    if rem.len() <= d {
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate().take(d) {
            if !dj.is_zero() {
                rem[i - d + j] -= &c * dj;
            }
        }
        quot[i - d] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    quot
}

/// The `n`-th cyclotomic polynomial, obtained from `x^n - 1` by dividing out
/// every `Phi_d` with `d` a proper divisor of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        let mut acc = vec![BigInt::zero(); n as usize + 1];
        acc[0] = BigInt::from(-1);
        acc[n as usize] = BigInt::one();
        let mut divisor_product = vec![BigInt::one()];
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let phi_d = cyclotomic_memo(d, memo);
            divisor_product = mul_int(&divisor_product, &phi_d);
        }
        acc = exact_div_monic(&acc, &divisor_product);
        trim_int(&mut acc);
        acc
    };
    memo.insert(n, result.clone());
    result
}

#[cfg(test)]
fn divrem_rat(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim_rat(&mut rem);
    let d = den.len() - 1;
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let lead_inv = den[d].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        let c = c * &lead_inv;
        for (j, dj) in den.iter().enumerate().take(d) {
            if !dj.is_zero() {
                rem[i - d + j] -= &c * dj;
            }
        }
        quot[i - d] = c;
    }
    rem.truncate(d);
    trim_rat(&mut rem);
    (quot, rem)
}

#[cfg(test)]
fn mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

#[cfg(test)]
fn sub_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim_rat(&mut out);
    out
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm, or `None`
/// when `gcd(a, m)` is not a unit.
#[cfg(test)]
pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim_rat(&mut r0);
    trim_rat(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem_rat(&r0, &r1);
        let s2 = sub_rat(&s0, &mul_rat(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let scale = r0[0].recip();
    let (_, mut inv) = divrem_rat(&mul_rat(&s0, &[scale]), m);
    trim_rat(&mut inv);
    Some(inv)
}

/// Least common multiple of the denominators, used to clear fractions.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        if !v.is_zero() {
            l = l.lcm(v.denom());
        }
    }
    l.abs()
}
