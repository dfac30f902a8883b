//! Multi-modular inversion in `Q[x]/(Phi_N)`.
//!
//! The inverse is computed modulo word-sized primes by the extended Euclidean
//! algorithm, lifted by Chinese remaindering, recovered by rational
//! reconstruction and accepted only after an exact check by the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const FIRST_PRIME_CANDIDATE: u64 = (1 << 62) - 1;
const MAX_PRIMES: usize = 1 << 12;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn reduce_mod_p(v: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    let mut out: Vec<u64> = v
        .iter()
        .map(|c| c.mod_floor(&bp).to_u64().expect("residue fits"))
        .collect();
    trim(&mut out);
    out
}

fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = invmod(b[db], p);
    let mut q = vec![0; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mulmod(r[i], lead_inv, p);
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            let slot = &mut r[i - db + j];
            *slot = (*slot + p - t) % p;
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

fn sub_mul(a: &[u64], q: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = a.to_vec();
    if !q.is_empty() && !b.is_empty() {
        out.resize(out.len().max(q.len() + b.len() - 1), 0);
        for (i, &qi) in q.iter().enumerate() {
            if qi == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let t = mulmod(qi, bj, p);
                out[i + j] = (out[i + j] + p - t) % p;
            }
        }
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `(m, p)`, or `None` when they share a factor mod `p`.
fn inverse_mod_p(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (_, mut r1) = divrem(a, m, p);
    let mut r0 = m.to_vec();
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while r1.len() > 1 {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub_mul(&s0, &q, &s1, p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let c = *r1.first()?;
    let ci = invmod(c, p);
    let mut out: Vec<u64> = s1.iter().map(|&s| mulmod(s, ci, p)).collect();
    out.resize(m.len() - 1, 0);
    Some(out)
}

/// `n/d` with `|n|, d <= bound` and `n = u d (mod m)`, if one exists.
fn rational_reconstruction(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Inverse of the integer polynomial `a` modulo the monic integer polynomial
/// `m`, as rational coefficients. `accept` performs the exact check of a
/// candidate; `None` means no accepted candidate was found.
pub(crate) fn inverse_multimodular(
    a: &[BigInt],
    m: &[BigInt],
    accept: impl Fn(&[BigRational]) -> bool,
) -> Option<Vec<BigRational>> {
    let d = m.len() - 1;
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); d];
    let mut modulus = BigInt::one();
    let mut used = 0usize;
    let mut next_check = 1usize;
    let mut p = FIRST_PRIME_CANDIDATE;
    while used < MAX_PRIMES {
        p -= 2;
        if !is_prime_u64(p) {
            continue;
        }
        let mp = reduce_mod_p(m, p);
        if mp.len() != m.len() {
            continue;
        }
        let Some(inv) = inverse_mod_p(&reduce_mod_p(a, p), &mp, p) else {
            continue;
        };
        // Garner step: x <- x + M ((r - x) M^-1 mod p)
        let bp = BigInt::from(p);
        let m_inv = invmod(modulus.mod_floor(&bp).to_u64().expect("fits"), p);
        for (x, &r) in residues.iter_mut().zip(&inv) {
            let xp = x.mod_floor(&bp).to_u64().expect("fits");
            let t = mulmod((r + p - xp) % p, m_inv, p);
            *x += &modulus * t;
        }
        modulus *= p;
        used += 1;
        if used == next_check {
            next_check *= 2;
            let bound = (&modulus >> 1u32).sqrt();
            let candidate: Option<Vec<BigRational>> = residues
                .iter()
                .map(|u| rational_reconstruction(u, &modulus, &bound))
                .collect();
            if let Some(c) = candidate {
                if accept(&c) {
                    return Some(c);
                }
            }
        }
    }
    None
}
