//! Finite square-closed subsets of the circle, doubling-map cycles, the chain
//! `V_p` and the periodic witness `h`.
//!
//! A finite square-closed set is recorded by an odd `N` and a set of residues
//! `e`, standing for the points `zeta_N^e`. For odd `N` doubling permutes the
//! residues, so every such set is a disjoint union of cycles.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_arith::{BigRational, Cyclotomic};
use crate::wiener::CoeffSeq;

/// Largest `k` accepted by [`enumerate_mu_orbits`].
pub const MAX_ORBIT_K: u32 = 24;
/// Largest `p` accepted by [`in_chain_vp`].
pub const MAX_CHAIN_P: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClosedSet {
    n: u64,
    exps: BTreeSet<u64>,
}

impl SquareClosedSet {
    /// Validates that `N` is odd and the residues are closed under doubling.
    pub fn new(n: u64, exps: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_odd(n)?;
        let exps: BTreeSet<u64> = exps.into_iter().map(|e| e % n).collect();
        if !is_square_closed(&exps, n) {
            return Err(Error::InvalidSet(format!(
                "{} mod {n} is not closed under doubling",
                fmt_exps(&exps)
            )));
        }
        Ok(SquareClosedSet { n, exps })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Residues in ascending order.
    pub fn exps(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        self.exps.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.exps.contains(&(e % self.n))
    }

    /// The doubling cycles making up the set, ordered by smallest element.
    pub fn cycles(&self) -> Vec<MuOrbit> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &e in &self.exps {
            if seen.contains(&e) {
                continue;
            }
            let orbit = orbit_of(self.n, e);
            seen.extend(orbit.cycle.iter().copied());
            out.push(orbit);
        }
        out
    }

    /// The points `zeta_N^e` as exact field elements, in ascending `e`.
    pub fn points(&self) -> Result<Vec<Cyclotomic>> {
        self.exps
            .iter()
            .map(|&e| Cyclotomic::root_of_unity(self.n, e as i128))
            .collect()
    }
}

impl fmt::Display for SquareClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} exps={}", self.n, fmt_exps(&self.exps))
    }
}

/// A single doubling cycle `e, 2e, 4e, ...` modulo an odd `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MuOrbit {
    cycle: Vec<u64>,
    set: SquareClosedSet,
}

impl MuOrbit {
    pub fn modulus(&self) -> u64 {
        self.set.n
    }

    /// Cycle length.
    pub fn k(&self) -> usize {
        self.cycle.len()
    }

    /// Residues in doubling order, starting from the generating residue.
    pub fn cycle(&self) -> &[u64] {
        &self.cycle
    }

    pub fn smallest(&self) -> u64 {
        *self.set.exps.iter().next().expect("orbits are nonempty")
    }

    pub fn as_set(&self) -> &SquareClosedSet {
        &self.set
    }

    /// Angles `e/N` in turns, ascending.
    pub fn angles(&self) -> Vec<Ratio<u64>> {
        self.set.exps().map(|e| Ratio::new(e, self.set.n)).collect()
    }
}

impl AsRef<SquareClosedSet> for MuOrbit {
    fn as_ref(&self) -> &SquareClosedSet {
        &self.set
    }
}

impl fmt::Display for MuOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} k={} exps={}", self.set.n, self.k(), fmt_exps(&self.set.exps))
    }
}

fn fmt_exps(exps: &BTreeSet<u64>) -> String {
    let parts: Vec<String> = exps.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn check_odd(n: u64) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidSet(format!(
            "modulus {n} must be odd and positive"
        )));
    }
    Ok(())
}

fn double(e: u64, n: u64) -> u64 {
    ((e as u128 * 2) % n as u128) as u64
}

fn orbit_of(n: u64, e: u64) -> MuOrbit {
    let start = e % n;
    let mut cycle = vec![start];
    let mut cur = double(start, n);
    while cur != start {
        cycle.push(cur);
        cur = double(cur, n);
    }
    let exps = cycle.iter().copied().collect();
    MuOrbit {
        cycle,
        set: SquareClosedSet { n, exps },
    }
}

/// The doubling cycle through `e` modulo the odd number `n`.
pub fn doubling_orbit(n: u64, e: u64) -> Result<MuOrbit> {
    check_odd(n)?;
    Ok(orbit_of(n, e))
}

/// All doubling cycles on `Z/(2^k - 1)` of length exactly `k`, ordered by
/// smallest element. Each returned cycle starts at its smallest element.
pub fn enumerate_mu_orbits(k: u32) -> Result<Vec<MuOrbit>> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if k > MAX_ORBIT_K {
        return Err(Error::GuardExceeded(format!(
            "k = {k} exceeds the enumeration limit {MAX_ORBIT_K}"
        )));
    }
    let n = (1u64 << k) - 1;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for e in 0..n {
        if seen[e as usize] {
            continue;
        }
        let orbit = orbit_of(n, e);
        for &r in &orbit.cycle {
            seen[r as usize] = true;
        }
        if orbit.k() == k as usize {
            out.push(orbit);
        }
    }
    Ok(out)
}

/// Whether doubling maps `s` into itself modulo `n`.
pub fn is_square_closed(s: &BTreeSet<u64>, n: u64) -> bool {
    n > 0 && s.iter().all(|&e| s.contains(&double(e % n, n)))
}

/// Nonempty and a single doubling cycle.
pub fn is_minimal(s: &SquareClosedSet) -> bool {
    match s.exps.iter().next() {
        None => false,
        Some(&e) => orbit_of(s.n, e).k() == s.len(),
    }
}

/// Whether the trigonometric polynomial `f` vanishes at every `2^p`-th root
/// of unity.
pub fn in_chain_vp(f: &CoeffSeq, p: u32) -> Result<bool> {
    if p == 0 || p > MAX_CHAIN_P {
        return Err(Error::Precondition(format!(
            "p = {p} must lie in 1..={MAX_CHAIN_P}"
        )));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let m = 1u64 << p;
    for e in 0..m {
        if !f.evaluate_at_root(m, e)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The periodic witness `h = sum_n 2^-n g(zeta^(2^n))`, `g = f conj(f)`, at
/// every point of `k`, keyed by residue in ascending order.
///
/// On a cycle of length `k` the series folds to
/// `h(z_j) = (1 - 2^-k)^-1 sum_(i<k) 2^-i g(z_(j+i))`.
pub fn cyclic_witness(f: &CoeffSeq, k: &SquareClosedSet) -> Result<Vec<(u64, Cyclotomic)>> {
    let n = k.modulus();
    let mut out = Vec::with_capacity(k.len());
    let mut any_nonzero = false;
    for orbit in k.cycles() {
        let g: Vec<Cyclotomic> = orbit
            .cycle
            .iter()
            .map(|&e| f.evaluate_at_root(n, e).map(|v| v.norm_sq()))
            .collect::<Result<_>>()?;
        let len = g.len();
        let two_k = BigInt::one() << len;
        let factor = BigRational::new(two_k.clone(), two_k - 1u32);
        for j in 0..len {
            let mut h = Cyclotomic::zero();
            let mut w = BigRational::one();
            for i in 0..len {
                h = h + g[(j + i) % len].scale(&w);
                w /= BigInt::from(2);
            }
            let h = h.scale(&factor);
            any_nonzero |= !h.is_zero();
            out.push((orbit.cycle[j], h));
        }
    }
    if !any_nonzero {
        return Err(Error::Precondition(format!("f vanishes identically on {k}")));
    }
    out.sort_by_key(|(e, _)| *e);
    Ok(out)
}

/// Whether a witness value is certified strictly positive: it is real,
/// nonzero, and (being a positive combination of squared moduli) therefore
/// positive under every embedding.
pub fn is_certified_positive(h: &Cyclotomic) -> bool {
    !h.is_zero() && *h == h.conjugate() && h.complex_embedding().re > 0.0
}

/// Largest circular gap, in radians, between consecutive angles of the union
/// of the given orbits.
pub fn max_circular_gap<'a>(orbits: impl IntoIterator<Item = &'a MuOrbit>) -> f64 {
    let mut angles: Vec<Ratio<u64>> = orbits.into_iter().flat_map(|o| o.angles()).collect();
    angles.sort();
    angles.dedup();
    let Some(first) = angles.first().copied() else {
        return std::f64::consts::TAU;
    };
    let turns = |r: Ratio<u64>| *r.numer() as f64 / *r.denom() as f64;
    let mut gap = turns(first) + 1.0 - turns(*angles.last().expect("nonempty"));
    for w in angles.windows(2) {
        gap = gap.max(turns(w[1]) - turns(w[0]));
    }
    gap * std::f64::consts::TAU
}
