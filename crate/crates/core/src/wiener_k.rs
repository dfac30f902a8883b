//! The quotient `W(K)` for a finite square-closed set `K`, realised as
//! functions on the points of `K`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::Cyclotomic;
use crate::mu_dynamics::SquareClosedSet;
use crate::wiener::CoeffSeq;

/// Values of a function at the points `zeta_N^e` of `K`, in ascending `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnOnK {
    k: SquareClosedSet,
    values: Vec<Cyclotomic>,
}

impl FnOnK {
    pub fn new(k: SquareClosedSet, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != k.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} points",
                values.len(),
                k.len()
            )));
        }
        Ok(FnOnK { k, values })
    }

    /// The coordinate function `u(zeta) = zeta` on `K`.
    pub fn coordinate(k: &SquareClosedSet) -> Result<Self> {
        FnOnK::new(k.clone(), k.points()?)
    }

    pub fn set(&self) -> &SquareClosedSet {
        &self.k
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// `(e, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Cyclotomic)> {
        self.k.exps().zip(&self.values)
    }

    pub fn mul(&self, other: &FnOnK) -> Result<FnOnK> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch("functions live on different sets".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(FnOnK {
            k: self.k.clone(),
            values,
        })
    }

    pub fn is_one(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_one)
    }
}

impl fmt::Display for FnOnK {
    /// One `e/N: value` line per point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.k.modulus();
        let lines: Vec<String> = self.iter().map(|(e, v)| format!("{e}/{n}: {v}")).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// `f|_K`, by exact evaluation at each point.
pub fn restrict(f: &CoeffSeq, k: &SquareClosedSet) -> Result<FnOnK> {
    let n = k.modulus();
    let values = k
        .exps()
        .map(|e| f.evaluate_at_root(n, e))
        .collect::<Result<Vec<_>>>()?;
    FnOnK::new(k.clone(), values)
}

/// Pointwise reciprocal; fails at the first point where `f` vanishes.
pub fn invert_on_k(f: &FnOnK) -> Result<FnOnK> {
    let n = f.k.modulus();
    let mut values = Vec::with_capacity(f.values.len());
    for (e, v) in f.iter() {
        if v.is_zero() {
            return Err(Error::NotInvertibleOnK(format!("{e}/{n}")));
        }
        values.push(v.inv()?);
    }
    FnOnK::new(f.k.clone(), values)
}

/// For finite `K` the spectrum of `f` in `W(K)` is its set of values,
/// returned without repetition in order of first appearance.
pub fn spectrum_on_k(f: &FnOnK) -> Vec<Cyclotomic> {
    let mut out: Vec<Cyclotomic> = Vec::new();
    for v in &f.values {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}
