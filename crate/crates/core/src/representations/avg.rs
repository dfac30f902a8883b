use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_arith::Cyclotomic;

/// A truncated sequence `g(0), ..., g(M-1)` in the averaging space, with the
/// right actions `(g.x)(m) = g(m+1)` and `(g.y)(m) = alpha^(2^m) g(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvgSequence {
    values: Vec<Cyclotomic>,
    alpha: Cyclotomic,
    order: u64,
}

impl AvgSequence {
    /// `alpha` must be a root of unity.
    pub fn new(values: Vec<Cyclotomic>, alpha: Cyclotomic) -> Result<Self> {
        let order = super::root_order(&alpha)
            .ok_or_else(|| Error::Precondition(format!("alpha = {alpha} is not a root of unity")))?;
        Ok(AvgSequence {
            values,
            alpha,
            order,
        })
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn alpha(&self) -> &Cyclotomic {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `alpha^(2^m)`, with the exponent reduced modulo the order of `alpha`.
    pub fn weight(&self, m: usize) -> Cyclotomic {
        let e = BigInt::from(2u8).modpow(&BigInt::from(m), &BigInt::from(self.order));
        self.alpha.pow(&e).expect("roots of unity are invertible")
    }
}

/// `g.x`: drops the first value.
pub fn avg_act_x(g: &AvgSequence) -> Result<AvgSequence> {
    if g.values.is_empty() {
        return Err(Error::Precondition("cannot shift an empty sequence".into()));
    }
    Ok(AvgSequence {
        values: g.values[1..].to_vec(),
        ..g.clone()
    })
}

/// `g.y`: multiplies `g(m)` by `alpha^(2^m)`.
pub fn avg_act_y(g: &AvgSequence) -> AvgSequence {
    AvgSequence {
        values: g
            .values
            .iter()
            .enumerate()
            .map(|(m, v)| v * &g.weight(m))
            .collect(),
        ..g.clone()
    }
}

/// Indices `m < len` at which an eigenvector `g.y = lambda g` may be nonzero,
/// namely those with `alpha^(2^m) = lambda`.
pub fn eigen_support(alpha: &Cyclotomic, lambda: &Cyclotomic, len: usize) -> Result<Vec<usize>> {
    let probe = AvgSequence::new(Vec::new(), alpha.clone())?;
    Ok((0..len).filter(|&m| probe.weight(m) == *lambda).collect())
}

impl AvgSequence {
    pub fn act_x(&self) -> Result<Self> {
        avg_act_x(self)
    }

    pub fn act_y(&self) -> Self {
        avg_act_y(self)
    }
}
