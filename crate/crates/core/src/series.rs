//! Shared plumbing for finitely supported integer-indexed coefficient maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::exact_arith::{lcm_conductor, Cyclotomic, CyclotomicField, ExponentSum};

pub(crate) type CoeffMap = BTreeMap<BigInt, Cyclotomic>;

/// Adds `c` at `idx`, dropping the entry if it cancels.
pub(crate) fn add_at(map: &mut CoeffMap, idx: BigInt, c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    match map.entry(idx) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn residue(n: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue fits")
}

/// `sum_n c_n zeta_N^(n e)`, computed in the field of
/// `lcm(N, conductors of the c_n)`.
pub(crate) fn evaluate_at_root<'a>(
    coeffs: impl IntoIterator<Item = (&'a BigInt, &'a Cyclotomic)> + Clone,
    n: u64,
    e: u64,
) -> Result<Cyclotomic> {
    let mut l = n;
    for (_, c) in coeffs.clone() {
        l = lcm_conductor(l, c.conductor())?;
    }
    let field = CyclotomicField::new(l)?;
    let step = l / n;
    let mut acc = ExponentSum::new(field);
    for (idx, c) in coeffs {
        let shift = ((residue(idx, n) as u128 * (e % n) as u128) % n as u128) as u64 * step;
        acc.add_shifted(c, shift)?;
    }
    Ok(acc.finish())
}

/// Lcm of the conductors of all coefficients (1 for an empty map).
pub(crate) fn common_conductor<'a>(coeffs: impl IntoIterator<Item = &'a Cyclotomic>) -> u64 {
    coeffs
        .into_iter()
        .fold(1u64, |l, c| lcm_conductor(l, c.conductor()).expect("conductor overflow"))
}
