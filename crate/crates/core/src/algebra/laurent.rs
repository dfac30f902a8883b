use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::exact_arith::Cyclotomic;
use crate::semigroup::SemigroupElement;
use crate::series::{add_at, evaluate_at_root, CoeffMap};

/// A Laurent polynomial `sum c_n y^n` in the invertible generator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: CoeffMap,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, Cyclotomic)>) -> Self {
        let mut coeffs = CoeffMap::new();
        for (n, c) in terms {
            add_at(&mut coeffs, n, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &Cyclotomic)> + Clone {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, n: &BigInt) -> Cyclotomic {
        self.coeffs.get(n).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at the root of unity `zeta_N^e`.
    pub fn evaluate_at_root(&self, n: u64, e: u64) -> Result<Cyclotomic> {
        evaluate_at_root(self.coeffs.iter(), n, e)
    }

    pub(crate) fn into_map(self) -> CoeffMap {
        self.coeffs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = super::AlgebraElement::from_terms(
            self.coeffs
                .iter()
                .map(|(n, c)| (SemigroupElement::y_pow(n.clone()), c.clone())),
        );
        write!(f, "{a}")
    }
}
