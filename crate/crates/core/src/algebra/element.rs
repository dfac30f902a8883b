use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::exact_arith::{display_term_count, join_signed, Cyclotomic};
use crate::semigroup::SemigroupElement;
use crate::series::common_conductor;

/// A finite sum `sum c_s s` over `s in S`, with cyclotomic coefficients.
///
/// Terms are kept in ascending `(m, n)` order and zero coefficients are never
/// stored, so the zero element has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<SemigroupElement, Cyclotomic>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Cyclotomic::one())
    }

    pub fn scalar(c: Cyclotomic) -> Self {
        Self::monomial(SemigroupElement::identity(), c)
    }

    pub fn monomial(s: SemigroupElement, c: Cyclotomic) -> Self {
        let mut a = Self::zero();
        a.add_term(s, c);
        a
    }

    pub fn x() -> Self {
        Self::monomial(SemigroupElement::x(), Cyclotomic::one())
    }

    pub fn y() -> Self {
        Self::monomial(SemigroupElement::y(), Cyclotomic::one())
    }

    /// `x^m y^n` with coefficient one.
    pub fn xy(m: u32, n: impl Into<BigInt>) -> Result<Self> {
        Ok(Self::monomial(SemigroupElement::new(m, n)?, Cyclotomic::one()))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SemigroupElement, Cyclotomic)>) -> Self {
        let mut a = Self::zero();
        for (s, c) in terms {
            a.add_term(s, c);
        }
        a
    }

    /// Adds `c * s`, merging with any existing term.
    pub fn add_term(&mut self, s: SemigroupElement, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SemigroupElement, &Cyclotomic)> + Clone {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &SemigroupElement) -> Cyclotomic {
        self.terms.get(s).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(s, c)| s.is_identity() && c.is_one())
    }

    /// Largest x-degree present (0 for the zero element).
    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|s| s.m()).max().unwrap_or(0)
    }

    /// Smallest x-degree with a nonzero component.
    pub fn min_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|s| s.m()).min()
    }

    /// Largest `|n|` over all terms.
    pub fn max_abs_y_degree(&self) -> BigInt {
        self.terms
            .keys()
            .map(|s| s.n().abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Least common multiple of the coefficient conductors.
    pub fn conductor(&self) -> u64 {
        common_conductor(self.terms.values())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_terms(self.terms.iter().map(|(s, v)| (s.clone(), v * c)))
    }

    /// Bilinear extension of the semigroup product.
    pub fn checked_product(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s.checked_mul(t)?, a * b);
            }
        }
        Ok(out)
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let mut result = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_product(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_product(&base)?;
            }
        }
        Ok(result)
    }

    /// For a unit `c y^n`, returns `(c, n)`.
    pub fn as_unit(&self) -> Option<(&Cyclotomic, &BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (s, c) = self.terms.iter().next()?;
        (s.m() == 0).then_some((c, s.n()))
    }

    /// Inverse of a unit `c y^n`; anything else is rejected.
    pub fn inverse(&self) -> Result<Self> {
        match self.as_unit() {
            Some((c, n)) => Ok(Self::monomial(SemigroupElement::y_pow(-n), c.inv()?)),
            None => Err(Error::NotAUnit(self.to_string())),
        }
    }

    /// The Laurent polynomial `phi_m(y)` collecting the terms of x-degree `m`.
    pub fn extract_phi(&self, m: u32) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .filter(|(s, _)| s.m() == m)
                .map(|(s, c)| (s.n().clone(), c.clone())),
        )
    }

    /// `x^m phi(y)`.
    pub fn from_graded(m: u32, phi: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero();
        for (n, c) in phi.terms() {
            out.add_term(SemigroupElement::new(m, n.clone())?, c.clone());
        }
        Ok(out)
    }

    /// Distinct x-degrees in ascending order.
    pub fn x_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|s| s.m()).collect();
        v.dedup();
        v
    }

    /// The l1 norm `sum_m ||phi_m||_1`.
    pub fn norm_a(&self) -> f64 {
        self.terms.values().map(|c| c.complex_embedding().norm()).sum()
    }

    /// `sum_m sup |phi_m|`, with each sup taken over `grid_size` equispaced
    /// points of the circle. Requires `grid_size >= 4 max|n| + 4`.
    pub fn norm_b(&self, grid_size: usize) -> Result<f64> {
        let max_n = self.max_abs_y_degree();
        let required: BigInt = max_n * 4 + 4;
        if BigInt::from(grid_size) < required {
            return Err(Error::GridTooCoarse {
                required: required.to_u128().unwrap_or(u128::MAX),
                given: grid_size,
            });
        }
        let g = grid_size as i64;
        let mut total = 0.0;
        for m in self.x_degrees() {
            let coeffs: Vec<(i64, num_complex::Complex64)> = self
                .terms
                .iter()
                .filter(|(s, _)| s.m() == m)
                .map(|(s, c)| {
                    let n = s.n().to_i64().expect("bounded by grid size");
                    (n.rem_euclid(g), c.complex_embedding())
                })
                .collect();
            let mut sup: f64 = 0.0;
            for j in 0..g {
                let mut v = num_complex::Complex64::new(0.0, 0.0);
                for (n, c) in &coeffs {
                    let k = (n * j).rem_euclid(g);
                    let theta = std::f64::consts::TAU * k as f64 / g as f64;
                    v += c * num_complex::Complex64::from_polar(1.0, theta);
                }
                sup = sup.max(v.norm());
            }
            total += sup;
        }
        Ok(total)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts = self.terms.iter().map(|(s, c)| {
            if s.is_identity() {
                return c.to_string();
            }
            if c.is_one() {
                return s.to_string();
            }
            if *c == Cyclotomic::from_integer(-1) {
                return format!("-{s}");
            }
            if display_term_count(c) == 1 {
                format!("{c}*{s}")
            } else {
                format!("({c})*{s}")
            }
        });
        f.write_str(&join_signed(parts))
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    /// Panics on x-degree overflow; see [`AlgebraElement::checked_product`].
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_product(rhs).expect("x-degree overflow")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(s, c)| (s.clone(), -c)))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

/// Closed-form product of two algebra elements.
pub fn product(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.checked_product(b)
}
