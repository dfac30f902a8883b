//! Exact elements of the cyclotomic fields `Q(zeta_N)`.
//!
//! An element is stored as an integer coefficient vector over the power basis
//! `1, zeta, ..., zeta^(d-1)` (with `d = deg Phi_N`) together with one positive
//! common denominator. The pair is kept in lowest terms, so equality inside a
//! single field is structural. Elements of different fields are compared and
//! combined in the field of the least common multiple of the conductors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::inverse_multimodular;
use super::poly::{common_denominator, cyclotomic_polynomial, divisors, euler_phi};
use crate::error::{Error, Result};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u64 = u32::MAX as u64;

// Fields are immutable, so one instance per conductor is shared process-wide.
static FIELD_CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
const CACHE_LIMIT: u64 = 1 << 16;

/// The field `Q(zeta_N)` together with its defining modulus `Phi_N`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    degree: usize,
    modulus: Vec<BigInt>,
    // nonzero non-leading coefficients of the modulus
    sparse: Vec<(usize, BigInt)>,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Arc<Self>> {
        if conductor == 0 {
            return Err(Error::Precondition("conductor must be positive".into()));
        }
        if conductor > MAX_CONDUCTOR {
            return Err(Error::ConductorOverflow(conductor as u128));
        }
        let cache = FIELD_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().expect("field cache poisoned").get(&conductor) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(conductor));
        if conductor <= CACHE_LIMIT {
            cache
                .lock()
                .expect("field cache poisoned")
                .insert(conductor, field.clone());
        }
        Ok(field)
    }

    fn build(conductor: u64) -> Self {
        let modulus = cyclotomic_polynomial(conductor);
        let degree = modulus.len() - 1;
        let sparse = modulus[..degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        CyclotomicField {
            conductor,
            degree,
            modulus,
            sparse,
        }
    }

    pub fn rationals() -> Arc<Self> {
        Self::new(1).expect("conductor 1 is valid")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Phi_N`, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// `zeta_N^e` for any integer exponent.
    pub fn zeta_pow(self: &Arc<Self>, e: i128) -> Cyclotomic {
        let r = e.rem_euclid(self.conductor as i128) as u64;
        let mut acc = ExponentSum::new(self.clone());
        acc.add_int(r, &BigInt::one());
        acc.finish()
    }

    fn reduce(&self, v: &mut Vec<BigInt>) {
        let d = self.degree;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                let c = std::mem::take(&mut v[i]);
                if c.is_zero() {
                    continue;
                }
                for (j, p) in &self.sparse {
                    v[i - d + j] -= &c * p;
                }
            }
        }
        v.resize(d, BigInt::zero());
    }
}

/// Accumulates a rational combination of powers `zeta_N^e` over the ring
/// `Q[x]/(x^N - 1)`, reducing modulo `Phi_N` only once at the end.
pub struct ExponentSum {
    field: Arc<CyclotomicField>,
    slots: Vec<BigRational>,
}

impl ExponentSum {
    pub fn new(field: Arc<CyclotomicField>) -> Self {
        let n = field.conductor as usize;
        ExponentSum {
            field,
            slots: vec![BigRational::zero(); n],
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn add_int(&mut self, exp: u64, c: &BigInt) {
        let i = (exp % self.field.conductor) as usize;
        self.slots[i] += BigRational::from_integer(c.clone());
    }

    pub fn add_rational(&mut self, exp: u64, c: &BigRational) {
        let i = (exp % self.field.conductor) as usize;
        self.slots[i] += c;
    }

    /// Adds `a * zeta_N^shift`. The conductor of `a` must divide `N`.
    pub fn add_shifted(&mut self, a: &Cyclotomic, shift: u64) -> Result<()> {
        let n = self.field.conductor;
        let an = a.field.conductor;
        if !n.is_multiple_of(an) {
            return Err(Error::ConductorMismatch { from: an, to: n });
        }
        let step = n / an;
        for (j, c) in a.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as u64 % n) * step + shift % n) % n;
            self.slots[e as usize] += BigRational::new(c.clone(), a.den.clone());
        }
        Ok(())
    }

    pub fn finish(self) -> Cyclotomic {
        let den = common_denominator(self.slots.iter());
        let mut num: Vec<BigInt> = self
            .slots
            .iter()
            .map(|s| {
                if s.is_zero() {
                    BigInt::zero()
                } else {
                    s.numer() * (&den / s.denom())
                }
            })
            .collect();
        self.field.reduce(&mut num);
        Cyclotomic::from_parts(self.field, num, den)
    }
}

/// An exact element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(N={}, {})", self.conductor(), self)
    }
}

pub(crate) fn lcm_conductor(a: u64, b: u64) -> Result<u64> {
    let l = (a as u128) / (a.gcd(&b) as u128) * (b as u128);
    if l > MAX_CONDUCTOR as u128 {
        Err(Error::ConductorOverflow(l))
    } else {
        Ok(l as u64)
    }
}

impl Cyclotomic {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut c = Cyclotomic { field, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn zero_in(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree],
            den: BigInt::one(),
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let field = CyclotomicField::rationals();
        Self::from_parts(field, vec![r.numer().clone()], r.denom().clone())
    }

    /// `p/q` as a rational element.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `zeta_N^e`.
    pub fn root_of_unity(conductor: u64, e: i128) -> Result<Self> {
        Ok(CyclotomicField::new(conductor)?.zeta_pow(e))
    }

    /// The element with the given power-basis coefficients. Longer inputs are
    /// reduced modulo `Phi_N`.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Self {
        let den = common_denominator(coeffs.iter());
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|s| {
                if s.is_zero() {
                    BigInt::zero()
                } else {
                    s.numer() * (&den / s.denom())
                }
            })
            .collect();
        field.reduce(&mut num);
        Self::from_parts(field.clone(), num, den)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    /// Power-basis coefficients, `deg Phi_N` of them.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(zeta_M)` via `zeta_N -> zeta_M^(M/N)`.
    pub fn promote(&self, m: u64) -> Result<Self> {
        let n = self.conductor();
        if m == n {
            return Ok(self.clone());
        }
        if m == 0 || !m.is_multiple_of(n) {
            return Err(Error::ConductorMismatch { from: n, to: m });
        }
        self.promote_into(&CyclotomicField::new(m)?)
    }

    pub fn promote_into(&self, field: &Arc<CyclotomicField>) -> Result<Self> {
        if field.conductor == self.conductor() {
            return Ok(self.clone());
        }
        if self.conductor() == 1 {
            // fast path for rationals
            let mut num = vec![BigInt::zero(); field.degree];
            num[0] = self.num[0].clone();
            return Ok(Cyclotomic {
                field: field.clone(),
                num,
                den: self.den.clone(),
            });
        }
        let mut acc = ExponentSum::new(field.clone());
        acc.add_shifted(self, 0)?;
        Ok(acc.finish())
    }

    /// Brings two operands into a common field.
    pub fn lift_pair(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let (n, m) = (a.conductor(), b.conductor());
        if n == m {
            return Ok((a.clone(), b.clone()));
        }
        if m % n == 0 {
            return Ok((a.promote_into(&b.field)?, b.clone()));
        }
        if n % m == 0 {
            return Ok((a.clone(), b.promote_into(&a.field)?));
        }
        let field = CyclotomicField::new(lcm_conductor(n, m)?)?;
        Ok((a.promote_into(&field)?, b.promote_into(&field)?))
    }

    fn with_common<T>(a: &Self, b: &Self, op: impl FnOnce(&Self, &Self) -> T) -> T {
        if a.conductor() == b.conductor() {
            op(a, b)
        } else {
            let (x, y) = Self::lift_pair(a, b).expect("conductor overflow in mixed arithmetic");
            op(&x, &y)
        }
    }

    fn add_same(a: &Self, b: &Self) -> Self {
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect()
        };
        let den = if a.den == b.den {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        Self::from_parts(a.field.clone(), num, den)
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let d = a.field.degree;
        if a.conductor() == 1 {
            return Self::from_parts(
                a.field.clone(),
                vec![&a.num[0] * &b.num[0]],
                &a.den * &b.den,
            );
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        a.field.reduce(&mut prod);
        Self::from_parts(a.field.clone(), prod, &a.den * &b.den)
    }

    /// Scales by a rational without changing the field.
    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor() == 1 {
            return Ok(Self::from_parts(
                self.field.clone(),
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        // (num/den)^-1 = den * num^-1
        let scale = BigRational::from_integer(self.den.clone());
        let field = self.field.clone();
        let num_elem = Self::from_parts(field.clone(), self.num.clone(), BigInt::one());
        let inv = inverse_multimodular(&self.num, &field.modulus, |c| {
            (&num_elem * &Self::from_coeffs(&field, c)).is_one()
        })
        .ok_or_else(|| Error::Internal(format!("inverse of {self} not found")))?;
        Ok(Self::from_coeffs(&field, &inv).scale(&scale))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: &BigInt) -> Result<Self> {
        let base = if e.is_negative() {
            self.inv()?
        } else {
            self.clone()
        };
        let mut exp = e.abs();
        let mut result = Self::one().promote_into(&self.field)?;
        let mut sq = base;
        let two = BigInt::from(2);
        while !exp.is_zero() {
            if exp.is_odd() {
                result = &result * &sq;
            }
            exp /= &two;
            if !exp.is_zero() {
                sq = &sq * &sq;
            }
        }
        Ok(result)
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        self.pow(&BigInt::from(e))
    }

    /// Multiplies by `zeta_N^e` inside the element's own field.
    pub fn mul_zeta(&self, e: i128) -> Self {
        let n = self.conductor() as i128;
        let shift = e.rem_euclid(n) as u64;
        let mut acc = ExponentSum::new(self.field.clone());
        acc.add_shifted(self, shift).expect("same field");
        acc.finish()
    }

    /// Complex conjugation, the automorphism `zeta_N -> zeta_N^(N-1)`.
    pub fn conjugate(&self) -> Self {
        self.galois(self.conductor() - 1)
    }

    /// The automorphism `zeta_N -> zeta_N^t`; `t` must be coprime to `N`.
    pub fn galois(&self, t: u64) -> Self {
        let n = self.conductor();
        debug_assert_eq!(t.gcd(&n), 1);
        if n == 1 {
            return self.clone();
        }
        let mut acc = ExponentSum::new(self.field.clone());
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let e = ((j as u128 * t as u128) % n as u128) as u64;
                acc.add_rational(e, &BigRational::new(c.clone(), self.den.clone()));
            }
        }
        acc.finish()
    }

    /// `a * conj(a)`, the squared modulus under any embedding.
    pub fn norm_sq(&self) -> Self {
        self * &self.conjugate()
    }

    /// Value under the embedding `zeta_N -> exp(2 pi i / N)`.
    pub fn complex_embedding(&self) -> Complex64 {
        let n = self.conductor();
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or_else(|| c.to_f64().unwrap_or(f64::NAN) / den);
            if j == 0 {
                re += v;
                continue;
            }
            let theta = std::f64::consts::TAU * (j as f64) / (n as f64);
            re += v * theta.cos();
            im += v * theta.sin();
        }
        Complex64::new(re, im)
    }

    /// The same element written over the smallest cyclotomic field that
    /// contains it.
    pub fn reduce_conductor(&self) -> Self {
        let n = self.conductor();
        if n == 1 {
            return self.clone();
        }
        if let Some(r) = self.as_rational() {
            return Self::from_rational(r);
        }
        for d in divisors(n) {
            if d == 1 || d == n {
                continue;
            }
            if let Some(c) = self.express_in_subfield(d) {
                return c;
            }
        }
        self.clone()
    }

    // Solves for rational coordinates over the power basis of Q(zeta_d).
    fn express_in_subfield(&self, d: u64) -> Option<Self> {
        let n = self.conductor();
        let sub_deg = euler_phi(d) as usize;
        let step = n / d;
        let deg = self.field.degree;
        // columns: zeta_N^(j*step) for j < sub_deg, plus the target
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); sub_deg + 1]; deg];
        for j in 0..sub_deg {
            let col = self.field.zeta_pow((j as u64 * step) as i128).coeffs();
            for (i, v) in col.into_iter().enumerate() {
                rows[i][j] = v;
            }
        }
        for (i, v) in self.coeffs().into_iter().enumerate() {
            rows[i][sub_deg] = v;
        }
        let solution = solve_rational(rows, sub_deg)?;
        let field = CyclotomicField::new(d).ok()?;
        Some(Self::from_coeffs(&field, &solution))
    }

    /// If the element is a root of unity, its exponent `e` with respect to
    /// `zeta_M`, where `M = 2N` for odd `N` and `M = N` otherwise.
    pub fn as_root_of_unity(&self) -> Option<u64> {
        let n = self.conductor();
        // roots of unity in Q(zeta_N) are the 2N-th (N odd) or N-th roots
        let order = if n % 2 == 1 { 2 * n } else { n };
        let field = CyclotomicField::new(order).ok()?;
        let me = self.promote_into(&field).ok()?;
        (0..order).find(|&e| field.zeta_pow(e as i128) == me)
    }
}

// Gaussian elimination on an augmented system with `unknowns` columns plus
// the right-hand side. Returns the unique solution or `None` if inconsistent.
fn solve_rational(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let prow = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][unknowns].clone();
    }
    Some(sol)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.den == other.den && self.num == other.num
        } else {
            match Self::lift_pair(self, other) {
                Ok((a, b)) => a.den == b.den && a.num == b.num,
                Err(_) => false,
            }
        }
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() && rhs.conductor() == 1 {
            return self.clone();
        }
        if self.is_zero() && self.conductor() == 1 {
            return rhs.clone();
        }
        Cyclotomic::with_common(self, rhs, Cyclotomic::add_same)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = rhs.as_rational_fast() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational_fast() {
            return rhs.scale(&r);
        }
        Cyclotomic::with_common(self, rhs, Cyclotomic::mul_same)
    }
}

impl Cyclotomic {
    fn as_rational_fast(&self) -> Option<BigRational> {
        if self.conductor() == 1 {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}
