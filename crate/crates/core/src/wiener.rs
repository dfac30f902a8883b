//! Finitely supported two-sided coefficient sequences.
//!
//! A [`CoeffSeq`] `sum c_n delta_n` is read three ways: as a vector of the
//! left module `V_A`, as the trigonometric polynomial `sum c_n zeta^n` of the
//! Wiener algebra, and as an element of `V_B`. One exact implementation of
//! each action serves all three.
//!
//! Left action: `x delta_2n = delta_n`, `x delta_(2n-1) = 0`,
//! `y delta_n = delta_(n-1)`. Right action: `delta_n x = delta_2n`,
//! `delta_n y = delta_(n+1)`. The bilinear pairing `<v, w> = sum v_n w_n`
//! satisfies `<a v, w> = <v, w a>`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraElement, LaurentPoly};
use crate::error::{Error, Result};
use crate::exact_arith::Cyclotomic;
use crate::series::{add_at, evaluate_at_root, CoeffMap};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffSeq {
    coeffs: CoeffMap,
}

impl CoeffSeq {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The point mass `delta_n`.
    pub fn delta(n: impl Into<BigInt>) -> Self {
        Self::from_terms([(n.into(), Cyclotomic::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, Cyclotomic)>) -> Self {
        let mut coeffs = CoeffMap::new();
        for (n, c) in terms {
            add_at(&mut coeffs, n, c);
        }
        CoeffSeq { coeffs }
    }

    /// Convenience constructor from small integer indices.
    pub fn from_pairs<C: Into<Cyclotomic>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        Self::from_terms(terms.into_iter().map(|(n, c)| (BigInt::from(n), c.into())))
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

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest `|n|` in the support.
    pub fn max_abs_index(&self) -> BigInt {
        self.coeffs
            .keys()
            .map(|n| n.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_delta0(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .iter()
                .all(|(n, c)| n.is_zero() && c.is_one())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(n, v)| (n.clone(), v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            add_at(&mut out.coeffs, n.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_integer(-1)))
    }

    /// Value of the trigonometric polynomial at `zeta_N^e`.
    pub fn evaluate_at_root(&self, n: u64, e: u64) -> Result<Cyclotomic> {
        evaluate_at_root(self.coeffs.iter(), n, e)
    }
}

impl From<LaurentPoly> for CoeffSeq {
    fn from(p: LaurentPoly) -> Self {
        CoeffSeq::from_terms(p.into_map())
    }
}

impl fmt::Display for CoeffSeq {
    /// `c@n` pairs separated by `, `; the zero sequence prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(n, c)| {
                if crate::exact_arith::display_term_count(c) > 1 {
                    format!("({c})@{n}")
                } else {
                    format!("{c}@{n}")
                }
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl std::str::FromStr for CoeffSeq {
    type Err = Error;

    /// Parses `c@n, c@n, ...`; each `c` is a scalar in the element grammar.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(CoeffSeq::zero());
        }
        let mut terms = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let (c, n) = part
                .rsplit_once('@')
                .ok_or_else(|| Error::parse(offset, format!("expected 'c@n' in '{}'", part.trim())))?;
            let coeff = crate::algebra::parse_scalar(c).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + offset,
                    msg,
                },
                other => other,
            })?;
            let idx: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::parse(offset + c.len() + 1, format!("invalid index '{}'", n.trim())))?;
            terms.push((idx, coeff));
            offset += part.len() + 1;
        }
        Ok(CoeffSeq::from_terms(terms))
    }
}

/// `a . v` in the left module `V_A`.
pub fn left_act(a: &AlgebraElement, v: &CoeffSeq) -> CoeffSeq {
    let mut out = CoeffMap::new();
    for (s, c) in a.terms() {
        let step = BigInt::one() << s.m() as usize;
        for (idx, val) in v.terms() {
            // x^m y^n delta_idx = x^m delta_(idx - n)
            let shifted = idx - s.n();
            let (q, r) = shifted.div_mod_floor(&step);
            if r.is_zero() {
                add_at(&mut out, q, c * val);
            }
        }
    }
    CoeffSeq { coeffs: out }
}

/// `v . a` in the right (dual) module.
pub fn right_act(v: &CoeffSeq, a: &AlgebraElement) -> CoeffSeq {
    let mut out = CoeffMap::new();
    for (idx, val) in v.terms() {
        for (s, c) in a.terms() {
            // delta_idx x^m y^n = delta_(idx 2^m + n)
            let target = (idx << s.m() as usize) + s.n();
            add_at(&mut out, target, val * c);
        }
    }
    CoeffSeq { coeffs: out }
}

/// The bilinear pairing `sum v_n w_n` (no conjugation).
pub fn pairing(v: &CoeffSeq, w: &CoeffSeq) -> Cyclotomic {
    let (small, large) = if v.coeffs.len() <= w.coeffs.len() {
        (v, w)
    } else {
        (w, v)
    };
    small
        .coeffs
        .iter()
        .filter_map(|(n, c)| large.coeffs.get(n).map(|d| c * d))
        .sum()
}

/// Convolution product of l1(Z), i.e. pointwise product of trigonometric
/// polynomials.
pub fn wiener_product(f: &CoeffSeq, g: &CoeffSeq) -> CoeffSeq {
    let mut out = CoeffMap::new();
    for (i, a) in f.terms() {
        for (j, b) in g.terms() {
            add_at(&mut out, i + j, a * b);
        }
    }
    CoeffSeq { coeffs: out }
}

/// `xi_k^-1 x^N y^k xi`. For finitely supported `xi` this is exactly
/// `delta_0` as soon as `2^N` exceeds every index of `y^k xi` other than 0.
pub fn map_to_delta0(xi: &CoeffSeq, k: &BigInt, big_n: u32) -> Result<CoeffSeq> {
    let xk = xi.coefficient(k);
    if xk.is_zero() {
        return Err(Error::Precondition(format!(
            "coefficient of xi at index {k} is zero"
        )));
    }
    let op = AlgebraElement::monomial(
        crate::semigroup::SemigroupElement::new(big_n, k.clone())?,
        xk.inv()?,
    );
    Ok(left_act(&op, xi))
}

/// A value of `N` that is sufficient for [`map_to_delta0`] to land exactly on
/// `delta_0`: one more than the bit length of the largest shifted index.
pub fn sufficient_power(xi: &CoeffSeq, k: &BigInt) -> u32 {
    let max = xi
        .terms()
        .map(|(n, _)| (n - k).abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    1 + max.bits() as u32
}

/// Search bound for [`faithfulness_witness`].
pub fn witness_bound(a: &AlgebraElement) -> u64 {
    1 + a.num_terms() as u64
}

/// The index `j` of smallest `|j|` (positive first on ties) with
/// `delta_j . a != 0`, or `None` when `a = 0`.
///
/// Two distinct terms `x^m y^n`, `x^p y^q` send `delta_j` to the same index
/// for at most one `j` (and never when `m = p`), so a fixed term collides
/// with the others for at most `t - 1` values of `j`; the window
/// `|j| <= 1 + t` therefore always contains a witness. Failing to find one is
/// reported as an internal error.
pub fn faithfulness_witness(a: &AlgebraElement) -> Result<Option<BigInt>> {
    if a.is_zero() {
        return Ok(None);
    }
    let bound = witness_bound(a) as i64;
    for mag in 0..=bound {
        let candidates: &[i64] = if mag == 0 { &[0] } else { &[mag, -mag] };
        for &j in candidates {
            if !right_act(&CoeffSeq::delta(j), a).is_zero() {
                return Ok(Some(BigInt::from(j)));
            }
        }
    }
    Err(Error::Internal(format!(
        "no faithfulness witness within |j| <= {bound} for {a}"
    )))
}
