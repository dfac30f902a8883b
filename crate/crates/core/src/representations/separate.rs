use std::fmt;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::exact_arith::Cyclotomic;
use crate::mu_dynamics::enumerate_mu_orbits;

use super::{evaluate_rep, make_rep, Character, Matrix, MatrixRep, Mode};

/// Default cap on the dimension searched by [`separate`].
pub const DEFAULT_MAX_K: u32 = 12;

/// A representation under which an element has nonzero image, with that
/// image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Character { chi: Character, value: Cyclotomic },
    Rep { rep: MatrixRep, image: Matrix },
}

impl Separation {
    pub fn descriptor(&self) -> String {
        match self {
            Separation::Character { chi, .. } => chi.to_string(),
            Separation::Rep { rep, .. } => rep.to_string(),
        }
    }

    pub fn witness(&self) -> String {
        match self {
            Separation::Character { value, .. } => value.to_string(),
            Separation::Rep { image, .. } => image.to_string(),
        }
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} witness={}", self.descriptor(), self.witness())
    }
}

/// Finds a bounded representation with `pi(a) != 0`.
///
/// With `m` the least x-degree of `a`, dimensions `k = 1, 2, ...` and orbit
/// representatives `e` are scanned in order until `phi_m(zeta_N^e) != 0`;
/// then `gamma = 1, 1/2, ..., 1/(D+1)` is tried, `D` the largest x-degree.
/// The graded pieces of `pi_gamma(a)` are separated by a Vandermonde
/// argument in `gamma`, so one of these values must succeed.
pub fn separate(a: &AlgebraElement, max_k: u32) -> Result<Separation> {
    let Some(m) = a.min_x_degree() else {
        return Err(Error::Precondition("cannot separate the zero element".into()));
    };
    let phi = a.extract_phi(m);
    let d = a.max_x_degree() as i64;
    for k in 1..=max_k {
        let n = (1u64 << k) - 1;
        for orbit in enumerate_mu_orbits(k)? {
            let e = orbit.smallest();
            if phi.evaluate_at_root(n, e)?.is_zero() {
                continue;
            }
            for q in 1..=d + 1 {
                let gamma = Cyclotomic::ratio(1, q);
                let rep = make_rep(k, e, gamma, Mode::Banach)?;
                let image = evaluate_rep(&rep, a)?;
                if image.is_zero() {
                    continue;
                }
                if let Some(chi) = rep.as_character() {
                    let value = image.get(0, 0).clone();
                    return Ok(Separation::Character { chi, value });
                }
                return Ok(Separation::Rep { rep, image });
            }
            return Err(Error::Internal(format!(
                "phi_{m} is nonzero at zeta_{n}^{e} yet every gamma candidate annihilates {a}"
            )));
        }
    }
    Err(Error::SearchExhausted(max_k))
}
