//! Finite-dimensional representations: characters, the matrix family
//! `pi_{alpha,gamma}`, the Burnside irreducibility test, separation of
//! points, and the averaging sequence space.

mod avg;
mod matrix;
mod separate;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use avg::{avg_act_x, avg_act_y, eigen_support, AvgSequence};
pub use matrix::Matrix;
pub use separate::{separate, Separation, DEFAULT_MAX_K};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::exact_arith::{lcm_conductor, Cyclotomic, CyclotomicField, ExponentSum};
use crate::mu_dynamics::doubling_orbit;
use crate::series::residue;
use matrix::Echelon;

/// Largest dimension accepted by [`make_rep`].
pub const MAX_REP_K: u32 = 24;

/// Exponents beyond this are refused for bases that are not roots of unity.
pub const POW_GUARD: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Bounded on the Banach algebras: `|chi(x)| <= 1`, `|gamma| <= 1`.
    Banach,
    /// Representations of the bare algebra, with no norm constraint.
    Algebraic,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "banach" => Ok(Mode::Banach),
            "algebraic" => Ok(Mode::Algebraic),
            _ => Err(Error::parse(0, format!("unknown mode '{s}'"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Banach => "banach",
            Mode::Algebraic => "algebraic",
        })
    }
}

/// Multiplicative order of `c` if it is a root of unity.
fn root_order(c: &Cyclotomic) -> Option<u64> {
    let c = c.reduce_conductor();
    let n = c.conductor();
    let m = if n % 2 == 1 { 2 * n } else { n };
    c.as_root_of_unity().map(|e| m / e.gcd(&m))
}

/// `base^e`, reducing the exponent when the base has finite order.
fn guarded_pow(base: &Cyclotomic, order: Option<u64>, e: &BigInt) -> Result<Cyclotomic> {
    if let Some(o) = order {
        return base.pow(&BigInt::from(residue(e, o)));
    }
    if base.is_zero() {
        return Ok(if e.is_zero() {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        });
    }
    if e.abs() > BigInt::from(POW_GUARD) {
        return Err(Error::GuardExceeded(format!(
            "power {e} of {base}, which is not a root of unity"
        )));
    }
    base.pow(e)
}

fn norm_sq_rational(c: &Cyclotomic, what: &str) -> Result<num_rational::BigRational> {
    c.norm_sq().as_rational().ok_or_else(|| {
        Error::InvalidCharacter(format!("|{what}|^2 is not rational, cannot compare exactly"))
    })
}

/// A one-dimensional representation, determined by its values on `x`, `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    x: Cyclotomic,
    y: Cyclotomic,
    mode: Mode,
    x_order: Option<u64>,
    y_order: Option<u64>,
}

/// Validates `(chi(x), chi(y))` against the relation and the mode.
pub fn make_character(x_val: Cyclotomic, y_val: Cyclotomic, mode: Mode) -> Result<Character> {
    let bad = |why: &str| Err(Error::InvalidCharacter(format!("chi(x)={x_val}, chi(y)={y_val}: {why}")));
    if y_val.is_zero() {
        return bad("chi(y) must be nonzero");
    }
    if !y_val.is_one() && !x_val.is_zero() {
        return bad("the relation forces chi(y) = 1 or chi(x) = 0");
    }
    if mode == Mode::Banach {
        let bounded_x = y_val.is_one() && {
            let n = norm_sq_rational(&x_val, "chi(x)")?;
            !n.is_zero() && n <= num_rational::BigRational::from_integer(1.into())
        };
        let unimodular_y = x_val.is_zero() && y_val.norm_sq().is_one();
        if !bounded_x && !unimodular_y {
            return bad("banach mode needs chi(y) = 1 with 0 < |chi(x)| <= 1, or chi(x) = 0 with |chi(y)| = 1");
        }
    }
    let x_order = root_order(&x_val);
    let y_order = root_order(&y_val);
    Ok(Character {
        x: x_val,
        y: y_val,
        mode,
        x_order,
        y_order,
    })
}

impl Character {
    pub fn x_val(&self) -> &Cyclotomic {
        &self.x
    }

    pub fn y_val(&self) -> &Cyclotomic {
        &self.y
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Multiplicative extension to the whole algebra.
    pub fn evaluate(&self, a: &AlgebraElement) -> Result<Cyclotomic> {
        let mut x_pows: BTreeMap<u32, Cyclotomic> = BTreeMap::new();
        let mut total = Cyclotomic::zero();
        for (s, c) in a.terms() {
            if self.x.is_zero() && s.m() > 0 {
                continue;
            }
            let xm = match x_pows.get(&s.m()) {
                Some(v) => v.clone(),
                None => {
                    let v = guarded_pow(&self.x, self.x_order, &BigInt::from(s.m()))?;
                    x_pows.insert(s.m(), v.clone());
                    v
                }
            };
            let yn = if self.y.is_one() {
                Cyclotomic::one()
            } else {
                guarded_pow(&self.y, self.y_order, s.n())?
            };
            total = total + c * &(&xm * &yn);
        }
        Ok(total)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi(x={},y={})", self.x, self.y)
    }
}

/// The `k`-dimensional representation `x -> gamma X`, `y -> Y` with
/// `X` the cyclic shift `e_j -> e_(j+1)` and
/// `Y = diag(alpha, alpha^2, ..., alpha^(2^(k-1)))`, `alpha = zeta_N^e`,
/// `N = 2^k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    k: u32,
    e: u64,
    n: u64,
    gamma: Cyclotomic,
    gamma_order: Option<u64>,
    mode: Mode,
    x: Matrix,
    y: Matrix,
}

pub fn make_rep(k: u32, alpha_exp: u64, gamma: Cyclotomic, mode: Mode) -> Result<MatrixRep> {
    if k == 0 || k > MAX_REP_K {
        return Err(Error::InvalidRepresentation(format!(
            "k = {k} must lie in 1..={MAX_REP_K}"
        )));
    }
    let n = (1u64 << k) - 1;
    let e = alpha_exp % n;
    let orbit = doubling_orbit(n, e)?;
    if orbit.k() != k as usize {
        return Err(Error::InvalidRepresentation(format!(
            "the doubling orbit of {e} mod {n} has size {} != {k}",
            orbit.k()
        )));
    }
    if gamma.is_zero() {
        return Err(Error::InvalidRepresentation("gamma must be nonzero".into()));
    }
    if 4 % gamma.reduce_conductor().conductor() != 0 {
        return Err(Error::InvalidRepresentation(format!(
            "gamma = {gamma} is not a Gaussian rational"
        )));
    }
    if mode == Mode::Banach {
        let ns = gamma.norm_sq().as_rational().expect("Gaussian rational");
        if ns > num_rational::BigRational::from_integer(1.into()) {
            return Err(Error::InvalidRepresentation(format!(
                "banach mode needs |gamma| <= 1, got |gamma|^2 = {ns}"
            )));
        }
    }
    let ku = k as usize;
    let mut x = Matrix::zeros(ku, ku);
    for j in 0..ku {
        x.set((j + 1) % ku, j, Cyclotomic::one());
    }
    let diag = orbit
        .cycle()
        .iter()
        .map(|&r| Cyclotomic::root_of_unity(n, r as i128))
        .collect::<Result<Vec<_>>>()?;
    let gamma_order = root_order(&gamma);
    Ok(MatrixRep {
        k,
        e,
        n,
        gamma,
        gamma_order,
        mode,
        x,
        y: Matrix::diagonal(diag),
    })
}

impl MatrixRep {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alpha_exp(&self) -> u64 {
        self.e
    }

    /// `N = 2^k - 1`.
    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn gamma(&self) -> &Cyclotomic {
        &self.gamma
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The permutation matrix `X` (without the factor `gamma`).
    pub fn x_matrix(&self) -> &Matrix {
        &self.x
    }

    pub fn y_matrix(&self) -> &Matrix {
        &self.y
    }

    /// `pi(x) = gamma X` and `pi(y) = Y`.
    pub fn generators(&self) -> [Matrix; 2] {
        [self.x.scale(&self.gamma), self.y.clone()]
    }

    /// The one-dimensional character this representation equals when `k = 1`.
    pub fn as_character(&self) -> Option<Character> {
        (self.k == 1).then(|| Character {
            x: self.gamma.clone(),
            y: Cyclotomic::one(),
            mode: self.mode,
            x_order: self.gamma_order,
            y_order: Some(1),
        })
    }
}

impl fmt::Display for MatrixRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi(k={},e={},gamma={})", self.k, self.e, self.gamma)
    }
}

/// `pi(a) = sum_terms c (gamma X)^m Y^n`.
///
/// `(gamma X)^m Y^n` has a single nonzero entry per column: row
/// `(j + m) mod k`, value `gamma^m alpha^(2^j n)`.
pub fn evaluate_rep(rep: &MatrixRep, a: &AlgebraElement) -> Result<Matrix> {
    let k = rep.k as usize;
    let n = rep.n;
    let l = lcm_conductor(lcm_conductor(n, rep.gamma.conductor())?, a.conductor())?;
    let field = CyclotomicField::new(l)?;
    let step = l / n;
    // alpha^(2^j) = zeta_N^(col_exp[j])
    let mut col_exp = Vec::with_capacity(k);
    let mut cur = rep.e;
    for _ in 0..k {
        col_exp.push(cur);
        cur = ((cur as u128 * 2) % n as u128) as u64;
    }
    let mut acc: Vec<Option<ExponentSum>> = (0..k * k).map(|_| None).collect();
    let mut gamma_pows: BTreeMap<u32, Cyclotomic> = BTreeMap::new();
    for (s, c) in a.terms() {
        let gm = match gamma_pows.get(&s.m()) {
            Some(v) => v.clone(),
            None => {
                let v = guarded_pow(&rep.gamma, rep.gamma_order, &BigInt::from(s.m()))?;
                gamma_pows.insert(s.m(), v.clone());
                v
            }
        };
        let coeff = c * &gm;
        let nres = residue(s.n(), n) as u128;
        let shift_rows = (s.m() as u64 % k as u64) as usize;
        for (j, &ce) in col_exp.iter().enumerate() {
            let i = (j + shift_rows) % k;
            let exp = ((ce as u128 * nres) % n as u128) as u64 * step;
            acc[i * k + j]
                .get_or_insert_with(|| ExponentSum::new(field.clone()))
                .add_shifted(&coeff, exp)?;
        }
    }
    let mut out = Matrix::zeros(k, k);
    for (idx, slot) in acc.into_iter().enumerate() {
        if let Some(sum) = slot {
            out.set(idx / k, idx % k, sum.finish());
        }
    }
    Ok(out)
}

/// Burnside test: whether the algebra generated by `mats` (with identity),
/// i.e. the span of all words of length at most `k^2`, is all of `M_k`.
pub fn is_irreducible(mats: &[Matrix]) -> Result<bool> {
    let k = match mats.first() {
        Some(m) => m.rows(),
        None => return Err(Error::DimensionMismatch("no generators given".into())),
    };
    if mats.iter().any(|m| m.rows() != k || m.cols() != k) {
        return Err(Error::DimensionMismatch(
            "generators must all be square of the same size".into(),
        ));
    }
    let full = k * k;
    let mut basis = Echelon::new(full);
    let id = Matrix::identity(k);
    basis.insert(id.entries().to_vec())?;
    let mut frontier = vec![id];
    // only products of newly independent words can enlarge the span
    for _ in 0..full {
        if basis.rank() == full || frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for g in mats {
                let p = w.checked_mul(g)?;
                if basis.insert(p.entries().to_vec())? {
                    next.push(p);
                    if basis.rank() == full {
                        return Ok(true);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(basis.rank() == full)
}
