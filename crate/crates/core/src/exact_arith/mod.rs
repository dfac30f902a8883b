//! Exact rational and cyclotomic arithmetic.

mod cyclotomic;
mod format;
mod modular;
mod poly;

pub use cyclotomic::{Cyclotomic, CyclotomicField, ExponentSum, MAX_CONDUCTOR};
pub use format::{display_term_count, display_terms, format_rational};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::cyclotomic_polynomial;

pub(crate) use cyclotomic::lcm_conductor;
pub(crate) use format::join_signed;

use crate::error::{Error, Result};

/// `a op b` for the four field operations, with the division check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arithmetic(a: &Cyclotomic, b: &Cyclotomic, op: FieldOp) -> Result<Cyclotomic> {
    let (a, b) = Cyclotomic::lift_pair(a, b)?;
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a.checked_div(&b)?
        }
    })
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("invalid rational literal '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&q) {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
