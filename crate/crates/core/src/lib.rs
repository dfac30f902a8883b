//! Exact computational algebra for the semigroup `S = <x, y | yx = xy^2>` with
//! `y` invertible, its semigroup algebra, and its finite-dimensional
//! representation theory.

pub mod algebra;
pub mod classification;
pub mod error;
pub mod exact_arith;
pub mod mu_dynamics;
pub mod representations;
pub mod semigroup;
mod series;
pub mod wiener;
pub mod wiener_k;

pub use algebra::{format_element, parse_element, AlgebraElement, LaurentPoly};
pub use error::{Error, Result};
pub use exact_arith::{BigInt, BigRational, Cyclotomic, CyclotomicField};
pub use semigroup::SemigroupElement;
pub use wiener::CoeffSeq;
