//! The semigroup algebra `CS`, which also models finitely supported elements
//! of the completions `A` (l1 norm) and `B` (sup norm on each graded piece).

mod element;
mod laurent;
mod parser;

pub use element::{product, AlgebraElement};
pub use laurent::LaurentPoly;
pub use parser::{parse_element, parse_scalar};

/// Plain-text form; the inverse of [`parse_element`].
pub fn format_element(a: &AlgebraElement) -> String {
    a.to_string()
}
