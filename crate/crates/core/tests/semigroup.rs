mod common;

use csalg::semigroup::{multiply, product_bit_bound, word_to_normal_form, Letter};
use csalg::{BigInt, SemigroupElement};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn closed_form_matches_rewriting() {
    let mut rng = common::rng(200);
    for _ in 0..1000 {
        let u = common::random_word(&mut rng, 12);
        let v = common::random_word(&mut rng, 12);
        let uv: Vec<Letter> = u.iter().chain(&v).copied().collect();
        let lhs = multiply(&word_to_normal_form(&u).unwrap(), &word_to_normal_form(&v).unwrap()).unwrap();
        assert_eq!(lhs, word_to_normal_form(&uv).unwrap());
    }
}

fn random_big(rng: &mut impl Rng) -> SemigroupElement {
    let mag = BigInt::from(rng.gen::<u64>());
    let n = if rng.gen_bool(0.5) { -mag } else { mag };
    SemigroupElement::new(rng.gen_range(0..=6), n).unwrap()
}

#[test]
fn associativity_with_large_exponents() {
    let mut rng = common::rng(201);
    for _ in 0..500 {
        let (s, t, u) = (random_big(&mut rng), random_big(&mut rng), random_big(&mut rng));
        assert_eq!(&(&s * &t) * &u, &s * &(&t * &u));
    }
}

#[test]
fn exponent_growth_is_bounded() {
    let mut rng = common::rng(202);
    for _ in 0..500 {
        let (s, t) = (random_big(&mut rng), random_big(&mut rng));
        let bits = (&s * &t).n().bits();
        let bound = (s.n().bits() + t.m() as u64).max(t.n().bits()) + 1;
        assert!(bits <= bound);
        assert!(bits <= product_bit_bound(&s, &t));
    }
}

#[test]
fn basic_law() {
    let y = SemigroupElement::y();
    let x = SemigroupElement::x();
    assert_eq!(&y * &x, SemigroupElement::new(1, 2).unwrap());
    assert_eq!((&y * &x).to_string(), "x*y^2");
    assert!(x.invert().is_err());
    assert_eq!(&y * &y.invert().unwrap(), SemigroupElement::identity());
    assert!(matches!(
        SemigroupElement::new(1 << 31, 0).and_then(|s| s.checked_mul(&x)),
        Err(csalg::Error::DegreeOverflow)
    ));
}

proptest! {
    #[test]
    fn words_parse_to_their_normal_form(w in "[xyY]{0,16}") {
        let letters = Letter::parse_word(&w).unwrap();
        let nf = word_to_normal_form(&letters).unwrap();
        let count_x = w.chars().filter(|&c| c == 'x').count() as u32;
        prop_assert_eq!(nf.m(), count_x);
    }
}
