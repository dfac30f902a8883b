#![allow(dead_code)]

use csalg::semigroup::Letter;
use csalg::{AlgebraElement, CoeffSeq, Cyclotomic, SemigroupElement};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Letter::X,
            1 => Letter::Y,
            _ => Letter::YInv,
        })
        .collect()
}

/// A small nonzero rational.
pub fn random_rational(rng: &mut impl Rng) -> Cyclotomic {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-4..=4);
    }
    Cyclotomic::ratio(p, rng.gen_range(1..=3))
}

/// A nonzero element of `Q(zeta_12)` with one or two terms.
pub fn random_z12(rng: &mut impl Rng) -> Cyclotomic {
    loop {
        let mut c = Cyclotomic::zero();
        for _ in 0..rng.gen_range(1..=2) {
            let z = Cyclotomic::root_of_unity(12, rng.gen_range(0..12)).unwrap();
            c = c + &z * &random_rational(rng);
        }
        if !c.is_zero() {
            return c;
        }
    }
}

pub struct ElementShape {
    pub max_terms: usize,
    pub max_m: u32,
    pub max_n: i64,
}

pub const SMALL: ElementShape = ElementShape {
    max_terms: 4,
    max_m: 3,
    max_n: 6,
};

pub fn random_element(rng: &mut impl Rng, shape: &ElementShape) -> AlgebraElement {
    loop {
        let mut a = AlgebraElement::zero();
        for _ in 0..rng.gen_range(1..=shape.max_terms) {
            let s = SemigroupElement::new(
                rng.gen_range(0..=shape.max_m),
                rng.gen_range(-shape.max_n..=shape.max_n),
            )
            .unwrap();
            a.add_term(s, random_z12(rng));
        }
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_monomial(rng: &mut impl Rng, max_m: u32, max_n: i64) -> AlgebraElement {
    AlgebraElement::monomial(
        SemigroupElement::new(rng.gen_range(0..=max_m), rng.gen_range(-max_n..=max_n)).unwrap(),
        random_rational(rng),
    )
}

/// Sequence with at most `max_support` entries at indices in `[-spread, spread]`.
pub fn random_seq(rng: &mut impl Rng, max_support: usize, spread: i64) -> CoeffSeq {
    let len = rng.gen_range(1..=max_support);
    CoeffSeq::from_terms(
        (0..len).map(|_| (rng.gen_range(-spread..=spread).into(), random_rational(rng))),
    )
}

/// Integer-coefficient trigonometric polynomial with indices in `0..=deg`.
pub fn random_int_poly(rng: &mut impl Rng, deg: i64) -> CoeffSeq {
    CoeffSeq::from_pairs((0..=deg).map(|n| (n, rng.gen_range(-3i64..=3))))
}
