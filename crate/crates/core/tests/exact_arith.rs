mod common;

use csalg::exact_arith::{field_arithmetic, FieldOp};
use csalg::{parse_element, BigRational, Cyclotomic, CyclotomicField};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn random_in(rng: &mut impl Rng, n: u64, height: i64) -> Cyclotomic {
    let field = CyclotomicField::new(n).unwrap();
    let coeffs: Vec<BigRational> = (0..field.degree())
        .map(|_| {
            BigRational::new(rng.gen_range(-height..=height).into(), rng.gen_range(1..=height.min(7)).into())
        })
        .collect();
    Cyclotomic::from_coeffs(&field, &coeffs)
}

#[test]
fn distributivity_per_conductor() {
    let mut rng = common::rng(100);
    for n in [1u64, 3, 4, 7, 12, 15] {
        for _ in 0..100 {
            let a = random_in(&mut rng, n, 9);
            let b = random_in(&mut rng, n, 9);
            let c = random_in(&mut rng, n, 9);
            assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }
    }
}

#[test]
fn inverses() {
    let mut rng = common::rng(101);
    for n in 1..=15u64 {
        for _ in 0..100 {
            let a = random_in(&mut rng, n, 9);
            if a.is_zero() {
                continue;
            }
            assert!((&a * &a.inv().unwrap()).is_one(), "N={n} a={a}");
        }
    }
    assert!(Cyclotomic::zero().inv().is_err());
}

#[test]
fn roots_of_unity_have_order_n() {
    for n in 1..=31u64 {
        let z = Cyclotomic::root_of_unity(n, 1).unwrap();
        assert!(z.pow_i64(n as i64).unwrap().is_one());
        if n > 1 {
            assert!(!z.pow_i64(n as i64 - 1).unwrap().is_one());
        }
    }
}

#[test]
fn embedding_is_multiplicative() {
    let mut rng = common::rng(102);
    for n in [3u64, 5, 8, 12, 21] {
        for _ in 0..50 {
            let a = random_in(&mut rng, n, 100);
            let b = random_in(&mut rng, n, 100);
            let lhs = (&a * &b).complex_embedding();
            let rhs: Complex64 = a.complex_embedding() * b.complex_embedding();
            assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0), "N={n}");
        }
    }
}

#[test]
fn mixed_conductors_promote() {
    let z3 = Cyclotomic::root_of_unity(3, 1).unwrap();
    let i = Cyclotomic::root_of_unity(4, 1).unwrap();
    let s = &z3 + &i;
    assert_eq!(s.conductor(), 12);
    assert_eq!(&s - &i, z3);
    assert_eq!(Cyclotomic::root_of_unity(12, 4).unwrap(), z3);
    let q = field_arithmetic(&z3, &i, FieldOp::Div).unwrap();
    assert_eq!(&q * &i, z3);
    assert!(field_arithmetic(&z3, &Cyclotomic::zero(), FieldOp::Div).is_err());
}

#[test]
fn display_round_trips_through_parser() {
    let mut rng = common::rng(103);
    for n in [1u64, 3, 4, 5, 8, 9, 12, 15] {
        for _ in 0..40 {
            let a = random_in(&mut rng, n, 5);
            let back = csalg::algebra::parse_scalar(&a.to_string()).unwrap();
            assert_eq!(back, a, "N={n} text={a}");
        }
    }
    assert_eq!(parse_element("z3^2").unwrap().to_string(), "z3^2");
}

proptest! {
    #[test]
    fn conjugation_is_an_automorphism(p in -20i64..20, q in 1i64..20, e in 0i128..12, f in 0i128..12) {
        let a = &Cyclotomic::root_of_unity(12, e).unwrap() * &Cyclotomic::ratio(p, q);
        let b = Cyclotomic::root_of_unity(12, f).unwrap();
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!(a.norm_sq().conjugate(), a.norm_sq());
    }

    #[test]
    fn reduce_conductor_preserves_value(e in 0i128..30, c in -5i64..5) {
        let a = &Cyclotomic::root_of_unity(30, e).unwrap() + &Cyclotomic::from_integer(c);
        let r = a.reduce_conductor();
        prop_assert_eq!(30 % r.conductor(), 0);
        prop_assert_eq!(r, a);
    }
}
