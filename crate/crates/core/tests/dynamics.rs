mod common;

use common::*;
use csalg::classification::{check_direct_finiteness, choose_prime, verify_g1_invariance, Verdict};
use csalg::mu_dynamics::{cyclic_witness, enumerate_mu_orbits, in_chain_vp, is_certified_positive, is_minimal, SquareClosedSet};
use csalg::wiener::{right_act, wiener_product};
use csalg::wiener_k::{invert_on_k, restrict, spectrum_on_k, FnOnK};
use csalg::{AlgebraElement, BigRational, CoeffSeq, Cyclotomic};
use rand::Rng;

#[test]
fn chain_nesting_and_invariance() {
    let mut rng = rng(600);
    for p in 1..=6u32 {
        let q = 1i64 << p;
        let next = CoeffSeq::from_pairs([(2 * q, 1), (0, -1)]);
        let this = CoeffSeq::from_pairs([(q, 1), (0, -1)]);
        for _ in 0..10 {
            let f = wiener_product(&random_int_poly(&mut rng, 20), &next);
            assert!(in_chain_vp(&f, p).unwrap());
            let g = wiener_product(&random_int_poly(&mut rng, 20), &this);
            assert!(in_chain_vp(&right_act(&g, &AlgebraElement::x()), p).unwrap());
            assert!(in_chain_vp(&right_act(&g, &AlgebraElement::y()), p).unwrap());
        }
    }
}

#[test]
fn witnesses_are_positive_on_minimal_orbits() {
    let mut rng = rng(601);
    for k in 1..=5 {
        for o in enumerate_mu_orbits(k).unwrap() {
            assert!(is_minimal(o.as_set()));
            for _ in 0..5 {
                let f = random_seq(&mut rng, 5, 8);
                if restrict(&f, o.as_set()).unwrap().values().iter().all(Cyclotomic::is_zero) {
                    continue;
                }
                for (_, h) in cyclic_witness(&f, o.as_set()).unwrap() {
                    assert!(is_certified_positive(&h));
                }
            }
        }
    }
}

#[test]
fn restriction_is_an_algebra_map() {
    let mut rng = rng(602);
    let sets: Vec<SquareClosedSet> = (1..=5)
        .flat_map(|k| enumerate_mu_orbits(k).unwrap())
        .map(|o| o.as_set().clone())
        .chain([SquareClosedSet::new(7, 1..7).unwrap(), SquareClosedSet::new(15, [0, 5, 10]).unwrap()])
        .collect();
    for _ in 0..100 {
        let k = &sets[rng.gen_range(0..sets.len())];
        let f = random_seq(&mut rng, 6, 12);
        let g = random_seq(&mut rng, 6, 12);
        let lhs = restrict(&wiener_product(&f, &g), k).unwrap();
        let rhs = restrict(&f, k).unwrap().mul(&restrict(&g, k).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn inversion_dichotomy() {
    let mut rng = rng(603);
    for _ in 0..100 {
        let k = rng.gen_range(1..=6);
        let orbits = enumerate_mu_orbits(k).unwrap();
        let o = &orbits[rng.gen_range(0..orbits.len())];
        let f = restrict(&random_seq(&mut rng, 4, 6), o.as_set()).unwrap();
        let vanishes = f.values().iter().any(Cyclotomic::is_zero);
        match invert_on_k(&f) {
            Ok(g) => {
                assert!(!vanishes);
                assert!(f.mul(&g).unwrap().is_one());
            }
            Err(_) => assert!(vanishes),
        }
    }
}

#[test]
fn spectrum_of_coordinate_is_k() {
    for k in 1..=8 {
        for o in enumerate_mu_orbits(k).unwrap() {
            let u = FnOnK::coordinate(o.as_set()).unwrap();
            assert_eq!(spectrum_on_k(&u), o.as_set().points().unwrap());
        }
    }
}

#[test]
fn prime_choice_postconditions() {
    let mut rng = rng(604);
    for _ in 0..100 {
        let betas: Vec<BigRational> = (0..rng.gen_range(0..5))
            .map(|_| {
                let d: i64 = rng.gen_range(2..=1000);
                BigRational::new(rng.gen_range(1..d).into(), d.into())
            })
            .collect();
        let p = choose_prime(&betas).unwrap();
        assert!(p % 2 == 1 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)));
        for b in &betas {
            assert!(!(b * csalg::BigInt::from(p)).is_integer());
        }
    }
}

#[test]
fn direct_finiteness_never_fails() {
    let mut rng = rng(605);
    for _ in 0..500 {
        let a = random_element(&mut rng, &SMALL);
        let b = random_element(&mut rng, &SMALL);
        assert_ne!(check_direct_finiteness(&a, &b).unwrap(), Verdict::BothIdentities);
    }
}

#[test]
fn g1_for_gaussian_betas() {
    let i = Cyclotomic::root_of_unity(4, 1).unwrap();
    for alpha in [Cyclotomic::root_of_unity(3, 1).unwrap(), Cyclotomic::root_of_unity(3, 2).unwrap()] {
        for j in 1..=20 {
            let beta = &Cyclotomic::ratio(j, 7) + &(&i * &Cyclotomic::ratio(1, j));
            assert!(verify_g1_invariance(&alpha, &beta, 10).unwrap());
        }
    }
}
