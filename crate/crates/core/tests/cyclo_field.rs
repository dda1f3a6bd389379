mod common;

use std::f64::consts::PI;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use sicpovm::cyclo::totient;
use sicpovm::{Conductor, CycloNumber, Error};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Elements of Q(zeta_72) with a few random terms of height at most 100.
fn element() -> impl Strategy<Value = CycloNumber> {
    prop::collection::vec((0usize..24, -100i64..=100, 1i64..=100), 1..5).prop_map(|terms| {
        let mut coeffs = vec![BigRational::zero(); totient(72)];
        for (k, n, d) in terms {
            coeffs[k] += rat(n, d);
        }
        CycloNumber::from_coeffs(72, &coeffs).unwrap()
    })
}

#[test]
fn root_examples() {
    assert_eq!(root(1, 0), CycloNumber::one());
    let z6 = root(6, 1);
    assert!((z6.clone() * z6.clone() - z6 + CycloNumber::one()).is_zero());
    let z36 = root(36, 1);
    assert!((z36.embed() - cis(PI / 18.0)).norm() < 1e-15);
    assert_eq!(root(18, 1), z36.pow(2));
    assert!((root(18, 1).embed() - cis(PI / 9.0)).norm() < 1e-15);
    assert!(matches!(
        CycloNumber::root(CTX, 5, 1),
        Err(Error::RootNotInField { order: 5, conductor: 72 })
    ));
}

#[test]
fn sqrt_examples() {
    let s2 = sqrt(2);
    assert_eq!(s2.clone() * s2.clone(), q(2, 1));
    assert!((sqrt(3).embed() - c(3f64.sqrt(), 0.0)).norm() < 1e-15);
    assert!((sqrt(3).embed().re - 1.7320508).abs() < 1e-7);
    assert_eq!(sqrt(6), s2 * sqrt(3));
    assert_eq!(sqrt(12), q(2, 1) * sqrt(3));
    assert!(matches!(CycloNumber::sqrt_int(CTX, 5), Err(Error::UnsupportedRadical { .. })));
    assert!(CycloNumber::sqrt_int(Conductor(9), 2).is_err());
}

#[test]
fn arithmetic_examples() {
    let a = q(3, 7) * root(72, 5) + q(-2, 1);
    assert!((a.clone() + (-a)).is_zero());
    assert_eq!(root(72, 1) * root(72, 71), CycloNumber::one());

    // (1/4 + 3/4 xi)(1/4 + 3/4 conj xi) for xi = -1 and for a cube root
    for xi in [q(-1, 1), root(3, 1)] {
        let s = q(1, 4) + q(3, 4) * xi.clone();
        let expected = q(1, 16) + q(9, 16) + q(3, 16) * (xi.clone() + xi.conj());
        assert_eq!(s.abs_sq(), expected);
    }
    assert_eq!((q(1, 4) + q(3, 4) * q(-1, 1)).abs_sq(), q(1, 4));

    assert!(matches!(CycloNumber::zero().inv(), Err(Error::DivisionByZero)));
}

#[test]
fn conj_examples() {
    assert_eq!(q(5, 3).conj(), q(5, 3));
    assert_eq!(root(72, 1).conj(), root(72, 71));
    let top = q(1, 2) * root(18, 1);
    assert!((top.conj().embed() - cis(-PI / 9.0) * 0.5).norm() < 1e-15);
}

#[test]
fn abs_sq_examples() {
    assert!(CycloNumber::zero().abs_sq().is_zero());
    // 1/2 e^{i pi/9}, the inner product of successive bicyclic basis vectors
    assert_eq!((q(1, 2) * root(18, 1)).abs_sq(), q(1, 4));
    for k in [1, 2] {
        assert_eq!((q(1, 1) + q(2, 1) * root(3, k)).abs_sq(), q(3, 1));
    }
}

#[test]
fn is_rational_examples() {
    assert_eq!(q(5, 3).is_rational(), Some(rat(5, 3)));
    assert_eq!(root(72, 1).is_rational(), None);
    assert_eq!((sqrt(2) * sqrt(2) * q(1, 6)).is_rational(), Some(rat(1, 3)));
}

#[test]
fn embed_examples() {
    assert_eq!(CycloNumber::one().embed(), c(1.0, 0.0));
    assert!((root(4, 1).embed() - c(0.0, 1.0)).norm() < 1e-15);
}

#[test]
fn mixed_conductors_promote() {
    let a = CycloNumber::root(Conductor(8), 8, 1).unwrap();
    let b = CycloNumber::root(Conductor(9), 9, 1).unwrap();
    let p = a.clone() * b.clone();
    assert_eq!(p.conductor(), 72);
    assert!((p.embed() - a.embed() * b.embed()).norm() < 1e-14);
}

#[test]
fn zeta_has_exact_order() {
    for n in [1u32, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72] {
        let z = root(n, 1);
        let mut p = CycloNumber::one();
        for k in 1..=n {
            p = p * z.clone();
            assert_eq!(p.is_one(), k == n, "zeta_{n}^{k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in element(), b in element(), c3 in element()) {
        prop_assert_eq!((a.clone() + b.clone()) + c3.clone(), a.clone() + (b.clone() + c3.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c3.clone(), a.clone() * (b.clone() * c3.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(
            a.clone() * (b.clone() + c3.clone()),
            a.clone() * b.clone() + a.clone() * c3.clone()
        );
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embed_is_a_homomorphism(a in element(), b in element()) {
        // 1e-12 relative to the operand scale; heights near 100 put |ab| far above 1
        let scale = |x: &CycloNumber| x.coeffs().iter().map(|c| c.to_f64().unwrap().abs()).sum::<f64>().max(1.0);
        let (sa, sb) = (scale(&a), scale(&b));
        prop_assert!(((a.clone() * b.clone()).embed() - a.embed() * b.embed()).norm() <= 1e-12 * sa * sb);
        prop_assert!(((a.clone() + b.clone()).embed() - (a.embed() + b.embed())).norm() <= 1e-12 * (sa + sb));
        prop_assert!((a.conj().embed() - a.embed().conj()).norm() <= 1e-12 * sa);
    }

    #[test]
    fn conj_is_an_involution(a in element()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.abs_sq(), a.conj().abs_sq());
        prop_assert!(a.abs_sq().embed().re >= -1e-12);
        prop_assert!(a.abs_sq().embed().im.abs() <= 1e-12);
    }
}
