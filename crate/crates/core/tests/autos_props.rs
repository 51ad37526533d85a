use hopfcalc_core::autos::{
    build_quadric_auto, finiteness_condition, jacobian_spectrum, map_spectrum, verify_quadric_invariance,
    JacobianSpectrum, QuadricAutoParams, QuadricCheck, QuadricVariant,
};
use hopfcalc_core::gauss::Gaussian;
use hopfcalc_core::ExponentVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-7i64..=7, 1i64..=5).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn gaussian() -> impl Strategy<Value = Gaussian> {
    (rational(), rational()).prop_map(|(re, im)| Gaussian::new(re, im))
}

fn nonzero_gaussian() -> impl Strategy<Value = Gaussian> {
    gaussian().prop_filter("nonzero", |z| !z.is_zero())
}

fn params(variant: QuadricVariant) -> impl Strategy<Value = QuadricAutoParams> {
    (4usize..=6, nonzero_gaussian(), nonzero_gaussian(), prop::collection::vec(gaussian(), 0..=6))
        .prop_map(move |(n, a, b, f)| QuadricAutoParams::new(n, a, b, f, variant).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn corrected_family_preserves_the_quadric(p in params(QuadricVariant::Corrected)) {
        let map = build_quadric_auto(&p);
        let expected = &p.alpha * &p.alpha * &p.beta * &p.beta;
        prop_assert_eq!(verify_quadric_invariance(&map, p.n).unwrap(), QuadricCheck::Multiplier(expected));
    }

    #[test]
    fn printed_family_fails_even_at_f_zero(
        (n, a, b) in (4usize..=6, nonzero_gaussian(), nonzero_gaussian())
    ) {
        let p = QuadricAutoParams::new(n, a, b, vec![], QuadricVariant::Printed).unwrap();
        let check = verify_quadric_invariance(&build_quadric_auto(&p), n).unwrap();
        let mismatch = matches!(check, QuadricCheck::Mismatch { .. });
        prop_assert!(mismatch);
    }

    #[test]
    fn spectrum_of_square_is_squared(
        (n, a, b, v) in (4usize..=6, nonzero_gaussian(), nonzero_gaussian(),
                         prop::sample::select(vec![QuadricVariant::Printed, QuadricVariant::Corrected]))
    ) {
        let p = QuadricAutoParams::new(n, a, b, vec![], v).unwrap();
        let map = build_quadric_auto(&p);
        let JacobianSpectrum::Eigenvalues(e) = jacobian_spectrum(&p) else {
            return Err(TestCaseError::fail("f = 0 is triangular"));
        };
        let JacobianSpectrum::Eigenvalues(e2) = map_spectrum(&map.compose(&map)).unwrap() else {
            return Err(TestCaseError::fail("square of a diagonal map"));
        };
        prop_assert_eq!(e2, e.iter().map(|z| z * z).collect::<Vec<_>>());
    }

    #[test]
    fn spectrum_with_f_vanishing_at_zero(p in params(QuadricVariant::Corrected)) {
        let mut p = p;
        if let Some(c) = p.f.first_mut() {
            *c = Gaussian::zero();
        }
        let ab = &p.alpha * &p.beta;
        let mut expected = vec![p.beta.clone(), &p.alpha * &ab, ab.clone()];
        expected.extend(std::iter::repeat_n(ab, p.n - 3));
        prop_assert_eq!(jacobian_spectrum(&p), JacobianSpectrum::Eigenvalues(expected));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn finiteness_is_symmetric_and_monotone(
        (a, shuffled, i, bump) in prop::collection::vec(2u64..=40, 2..=7).prop_flat_map(|a| {
            let len = a.len();
            (Just(a.clone()), Just(a).prop_shuffle(), 0..len, 1u64..=20)
        })
    ) {
        let base = finiteness_condition(&ExponentVector::new(a.clone()).unwrap(), 1).unwrap();
        prop_assert_eq!(&finiteness_condition(&ExponentVector::new(shuffled).unwrap(), 1).unwrap(), &base);
        let mut bigger = a;
        bigger[i] += bump;
        let grown = finiteness_condition(&ExponentVector::new(bigger).unwrap(), 1).unwrap();
        prop_assert!(grown.0 < base.0);
        prop_assert!(!base.1 || grown.1);
    }
}
