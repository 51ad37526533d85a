use hopfcalc_core::gauss::{self, Gaussian};
use hopfcalc_core::poly::{detect_brieskorn_pham, infer_weights, parse_polynomial_in, WeightInference};
use hopfcalc_core::{ExponentVector, WeightedPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn vars(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("z{k}")).collect()
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn gaussian() -> impl Strategy<Value = Gaussian> {
    (small_rational(), small_rational()).prop_map(|(re, im)| Gaussian::new(re, im))
}

fn polynomial(n: usize) -> impl Strategy<Value = WeightedPoly> {
    prop::collection::vec((prop::collection::vec(0u32..5, n), gaussian()), 0..6)
        .prop_map(move |terms| WeightedPoly::from_terms(vars(n), terms).unwrap())
}

fn exponents() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=12, 2..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(p in (1usize..=4).prop_flat_map(polynomial)) {
        let text = p.to_string();
        let back = parse_polynomial_in(&text, p.variables()).unwrap();
        prop_assert_eq!(back, p, "{}", text);
    }

    #[test]
    fn pure_powers_get_lcm_weights(a in exponents()) {
        let ev = ExponentVector::new(a.clone()).unwrap();
        let poly = ev.pure_power_polynomial();
        prop_assert_eq!(detect_brieskorn_pham(&poly), Some(ev));
        let l = a.iter().fold(1u64, |acc, &x| acc / gcd(acc, x) * x);
        let WeightInference::Determined { weights, degree } = infer_weights(&poly) else {
            return Err(TestCaseError::fail("expected determined weights"));
        };
        let expected: Vec<BigRational> = a.iter().map(|&x| BigRational::from_integer(BigInt::from(l / x))).collect();
        prop_assert_eq!(weights, expected);
        prop_assert_eq!(degree, BigRational::from_integer(BigInt::from(l)));
    }

    #[test]
    fn mixed_term_keeps_lcm_weights(half in prop::collection::vec(1u64..=6, 2..=5)) {
        // z0^{2h0} + ... + z0^{h0} z1^{h1}: same weights, solved through the kernel
        let a: Vec<u64> = half.iter().map(|h| 2 * h).collect();
        let n = a.len();
        let mut terms: Vec<(Vec<u32>, Gaussian)> = (0..n)
            .map(|k| {
                let mut e = vec![0; n];
                e[k] = a[k] as u32;
                (e, gauss::from_int(1))
            })
            .collect();
        let mut cross = vec![0; n];
        cross[0] = half[0] as u32;
        cross[1] = half[1] as u32;
        terms.push((cross, gauss::from_int(3)));
        let poly = WeightedPoly::from_terms(vars(n), terms).unwrap();
        prop_assert!(detect_brieskorn_pham(&poly).is_none());
        let l = a.iter().fold(1u64, |acc, &x| acc / gcd(acc, x) * x);
        let WeightInference::Determined { weights, degree } = infer_weights(&poly) else {
            return Err(TestCaseError::fail("expected determined weights"));
        };
        let expected: Vec<BigRational> = a.iter().map(|&x| BigRational::from_integer(BigInt::from(l / x))).collect();
        prop_assert_eq!(weights, expected);
        prop_assert_eq!(degree, BigRational::from_integer(BigInt::from(l)));
    }

    #[test]
    fn determined_weights_fit_every_term(p in (2usize..=3).prop_flat_map(polynomial)) {
        if let WeightInference::Determined { weights, degree } = infer_weights(&p) {
            for t in p.terms() {
                let s = t.exponents.iter().zip(&weights).fold(BigRational::zero(), |acc, (&e, b)| {
                    acc + BigRational::from_integer(BigInt::from(e)) * b
                });
                prop_assert_eq!(&s, &degree);
            }
            prop_assert!(p.clone().with_weights(weights, degree).is_ok());
        }
    }
}
