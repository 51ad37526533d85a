//! Milnor algebra `M_f = C[z]/(df/dz_0, ..., df/dz_n)` of `f = z_0^{a_0} + ... + z_n^{a_n}`.
//!
//! The Jacobian ideal is the monomial ideal `(z_0^{a_0-1}, ..., z_n^{a_n-1})`,
//! so `M_f` has the monomial basis `z^j` with `0 <= j_i <= a_i - 2` and
//! dimension `tau = prod(a_i - 1)`. The scaling automorphism
//! `z_i -> lambda^{1/a_i} z_i` acts on `z^j` by `lambda^r` with
//! `r = sum(j_i / a_i)`. Only `|lambda| < 1` is ever used, so `lambda`
//! itself is never represented.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::poly::ExponentVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilnorError {
    #[error("exponent vector has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("j[{index}] = {value} exceeds the basis bound a[{index}] - 2 = {bound}")]
    OutOfRange { index: usize, value: u64, bound: u64 },
    #[error("enumeration needs {required} steps, above the cap {cap}")]
    CapExceeded { required: BigUint, cap: u64 },
    #[error("common denominator lcm(a) = {0} is too large for enumeration")]
    DenominatorTooLarge(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorAlgebraDesc {
    pub a: ExponentVector,
    pub tau: BigUint,
    /// `(a_0 - 2, ..., a_n - 2)`
    pub basis_bounds: Vec<u64>,
}

impl MilnorAlgebraDesc {
    pub fn new(a: &ExponentVector) -> Self {
        Self {
            a: a.clone(),
            tau: milnor_number(a),
            basis_bounds: a.as_slice().iter().map(|&x| x - 2).collect(),
        }
    }

    pub fn basis(&self) -> BasisIter {
        basis(&self.a)
    }
}

/// Exponent `r` such that the scaling automorphism acts on a basis monomial by `lambda^r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalingWeight(pub BigRational);

impl ScalingWeight {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

pub fn milnor_number(a: &ExponentVector) -> BigUint {
    a.as_slice().iter().map(|&x| BigUint::from(x - 1)).product()
}

pub fn scaling_exponent(j: &[u64], a: &ExponentVector) -> Result<ScalingWeight, MilnorError> {
    if j.len() != a.len() {
        return Err(MilnorError::LengthMismatch { expected: a.len(), found: j.len() });
    }
    let mut r = BigRational::zero();
    for (index, (&ji, &ai)) in j.iter().zip(a.as_slice()).enumerate() {
        if ji > ai - 2 {
            return Err(MilnorError::OutOfRange { index, value: ji, bound: ai - 2 });
        }
        r += BigRational::new(BigInt::from(ji), BigInt::from(ai));
    }
    Ok(ScalingWeight(r))
}

/// Number of basis monomials with scaling weight exactly `target`.
///
/// Depth-first over the coordinates, pruning once the partial weight exceeds
/// `target` (every term is non-negative).
pub fn count_basis_with_weight(a: &ExponentVector, target: &BigRational) -> BigUint {
    fn go(a: &[u64], partial: &BigRational, target: &BigRational) -> BigUint {
        let Some((&ai, rest)) = a.split_first() else {
            return if partial == target { BigUint::one() } else { BigUint::zero() };
        };
        let step = BigRational::new(BigInt::one(), BigInt::from(ai));
        let mut total = BigUint::zero();
        let mut s = partial.clone();
        for _ in 0..=ai - 2 {
            if s > *target {
                break;
            }
            total += go(rest, &s, target);
            s += &step;
        }
        total
    }
    go(a.as_slice(), &BigRational::zero(), target)
}

/// Dimension of the fixed subspace of the scaling automorphism on `M_f`:
/// the number of basis monomials of weight 0. Since `|lambda^r| < 1` for
/// every `r > 0`, only weight-0 monomials can be fixed.
pub fn fixed_subspace_dim(a: &ExponentVector) -> u64 {
    count_basis_with_weight(a, &BigRational::zero())
        .to_u64()
        .expect("at most one weight-zero monomial")
}

/// Lazy odometer over the basis exponents `0 <= j_i <= a_i - 2`, first coordinate slowest.
#[derive(Clone, Debug)]
pub struct BasisIter {
    bounds: Vec<u64>,
    next: Option<Vec<u64>>,
}

pub fn basis(a: &ExponentVector) -> BasisIter {
    let bounds: Vec<u64> = a.as_slice().iter().map(|&x| x - 2).collect();
    BasisIter { next: Some(vec![0; bounds.len()]), bounds }
}

impl Iterator for BasisIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for k in (0..succ.len()).rev() {
            if succ[k] < self.bounds[k] {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

/// Mixed-radix box `0 <= digit_i < radix_i`, indexed with the first coordinate slowest.
pub(crate) struct MixedRadix {
    radices: Vec<u64>,
}

impl MixedRadix {
    pub(crate) fn new(radices: Vec<u64>) -> Self {
        Self { radices }
    }

    /// Box size, or `None` if it overflows `u64`.
    pub(crate) fn size(&self) -> Option<u64> {
        self.radices.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r))
    }

    pub(crate) fn size_big(&self) -> BigUint {
        self.radices.iter().map(|&r| BigUint::from(r)).product()
    }

    pub(crate) fn decode(&self, mut index: u64, digits: &mut [u64]) {
        for k in (0..self.radices.len()).rev() {
            digits[k] = index % self.radices[k];
            index /= self.radices[k];
        }
    }

    pub(crate) fn increment(&self, digits: &mut [u64]) {
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < self.radices[k] {
                return;
            }
            digits[k] = 0;
        }
    }

    /// Calls `f` on every digit vector with index in `range`.
    pub(crate) fn for_each_in(&self, range: std::ops::Range<u64>, mut f: impl FnMut(&[u64])) {
        if range.is_empty() {
            return;
        }
        let mut digits = vec![0; self.radices.len()];
        self.decode(range.start, &mut digits);
        for _ in range {
            f(&digits);
            self.increment(&mut digits);
        }
    }
}

/// `sum(j_i / a_i)` represented as a numerator over `lcm(a)`.
pub(crate) struct CommonDenominator {
    pub(crate) lcm: u128,
    pub(crate) scale: Vec<u128>,
}

impl CommonDenominator {
    pub(crate) fn new(a: &ExponentVector) -> Result<Self, MilnorError> {
        let l = a.lcm();
        let lcm = l.to_u64().ok_or_else(|| MilnorError::DenominatorTooLarge(l.clone()))? as u128;
        let scale = a.as_slice().iter().map(|&x| lcm / x as u128).collect();
        Ok(Self { lcm, scale })
    }

    pub(crate) fn numerator(&self, j: &[u64], offset: u64) -> u128 {
        j.iter().zip(&self.scale).map(|(&x, &s)| (x + offset) as u128 * s).sum()
    }

    pub(crate) fn to_rational(&self, numerator: u128) -> BigRational {
        BigRational::new(BigInt::from(numerator), BigInt::from(self.lcm))
    }
}

fn require_within_cap(size: &MixedRadix, cap: u64) -> Result<u64, MilnorError> {
    match size.size() {
        Some(s) if s <= cap => Ok(s),
        _ => Err(MilnorError::CapExceeded { required: size.size_big(), cap }),
    }
}

/// Histogram of scaling weights over the full basis, by enumeration.
pub fn weight_spectrum(
    a: &ExponentVector,
    exec: Exec,
    cap: u64,
) -> Result<BTreeMap<BigRational, u64>, MilnorError> {
    let radix = MixedRadix::new(a.as_slice().iter().map(|&x| x - 1).collect());
    let total = require_within_cap(&radix, cap)?;
    let den = CommonDenominator::new(a)?;
    let partials = exec.map_chunks(total, |range| {
        let mut h = BTreeMap::<u128, u64>::new();
        radix.for_each_in(range, |j| *h.entry(den.numerator(j, 0)).or_default() += 1);
        h
    });
    let mut merged = BTreeMap::<u128, u64>::new();
    for h in partials {
        for (k, v) in h {
            *merged.entry(k).or_default() += v;
        }
    }
    Ok(merged.into_iter().map(|(k, v)| (den.to_rational(k), v)).collect())
}

/// Independent count of `dim M_f`: walks the box `0 <= j_i < a_i` and keeps
/// the monomials outside the Jacobian ideal, i.e. those not divisible by any
/// `z_i^{a_i - 1}`.
pub fn milnor_number_by_enumeration(a: &ExponentVector, exec: Exec, cap: u64) -> Result<u64, MilnorError> {
    let radix = MixedRadix::new(a.as_slice().to_vec());
    let total = require_within_cap(&radix, cap)?;
    let counts = exec.map_chunks(total, |range| {
        let mut c = 0u64;
        radix.for_each_in(range, |j| {
            if j.iter().zip(a.as_slice()).all(|(&ji, &ai)| ji + 1 < ai) {
                c += 1;
            }
        });
        c
    });
    Ok(counts.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(a: &[u64]) -> ExponentVector {
        ExponentVector::new(a.to_vec()).unwrap()
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&ev(&[2, 2, 2])), BigUint::from(1u32));
        assert_eq!(milnor_number(&ev(&[2, 3, 5])), BigUint::from(8u32));
        assert_eq!(milnor_number(&ev(&[3, 5, 2, 2, 2, 2])), BigUint::from(8u32));
        let big = ev(&[1_000_000, 999_999, 7]);
        assert_eq!(milnor_number(&big), BigUint::from(999_999u64) * 999_998u64 * 6u64);
    }

    #[test]
    fn scaling_exponents() {
        assert!(scaling_exponent(&[0, 0, 0], &ev(&[2, 3, 5])).unwrap().is_zero());
        assert_eq!(
            scaling_exponent(&[1, 2], &ev(&[3, 6])).unwrap().0,
            BigRational::new(2.into(), 3.into())
        );
        assert_eq!(
            scaling_exponent(&[1, 2, 3], &ev(&[2, 3, 5])),
            Err(MilnorError::OutOfRange { index: 0, value: 1, bound: 0 })
        );
        assert!(matches!(
            scaling_exponent(&[0, 0], &ev(&[2, 3, 5])),
            Err(MilnorError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fixed_subspace_is_one_dimensional() {
        for a in [&[2, 2, 2][..], &[3, 6, 2], &[7, 8, 9, 10]] {
            assert_eq!(fixed_subspace_dim(&ev(a)), 1);
        }
    }

    #[test]
    fn basis_stream_matches_tau() {
        let a = ev(&[2, 3, 5]);
        let all: Vec<_> = basis(&a).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[7], vec![0, 1, 3]);
        assert_eq!(basis(&ev(&[2, 2])).count(), 1);
    }

    #[test]
    fn spectrum_sums_to_tau_and_has_single_zero() {
        let a = ev(&[3, 4, 5]);
        for exec in [Exec::Sequential, Exec::Parallel] {
            let s = weight_spectrum(&a, exec, 1 << 20).unwrap();
            assert_eq!(s.values().sum::<u64>(), 24);
            assert_eq!(s.get(&BigRational::zero()), Some(&1));
            for (w, &c) in &s {
                assert_eq!(count_basis_with_weight(&a, w), BigUint::from(c));
            }
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let a = ev(&[100, 100, 100]);
        assert!(matches!(
            milnor_number_by_enumeration(&a, Exec::Sequential, 1000),
            Err(MilnorError::CapExceeded { .. })
        ));
        assert!(weight_spectrum(&a, Exec::Sequential, 10).is_err());
    }
}
