//! Topology of the link of `z_0^{a_0} + ... + z_n^{a_n} = 0`.
//!
//! The monodromy eigenvalues are the products `zeta_0 * ... * zeta_n` with
//! `zeta_i^{a_i} = 1`, `zeta_i != 1`. Writing `L_m` for the multiset of all
//! m-th roots of unity, the eigenvalue multiset is `prod_i (L_{a_i} - L_1)`
//! expanded with `L_a * L_b = gcd(a, b) * L_{lcm(a, b)}`, and
//! `Delta(t) = prod_m (t^m - 1)^{s_m}` where `s_m` is the coefficient of `L_m`.
//! The polynomial is never expanded; exponents up to `10^6` work directly on
//! the divisor.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::milnor::{CommonDenominator, MilnorError, MixedRadix};
use crate::poly::ExponentVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("oracle refused: prod(a_i - 1) = {required} exceeds cap {cap}")]
    CapExceeded { required: BigUint, cap: u64 },
    #[error("subset expansion over {0} exponents is too large")]
    TooManySubsets(usize),
    #[error(transparent)]
    Enumeration(#[from] MilnorError),
}

/// `{m -> s_m}` encoding `Delta(t) = prod_m (t^m - 1)^{s_m}`; no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclicDivisor {
    entries: BTreeMap<BigUint, BigInt>,
}

impl CyclicDivisor {
    pub fn from_entries(entries: impl IntoIterator<Item = (BigUint, BigInt)>) -> Self {
        let mut d = Self::default();
        for (m, s) in entries {
            d.add(m, s);
        }
        d
    }

    fn add(&mut self, m: BigUint, s: BigInt) {
        if s.is_zero() {
            return;
        }
        let e = self.entries.entry(m.clone()).or_default();
        *e += s;
        if e.is_zero() {
            self.entries.remove(&m);
        }
    }

    pub fn entries(&self) -> &BTreeMap<BigUint, BigInt> {
        &self.entries
    }

    pub fn get(&self, m: u64) -> BigInt {
        self.entries.get(&BigUint::from(m)).cloned().unwrap_or_default()
    }

    /// `deg Delta = sum(m * s_m)`.
    pub fn degree(&self) -> BigInt {
        self.entries.iter().map(|(m, s)| BigInt::from(m.clone()) * s).sum()
    }

    /// Multiplicity of the eigenvalue 1, `sum(s_m)`: each `L_m` contains 1 once.
    pub fn eigenvalue_one_multiplicity(&self) -> BigInt {
        self.entries.values().sum()
    }

    /// `Delta(1) = prod(m^{s_m})` once the `(t - 1)` factors cancel, i.e. when
    /// `sum(s_m) = 0`, as `(base, exponent)` pairs over a coprime base of the
    /// `m`. The `s_m` can be huge, so exponents are cancelled before any power
    /// is taken; zero exponents are dropped.
    pub fn value_at_one_factored(&self) -> Option<Vec<(BigUint, BigInt)>> {
        if !self.eigenvalue_one_multiplicity().is_zero() {
            return None;
        }
        let factors = coprime_base(self.entries.keys())
            .into_iter()
            .map(|b| {
                let e: BigInt = self.entries.iter().map(|(m, s)| s * BigInt::from(valuation(m, &b))).sum();
                (b, e)
            })
            .filter(|(_, e)| !e.is_zero())
            .collect();
        Some(factors)
    }

    /// Expanded `Delta(1)`. Can be astronomically large; see [`Self::value_at_one_factored`].
    pub fn value_at_one(&self) -> Option<BigRational> {
        let factors = self.value_at_one_factored()?;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (b, e) in factors {
            let p = BigInt::from(b.pow(e.abs().to_u32().expect("Delta(1) exponent fits u32")));
            if e.is_positive() {
                num *= p;
            } else {
                den *= p;
            }
        }
        Some(BigRational::new(num, den))
    }

    /// Integer coefficients of `Delta(t)`, lowest degree first, if the
    /// numerator degree stays within `max_degree`.
    pub fn expand(&self, max_degree: u64) -> Option<Vec<BigInt>> {
        let mut num_deg = 0u64;
        for (m, s) in &self.entries {
            if s.is_positive() {
                num_deg = num_deg.checked_add(m.to_u64()?.checked_mul(s.to_u64()?)?)?;
            }
        }
        if num_deg > max_degree {
            return None;
        }
        let mut p = vec![BigInt::one()];
        for (m, s) in self.entries.iter().filter(|(_, s)| s.is_positive()) {
            let m = m.to_usize()?;
            for _ in 0..s.to_u64()? {
                let mut q = vec![BigInt::zero(); p.len() + m];
                for (k, c) in p.iter().enumerate() {
                    q[k + m] += c;
                    q[k] -= c;
                }
                p = q;
            }
        }
        for (m, s) in self.entries.iter().filter(|(_, s)| s.is_negative()) {
            let m = m.to_usize()?;
            for _ in 0..(-s).to_u64()? {
                p = divide_by_cyclic(&p, m)?;
            }
        }
        Some(p)
    }
}

/// Pairwise coprime `b > 1` such that every input is a product of powers of them.
fn coprime_base<'a>(values: impl IntoIterator<Item = &'a BigUint>) -> Vec<BigUint> {
    fn insert(base: &mut Vec<BigUint>, x: BigUint) {
        if x.is_one() {
            return;
        }
        if let Some(i) = base.iter().position(|b| !b.gcd(&x).is_one()) {
            let b = base.swap_remove(i);
            let g = b.gcd(&x);
            if g == b && g == x {
                base.push(b);
                return;
            }
            insert(base, &b / &g);
            insert(base, &x / &g);
            insert(base, g);
        } else {
            base.push(x);
        }
    }
    let mut base = Vec::new();
    for v in values {
        insert(&mut base, v.clone());
    }
    base.sort();
    base
}

fn valuation(m: &BigUint, b: &BigUint) -> u64 {
    let mut m = m.clone();
    let mut k = 0;
    while (&m % b).is_zero() {
        m /= b;
        k += 1;
    }
    k
}

/// Exact quotient `p / (t^m - 1)`, or `None` when it does not divide.
fn divide_by_cyclic(p: &[BigInt], m: usize) -> Option<Vec<BigInt>> {
    if p.len() <= m {
        return None;
    }
    // p_k = q_{k-m} - q_k
    let qlen = p.len() - m;
    let mut q = vec![BigInt::zero(); qlen];
    for k in 0..qlen {
        let prev = if k >= m { q[k - m].clone() } else { BigInt::zero() };
        q[k] = prev - &p[k];
    }
    for k in qlen..p.len() {
        let prev = if k >= m && k - m < qlen { q[k - m].clone() } else { BigInt::zero() };
        let cur = if k < qlen { q[k].clone() } else { BigInt::zero() };
        if prev - cur != p[k] {
            return None;
        }
    }
    Some(q)
}

impl fmt::Display for CyclicDivisor {
    /// `(t^30-1)(t^15-1)^-1...`, largest `m` first; `1` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        for (m, s) in self.entries.iter().rev() {
            let base = if m.is_one() { "(t-1)".to_string() } else { format!("(t^{m}-1)") };
            if s.is_one() {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{s}")?;
            }
        }
        Ok(())
    }
}

/// Signed expansion of `prod_i (L_{a_i} - L_1)`, grouping partial products by their lcm.
pub fn char_divisor(a: &ExponentVector) -> CyclicDivisor {
    let mut acc: BTreeMap<BigUint, BigInt> = BTreeMap::from([(BigUint::one(), BigInt::one())]);
    for &ai in a.as_slice() {
        let ai = BigUint::from(ai);
        let mut next: BTreeMap<BigUint, BigInt> = BTreeMap::new();
        for (m, c) in &acc {
            let g = m.gcd(&ai);
            *next.entry(m.lcm(&ai)).or_default() += c * BigInt::from(g);
            *next.entry(m.clone()).or_default() -= c;
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    CyclicDivisor::from_entries(acc)
}

/// The same divisor by explicit inclusion-exclusion over all `2^{n+1}` subsets `I`:
/// `s_m = sum_{lcm(a_I) = m} (-1)^{n+1-|I|} prod_{i in I} a_i / lcm(a_I)`.
pub fn char_divisor_by_subsets(a: &ExponentVector, exec: Exec) -> Result<CyclicDivisor, LinkError> {
    let k = a.len();
    if k > 40 {
        return Err(LinkError::TooManySubsets(k));
    }
    let vals = a.as_slice();
    let partials = exec.map_chunks(1u64 << k, |range| {
        let mut local: BTreeMap<BigUint, BigInt> = BTreeMap::new();
        for mask in range {
            let mut prod = BigUint::one();
            let mut l = BigUint::one();
            for (i, &ai) in vals.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    prod *= ai;
                    l = l.lcm(&BigUint::from(ai));
                }
            }
            let size = mask.count_ones() as usize;
            let sign = if (k - size).is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
            *local.entry(l.clone()).or_default() += BigInt::from_biguint(sign, prod / l);
        }
        local
    });
    Ok(CyclicDivisor::from_entries(partials.into_iter().flatten()))
}

/// Values up to this many bits are printed in full.
pub const DELTA_DISPLAY_BITS: u64 = 4096;

/// The positive integer `Delta(1)`, kept as powers of pairwise coprime bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaAtOne {
    factors: Vec<(BigUint, BigUint)>,
}

impl DeltaAtOne {
    pub fn factors(&self) -> &[(BigUint, BigUint)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn ln(&self) -> f64 {
        self.factors.iter().map(|(b, e)| ln_big(b) * e.to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    /// The value, if it has at most `max_bits` bits.
    pub fn value(&self, max_bits: u64) -> Option<BigUint> {
        if self.ln() / std::f64::consts::LN_2 > max_bits as f64 + 1.0 {
            return None;
        }
        let mut v = BigUint::one();
        for (b, e) in &self.factors {
            v *= b.pow(e.to_u32()?);
        }
        (v.bits() <= max_bits).then_some(v)
    }
}

impl fmt::Display for DeltaAtOne {
    /// Decimal when small, else `b^e*...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.value(DELTA_DISPLAY_BITS) {
            return write!(f, "{v}");
        }
        let parts: Vec<String> = self.factors.iter().map(|(b, e)| format!("{b}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereCaveat {
    None,
    /// Link dimension below 5: homology-sphere status is exact but does not
    /// by itself upgrade to a topological sphere.
    LowDimension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkReport {
    /// `2n - 1`
    pub link_dimension: usize,
    pub divisor: CyclicDivisor,
    pub eig1_multiplicity: BigUint,
    /// Defined only when `eig1_multiplicity = 0`.
    pub delta_at_one: Option<DeltaAtOne>,
    pub q_sphere: bool,
    pub z_sphere: bool,
    /// `b_{n-1} = b_n` of the link, equal to the eigenvalue-1 multiplicity.
    pub middle_betti: BigUint,
    pub sphere_caveat: SphereCaveat,
}

pub fn classify_link(a: &ExponentVector) -> LinkReport {
    let divisor = char_divisor(a);
    let mult = divisor.eigenvalue_one_multiplicity();
    let eig1_multiplicity = mult.to_biguint().expect("eigenvalue multiplicity is non-negative");
    let delta_at_one = divisor.value_at_one_factored().map(|f| {
        let factors = f
            .into_iter()
            .map(|(b, e)| (b, e.to_biguint().expect("Delta(1) must be an integer")))
            .collect();
        DeltaAtOne { factors }
    });
    let q_sphere = eig1_multiplicity.is_zero();
    let z_sphere = q_sphere && delta_at_one.as_ref().is_some_and(DeltaAtOne::is_one);
    let link_dimension = 2 * a.dim() - 1;
    LinkReport {
        link_dimension,
        divisor,
        middle_betti: eig1_multiplicity.clone(),
        eig1_multiplicity,
        delta_at_one,
        q_sphere,
        z_sphere,
        sphere_caveat: if link_dimension < 5 { SphereCaveat::LowDimension } else { SphereCaveat::None },
    }
}

/// Result of enumerating every eigenvalue tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub tuples: u64,
    pub multiplicity: u64,
    /// `ln |prod(1 - e^{2 pi i theta})|` over tuples with `theta` not an integer.
    pub log_abs_product: f64,
    /// Argument of the same product, reduced to `(-pi, pi]`.
    pub phase: f64,
}

impl OracleReport {
    /// Numeric `Delta(1)` when no eigenvalue equals 1.
    pub fn delta_at_one_estimate(&self) -> Option<f64> {
        (self.multiplicity == 0).then(|| self.log_abs_product.exp())
    }

    /// Agreement with the divisor route: equal multiplicity and, when it is
    /// zero, `Delta(1)` within `rel_tol` relative error with vanishing phase.
    pub fn agrees_with(&self, report: &LinkReport, rel_tol: f64) -> bool {
        if BigUint::from(self.multiplicity) != report.eig1_multiplicity {
            return false;
        }
        match &report.delta_at_one {
            None => true,
            Some(d) => {
                let exact_ln = d.ln();
                (self.log_abs_product - exact_ln).exp_m1().abs() <= rel_tol && self.phase.abs() <= rel_tol
            }
        }
    }
}

/// `ln x` for a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Enumerates all `(k_0, ..., k_n)` with `1 <= k_i <= a_i - 1` and counts the
/// tuples with `sum(k_i / a_i)` an integer (exact test); the remaining
/// tuples contribute `1 - e^{2 pi i theta}` to the numeric product.
pub fn brute_force_oracle(a: &ExponentVector, cap: u64, exec: Exec) -> Result<OracleReport, LinkError> {
    let radix = MixedRadix::new(a.as_slice().iter().map(|&x| x - 1).collect());
    let total = match radix.size() {
        Some(t) if t <= cap => t,
        _ => return Err(LinkError::CapExceeded { required: radix.size_big(), cap }),
    };
    let den = CommonDenominator::new(a)?;
    let lcm = den.lcm;
    let partials = exec.map_chunks(total, |range| {
        let mut mult = 0u64;
        let mut log_sum = NeumaierSum::default();
        let mut phase_num = 0u128;
        let mut phase_count = 0u64;
        radix.for_each_in(range, |digits| {
            let r = den.numerator(digits, 1) % lcm;
            if r == 0 {
                mult += 1;
            } else {
                let theta = r as f64 / lcm as f64;
                log_sum.add((2.0 * (std::f64::consts::PI * theta).sin()).ln());
                // arg(1 - e^{2 pi i theta}) = pi * (theta - 1/2); accumulate theta exactly
                phase_num = (phase_num + r) % (2 * lcm);
                phase_count += 1;
            }
        });
        (mult, log_sum.total(), phase_num, phase_count)
    });
    let mut multiplicity = 0;
    let mut log_sum = NeumaierSum::default();
    let mut phase_num = 0u128;
    let mut phase_count = 0u64;
    for (m, l, p, c) in partials {
        multiplicity += m;
        log_sum.add(l);
        phase_num = (phase_num + p) % (2 * lcm);
        phase_count += c;
    }
    // total argument = pi * (sum theta - count/2), reduced mod 2 pi
    let half_turns = BigRational::new(BigInt::from(phase_num), BigInt::from(lcm))
        - BigRational::new(BigInt::from(phase_count), BigInt::from(2));
    let reduced = half_turns.clone() - BigRational::from_integer((half_turns / BigInt::from(2)).floor().to_integer() * 2);
    let mut phase = crate::gauss::rational_to_f64(&reduced) * std::f64::consts::PI;
    if phase > std::f64::consts::PI {
        phase -= 2.0 * std::f64::consts::PI;
    }
    Ok(OracleReport { tuples: total, multiplicity, log_abs_product: log_sum.total(), phase })
}

#[derive(Default)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(a: &[u64]) -> ExponentVector {
        ExponentVector::new(a.to_vec()).unwrap()
    }

    fn div(entries: &[(u64, i64)]) -> CyclicDivisor {
        CyclicDivisor::from_entries(entries.iter().map(|&(m, s)| (BigUint::from(m), BigInt::from(s))))
    }

    #[test]
    fn quadric_surface_divisor() {
        let d = char_divisor(&ev(&[2, 2, 2]));
        assert_eq!(d, div(&[(2, 1), (1, -1)]));
        assert_eq!(d.expand(10).unwrap(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn e8_divisor() {
        let d = char_divisor(&ev(&[2, 3, 5]));
        assert_eq!(d, div(&[(30, 1), (15, -1), (10, -1), (6, -1), (5, 1), (3, 1), (2, 1), (1, -1)]));
        assert_eq!(d.degree(), BigInt::from(8));
        assert_eq!(d.to_string(), "(t^30-1)(t^15-1)^-1(t^10-1)^-1(t^6-1)^-1(t^5-1)(t^3-1)(t^2-1)(t-1)^-1");
        // E8 cyclotomic polynomial Phi_30 = t^8 + t^7 - t^5 - t^4 - t^3 + t + 1
        let phi30: Vec<BigInt> = [1, 1, 0, -1, -1, -1, 0, 1, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(d.expand(100).unwrap(), phi30);
    }

    #[test]
    fn quadric_threefold_divisor() {
        assert_eq!(char_divisor(&ev(&[2, 2, 2, 2])), div(&[(1, 1)]));
    }

    #[test]
    fn classification_examples() {
        let e8 = classify_link(&ev(&[2, 3, 5]));
        assert!(e8.q_sphere && e8.z_sphere);
        assert_eq!(e8.delta_at_one.as_ref().and_then(|d| d.value(64)), Some(BigUint::one()));
        assert!(e8.middle_betti.is_zero());
        assert_eq!(e8.sphere_caveat, SphereCaveat::LowDimension);

        let a1 = classify_link(&ev(&[2, 2, 2]));
        assert!(a1.q_sphere && !a1.z_sphere);
        assert_eq!(a1.delta_at_one.as_ref().and_then(|d| d.value(64)), Some(BigUint::from(2u32)));

        let q = classify_link(&ev(&[2, 2, 2, 2]));
        assert!(!q.q_sphere && !q.z_sphere);
        assert_eq!(q.middle_betti, BigUint::one());
        assert_eq!(q.delta_at_one, None);
        assert_eq!(q.link_dimension, 5);
        assert_eq!(q.sphere_caveat, SphereCaveat::None);
    }

    #[test]
    fn exotic_family_is_integral_sphere() {
        // n = 5, a = (3, 6r-1, 2, 2, 2, 2): Z-homology 9-spheres
        for r in 1..6 {
            let rep = classify_link(&ev(&[3, 6 * r - 1, 2, 2, 2, 2]));
            assert!(rep.z_sphere, "r = {r}");
        }
    }

    #[test]
    fn huge_exponents_stay_on_the_divisor() {
        let rep = classify_link(&ev(&[1_000_000, 999_999, 999_997]));
        assert_eq!(rep.divisor.degree(), BigInt::from(999_999u64) * 999_998u64 * 999_996u64);
    }

    #[test]
    fn value_at_one_cancels_before_powering() {
        let big = 1_000_000_000i64;
        let d = div(&[(6, big), (3, -big), (2, -big), (1, big)]);
        assert_eq!(d.value_at_one(), Some(BigRational::one()));
        let d = div(&[(12, 3), (4, -3), (1, 0)]);
        assert_eq!(d.value_at_one(), Some(BigRational::from_integer(27.into())));
        assert_eq!(coprime_base([BigUint::from(12u32), BigUint::from(18u32)].iter()), vec![BigUint::from(2u32), BigUint::from(3u32)]);
    }

    #[test]
    fn huge_delta_stays_factored() {
        let rep = classify_link(&ev(&[829, 728, 198, 528, 588, 914, 912]));
        let d = rep.delta_at_one.expect("no eigenvalue 1");
        assert_eq!(d.factors(), &[(BigUint::from(829u32), BigUint::from(1_991_785u32))]);
        assert_eq!(d.value(DELTA_DISPLAY_BITS), None);
        assert_eq!(d.to_string(), "829^1991785");
        assert!(rep.q_sphere && !rep.z_sphere);
    }

    #[test]
    fn subset_route_matches_grouped_route() {
        for a in [&[2, 3, 5][..], &[4, 6, 10, 15], &[2, 2, 2, 2, 3], &[12, 18, 8]] {
            let a = ev(a);
            for exec in [Exec::Sequential, Exec::Parallel] {
                assert_eq!(char_divisor_by_subsets(&a, exec).unwrap(), char_divisor(&a));
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let e8 = brute_force_oracle(&ev(&[2, 3, 5]), 100_000, Exec::Sequential).unwrap();
        assert_eq!(e8.multiplicity, 0);
        assert!((e8.delta_at_one_estimate().unwrap() - 1.0).abs() < 1e-9);
        assert!(e8.agrees_with(&classify_link(&ev(&[2, 3, 5])), 1e-6));

        let q = brute_force_oracle(&ev(&[2, 2, 2, 2]), 100_000, Exec::Parallel).unwrap();
        assert_eq!(q.multiplicity, 1);

        let tiny = brute_force_oracle(&ev(&[2, 2]), 1, Exec::Sequential).unwrap();
        assert_eq!((tiny.tuples, tiny.multiplicity), (1, 1));
    }

    #[test]
    fn oracle_refuses_above_cap() {
        assert_eq!(
            brute_force_oracle(&ev(&[3, 3]), 3, Exec::Sequential),
            Err(LinkError::CapExceeded { required: BigUint::from(4u32), cap: 3 })
        );
    }

    #[test]
    fn delta_at_one_of_a1_matches_oracle_product() {
        let o = brute_force_oracle(&ev(&[2, 2, 2]), 10, Exec::Sequential).unwrap();
        assert!((o.delta_at_one_estimate().unwrap() - 2.0).abs() < 1e-12);
    }
}
