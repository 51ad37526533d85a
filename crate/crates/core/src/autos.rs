//! Automorphisms: the finiteness criterion `sum 1/a_i < k` and a family of
//! polynomial automorphisms of the quadric cone
//! `Q = X1 X2 + X3^2 + ... + Xn^2`.
//!
//! The family comes in two variants. `Printed` is the map as published, with a
//! factor `i` on `X3'` and `+` signs in `X2'`; it does not preserve `Q`.
//! `Corrected` drops the `i` and flips the signs, and does preserve it.
//! [`verify_quadric_invariance`] tells them apart symbolically.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::gauss::{self, Gaussian};
use crate::poly::{ExponentVector, WeightedPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutosError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("quadric automorphisms need n >= 4, got {0}")]
    DimensionTooSmall(usize),
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("components live in different variable lists")]
    RingMismatch,
    #[error("map has a constant term; the origin is not fixed")]
    NotAtOrigin,
}

/// `(sum 1/a_i, sum < k)`. `k = 1` for hypersurfaces, the codimension for
/// complete intersections.
pub fn finiteness_condition(a: &ExponentVector, k: u64) -> Result<(BigRational, bool), AutosError> {
    if k == 0 {
        return Err(AutosError::ZeroK);
    }
    let sum = a
        .as_slice()
        .iter()
        .fold(BigRational::zero(), |acc, &ai| acc + BigRational::new(BigInt::one(), BigInt::from(ai)));
    let holds = sum < BigRational::from_integer(BigInt::from(k));
    Ok((sum, holds))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadricVariant {
    Printed,
    Corrected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadricAutoParams {
    pub n: usize,
    pub alpha: Gaussian,
    pub beta: Gaussian,
    /// Coefficients of `f`, constant term first.
    pub f: Vec<Gaussian>,
    pub variant: QuadricVariant,
}

impl QuadricAutoParams {
    pub fn new(
        n: usize,
        alpha: Gaussian,
        beta: Gaussian,
        f: Vec<Gaussian>,
        variant: QuadricVariant,
    ) -> Result<Self, AutosError> {
        if n < 4 {
            return Err(AutosError::DimensionTooSmall(n));
        }
        if alpha.is_zero() {
            return Err(AutosError::ZeroParameter("alpha"));
        }
        if beta.is_zero() {
            return Err(AutosError::ZeroParameter("beta"));
        }
        Ok(Self { n, alpha, beta, f, variant })
    }

    pub fn f_at_zero(&self) -> Gaussian {
        self.f.first().cloned().unwrap_or_else(Gaussian::zero)
    }
}

/// `X1, ..., Xn`.
pub fn quadric_variables(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// `X1 X2 + X3^2 + ... + Xn^2`.
pub fn quadric(n: usize) -> WeightedPoly {
    let vars = quadric_variables(n);
    let x = |i: usize| WeightedPoly::variable(vars.clone(), i);
    (2..n).fold(x(0).mul(&x(1)), |acc, i| acc.add(&x(i).pow(2)))
}

/// A polynomial self-map, `components[i]` being the image of the i-th variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    components: Vec<WeightedPoly>,
}

impl PolyMap {
    pub fn new(components: Vec<WeightedPoly>) -> Result<Self, AutosError> {
        let n = components.len();
        for c in &components {
            if c.nvars() != n {
                return Err(AutosError::ComponentCount { expected: c.nvars(), found: n });
            }
            if c.variables() != components[0].variables() {
                return Err(AutosError::RingMismatch);
            }
        }
        Ok(Self { components })
    }

    pub fn identity(variables: Vec<String>) -> Self {
        let components = (0..variables.len()).map(|i| WeightedPoly::variable(variables.clone(), i)).collect();
        Self { components }
    }

    pub fn components(&self) -> &[WeightedPoly] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        let components = self.components.iter().map(|c| c.compose(&inner.components)).collect();
        PolyMap { components }
    }

    pub fn apply_c64(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval_c64(x)).collect()
    }

    /// Jacobian at the origin, `rows[i][j] = d(component i)/d(x_j)(0)`.
    pub fn linear_matrix(&self) -> Result<Vec<Vec<Gaussian>>, AutosError> {
        let n = self.len();
        if self.components.iter().any(|c| !c.coefficient(&vec![0; n]).is_zero()) {
            return Err(AutosError::NotAtOrigin);
        }
        Ok(self.components.iter().map(WeightedPoly::linear_part).collect())
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}' = {}", c.variables()[i], c)?;
        }
        Ok(())
    }
}

pub fn build_quadric_auto(params: &QuadricAutoParams) -> PolyMap {
    let n = params.n;
    let vars = quadric_variables(n);
    let c = |z: &Gaussian| WeightedPoly::constant(vars.clone(), z.clone());
    let x = |i: usize| WeightedPoly::variable(vars.clone(), i);
    let (al, be) = (&params.alpha, &params.beta);
    let ab = al * be;
    let f = params
        .f
        .iter()
        .enumerate()
        .fold(WeightedPoly::zero(vars.clone()), |acc, (k, ck)| acc.add(&c(ck).mul(&x(0).pow(k as u32))));

    let two_alpha_x3f = c(&(al * gauss::from_int(2))).mul(&x(2)).mul(&f);
    let x1f2 = x(0).mul(&f.pow(2));
    let a2x2 = c(&(al * al)).mul(&x(1));
    let x3_inner = c(&ab).mul(&x(2)).add(&c(be).mul(&x(0)).mul(&f));

    let (x2, x3) = match params.variant {
        QuadricVariant::Printed => (
            c(be).mul(&a2x2.add(&two_alpha_x3f).add(&x1f2)),
            c(&gauss::imag_unit()).mul(&x3_inner),
        ),
        QuadricVariant::Corrected => (c(be).mul(&a2x2.sub(&two_alpha_x3f).sub(&x1f2)), x3_inner),
    };
    let mut components = vec![c(be).mul(&x(0)), x2, x3];
    components.extend((3..n).map(|i| c(&ab).mul(&x(i))));
    PolyMap { components }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuadricCheck {
    /// `Q ∘ T = c Q`.
    Multiplier(Gaussian),
    /// `residual = Q ∘ T - multiplier Q` is not zero.
    Mismatch { multiplier: Gaussian, residual: WeightedPoly },
}

/// Expands `Q ∘ T`, reads `c` off the `X1 X2` coefficient and checks the rest.
pub fn verify_quadric_invariance(map: &PolyMap, n: usize) -> Result<QuadricCheck, AutosError> {
    if map.len() != n {
        return Err(AutosError::ComponentCount { expected: n, found: map.len() });
    }
    let q = quadric(n);
    if map.components[0].variables() != q.variables() {
        return Err(AutosError::RingMismatch);
    }
    let qt = q.compose(&map.components);
    let mut x1x2 = vec![0; n];
    x1x2[0] = 1;
    x1x2[1] = 1;
    let multiplier = qt.coefficient(&x1x2);
    let residual = qt.sub(&q.scale(&multiplier));
    if residual.is_zero() {
        Ok(QuadricCheck::Multiplier(multiplier))
    } else {
        Ok(QuadricCheck::Mismatch { multiplier, residual })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum JacobianSpectrum {
    /// Eigenvalues of a triangular Jacobian, listed in variable order.
    Eigenvalues(Vec<Gaussian>),
    /// Characteristic polynomial `det(t I - J)`, constant term first.
    CharPoly(Vec<Gaussian>),
}

impl JacobianSpectrum {
    /// Whether every eigenvalue has modulus `< 1`, decided exactly.
    pub fn contracts(&self) -> bool {
        match self {
            JacobianSpectrum::Eigenvalues(e) => contraction_check(e),
            JacobianSpectrum::CharPoly(p) => roots_in_unit_disk(p),
        }
    }
}

/// Spectrum of the Jacobian at the origin. `f(0) = 0` makes it triangular and
/// gives the diagonal; otherwise the characteristic polynomial is returned
/// unfactored.
pub fn jacobian_spectrum(params: &QuadricAutoParams) -> JacobianSpectrum {
    let map = build_quadric_auto(params);
    let j = map.linear_matrix().expect("quadric automorphisms fix the origin");
    if params.f_at_zero().is_zero() {
        debug_assert!(is_triangular(&j));
        JacobianSpectrum::Eigenvalues(diagonal(&j))
    } else {
        JacobianSpectrum::CharPoly(char_poly(&j))
    }
}

/// As [`jacobian_spectrum`] for an arbitrary map fixing the origin.
pub fn map_spectrum(map: &PolyMap) -> Result<JacobianSpectrum, AutosError> {
    let j = map.linear_matrix()?;
    Ok(if is_triangular(&j) {
        JacobianSpectrum::Eigenvalues(diagonal(&j))
    } else {
        JacobianSpectrum::CharPoly(char_poly(&j))
    })
}

fn diagonal(m: &[Vec<Gaussian>]) -> Vec<Gaussian> {
    m.iter().enumerate().map(|(i, r)| r[i].clone()).collect()
}

fn is_triangular(m: &[Vec<Gaussian>]) -> bool {
    let n = m.len();
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m[i][j].is_zero()));
    let upper = (0..n).all(|i| (0..i).all(|j| m[i][j].is_zero()));
    lower || upper
}

/// Faddeev-LeVerrier; coefficients of `det(t I - m)`, constant first.
pub fn char_poly(m: &[Vec<Gaussian>]) -> Vec<Gaussian> {
    let n = m.len();
    let mul = |a: &[Vec<Gaussian>], b: &[Vec<Gaussian>]| -> Vec<Vec<Gaussian>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(Gaussian::zero(), |s, k| s + &a[i][k] * &b[k][j])).collect())
            .collect()
    };
    let mut coeffs = vec![Gaussian::zero(); n + 1];
    coeffs[n] = gauss::from_int(1);
    let mut mk = vec![vec![Gaussian::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mul(m, &next);
        let tr = (0..n).fold(Gaussian::zero(), |s, i| s + &am[i][i]);
        coeffs[n - k] = -tr / gauss::from_int(k as i64);
        mk = next;
    }
    coeffs
}

/// Every modulus strictly below 1, exactly.
pub fn contraction_check(eigs: &[Gaussian]) -> bool {
    eigs.iter().all(|z| gauss::modulus_sqr(z) < BigRational::one())
}

/// Floating-point version: every `|z| < 1 - tolerance`.
pub fn contraction_check_c64(eigs: &[Complex64], tolerance: f64) -> bool {
    eigs.iter().all(|z| z.norm() < 1.0 - tolerance)
}

/// Schur-Cohn: all roots of `p` (constant term first) lie in `|z| < 1`.
pub fn roots_in_unit_disk(p: &[Gaussian]) -> bool {
    let mut p: Vec<Gaussian> = p.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return false;
    }
    while p.len() > 1 {
        let n = p.len() - 1;
        let (a0, an) = (p[0].clone(), p[n].clone());
        if gauss::modulus_sqr(&a0) >= gauss::modulus_sqr(&an) {
            return false;
        }
        // (conj(a_n) p - a_0 p*) / z
        let conj_an = an.conj();
        p = (1..=n).map(|k| &conj_an * &p[k] - &a0 * p[n - k].conj()).collect();
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProbeVerdict {
    Contracting,
    NonContracting,
    NearFixedPoint,
    RejectedOrigin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub verdict: ProbeVerdict,
    /// First `k` with `|T^k x| < epsilon`.
    pub steps_to_epsilon: Option<usize>,
    pub final_norm: f64,
    /// `min_k |T^k x - x|` over the iterations run.
    pub min_return_distance: f64,
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    pub label: &'static str,
    pub samples: Vec<SampleReport>,
}

pub const PROBE_LABEL: &str = "numerical probe, not a proof";
pub const DEFAULT_EPSILON: f64 = 1e-9;

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

fn probe_one(map: &PolyMap, x: &[Complex64], iterations: usize, epsilon: f64) -> SampleReport {
    let start = norm(x);
    if start == 0.0 {
        return SampleReport {
            verdict: ProbeVerdict::RejectedOrigin,
            steps_to_epsilon: None,
            final_norm: 0.0,
            min_return_distance: 0.0,
            monotone: true,
        };
    }
    let mut cur = x.to_vec();
    let mut prev_norm = start;
    let mut monotone = true;
    let mut steps = None;
    let mut min_ret = f64::INFINITY;
    for k in 1..=iterations {
        cur = map.apply_c64(&cur);
        let nk = norm(&cur);
        if !nk.is_finite() {
            prev_norm = nk;
            monotone = false;
            break;
        }
        monotone &= nk < prev_norm;
        prev_norm = nk;
        let ret = norm(&cur.iter().zip(x).map(|(a, b)| a - b).collect::<Vec<_>>());
        min_ret = min_ret.min(ret);
        if steps.is_none() && nk < epsilon {
            steps = Some(k);
        }
    }
    let verdict = if min_ret <= epsilon {
        ProbeVerdict::NearFixedPoint
    } else if steps.is_some() {
        ProbeVerdict::Contracting
    } else {
        ProbeVerdict::NonContracting
    };
    SampleReport { verdict, steps_to_epsilon: steps, final_norm: prev_norm, min_return_distance: min_ret, monotone }
}

/// Iterates `map` on each sample in double precision. A falsifier for proper
/// discontinuity, never a certificate.
pub fn orbit_probe(map: &PolyMap, samples: &[Vec<Complex64>], iterations: usize, epsilon: f64, exec: Exec) -> OrbitReport {
    OrbitReport {
        label: PROBE_LABEL,
        samples: exec.map_slice(samples, |x| probe_one(map, x, iterations, epsilon)),
    }
}
