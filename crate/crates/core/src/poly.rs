//! Multivariate polynomials with Gaussian-rational coefficients.
//!
//! Text grammar accepted by [`parse_polynomial`]:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*' | '/' | <juxtaposition>) power)*
//! power  := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! The identifier `i` is the imaginary unit, so `3i`, `1/2*i` and `(1+2i)`
//! are Gaussian coefficients. Any other identifier is a variable. Division is
//! only by nonzero constants (`1/2*z0`, `z0/3`). Variables are ordered
//! naturally by name, so `z0, z1, ..., z10` keep their index order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gauss::{self, format_gaussian, Gaussian};
use crate::linalg::RationalMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("exponent vector of length {found} does not match {expected} variables")]
    ArityMismatch { expected: usize, found: usize },
    #[error("weights do not satisfy sum(i_k*b_k) = d for term {term}")]
    NotWeighted { term: String },
    #[error("invalid exponent vector: {0}")]
    InvalidExponents(String),
}

fn syntax(offset: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax { offset, message: message.into() }
}

/// One term `c * z^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coefficient: Gaussian,
}

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }
}

/// A polynomial plus optional weighted-homogeneity data.
///
/// Terms are kept merged, free of zero coefficients and sorted by exponent
/// vector, lexicographically descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    variables: Vec<String>,
    terms: Vec<Monomial>,
    weights: Option<Vec<BigRational>>,
    degree: Option<BigRational>,
}

type TermMap = BTreeMap<Vec<u32>, Gaussian>;

fn add_term(map: &mut TermMap, exps: Vec<u32>, c: Gaussian) {
    if c.is_zero() {
        return;
    }
    match map.entry(exps) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl WeightedPoly {
    fn from_map(variables: Vec<String>, map: TermMap) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .map(|(exponents, coefficient)| Monomial { exponents, coefficient })
            .collect();
        Self { variables, terms, weights: None, degree: None }
    }

    fn to_map(&self) -> TermMap {
        self.terms.iter().map(|t| (t.exponents.clone(), t.coefficient.clone())).collect()
    }

    /// Builds a normalized polynomial, merging repeated exponent vectors.
    pub fn from_terms(
        variables: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, Gaussian)>,
    ) -> Result<Self, PolyError> {
        let n = variables.len();
        let mut map = TermMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(PolyError::ArityMismatch { expected: n, found: e.len() });
            }
            add_term(&mut map, e, c);
        }
        Ok(Self::from_map(variables, map))
    }

    pub fn zero(variables: Vec<String>) -> Self {
        Self { variables, terms: Vec::new(), weights: None, degree: None }
    }

    pub fn constant(variables: Vec<String>, c: Gaussian) -> Self {
        let n = variables.len();
        Self::from_terms(variables, [(vec![0; n], c)]).expect("arity matches")
    }

    /// The polynomial `variables[index]`.
    pub fn variable(variables: Vec<String>, index: usize) -> Self {
        let mut e = vec![0; variables.len()];
        e[index] = 1;
        Self::from_terms(variables, [(e, gauss::from_int(1))]).expect("arity matches")
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Gaussian> {
        match self.terms.as_slice() {
            [] => Some(Gaussian::zero()),
            [t] if t.exponents.iter().all(|&e| e == 0) => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Gaussian {
        self.terms
            .iter()
            .find(|t| t.exponents == exponents)
            .map_or_else(Gaussian::zero, |t| t.coefficient.clone())
    }

    pub fn weights(&self) -> Option<&[BigRational]> {
        self.weights.as_deref()
    }

    pub fn degree(&self) -> Option<&BigRational> {
        self.degree.as_ref()
    }

    /// `true` iff every term satisfies `sum(i_k * b_k) = d` exactly.
    pub fn satisfies_weights(&self, weights: &[BigRational], degree: &BigRational) -> bool {
        weights.len() == self.nvars() && self.terms.iter().all(|t| weighted_degree(t, weights) == *degree)
    }

    /// Attaches weights and degree after checking every term.
    pub fn with_weights(mut self, weights: Vec<BigRational>, degree: BigRational) -> Result<Self, PolyError> {
        if weights.len() != self.nvars() {
            return Err(PolyError::ArityMismatch { expected: self.nvars(), found: weights.len() });
        }
        if let Some(t) = self.terms.iter().find(|t| weighted_degree(t, &weights) != degree) {
            return Err(PolyError::NotWeighted { term: self.format_term(t, true) });
        }
        self.weights = Some(weights);
        self.degree = Some(degree);
        Ok(self)
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.variables, other.variables, "polynomials live in different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut map = self.to_map();
        for t in &other.terms {
            add_term(&mut map, t.exponents.clone(), t.coefficient.clone());
        }
        Self::from_map(self.variables.clone(), map)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-gauss::from_int(1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Gaussian) -> Self {
        let map = self
            .terms
            .iter()
            .map(|t| (t.exponents.clone(), &t.coefficient * k))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::from_map(self.variables.clone(), map)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut map = TermMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
                add_term(&mut map, e, &a.coefficient * &b.coefficient);
            }
        }
        Self::from_map(self.variables.clone(), map)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.variables.clone(), gauss::from_int(1));
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `subs[k]` for the k-th variable. All substitutes must share
    /// one variable list, which becomes the result's.
    pub fn compose(&self, subs: &[WeightedPoly]) -> Self {
        assert_eq!(subs.len(), self.nvars(), "one substitute per variable");
        let vars = subs.first().map_or_else(|| self.variables.clone(), |s| s.variables.clone());
        let mut acc = Self::zero(vars.clone());
        for t in &self.terms {
            let mut prod = Self::constant(vars.clone(), t.coefficient.clone());
            for (s, &e) in subs.iter().zip(&t.exponents) {
                if e > 0 {
                    prod = prod.mul(&s.pow(e));
                }
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// Coefficients of the degree-one part: `linear[k]` multiplies `variables[k]`.
    pub fn linear_part(&self) -> Vec<Gaussian> {
        (0..self.nvars())
            .map(|k| {
                let mut e = vec![0; self.nvars()];
                e[k] = 1;
                self.coefficient(&e)
            })
            .collect()
    }

    /// Evaluates at a complex point in double precision.
    pub fn eval_c64(&self, point: &[num_complex::Complex64]) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|t| {
                t.exponents
                    .iter()
                    .zip(point)
                    .fold(gauss::to_c64(&t.coefficient), |acc, (&e, x)| acc * x.powu(e))
            })
            .sum()
    }

    fn format_monomial(&self, exps: &[u32]) -> String {
        exps.iter()
            .zip(&self.variables)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn format_term(&self, t: &Monomial, with_sign: bool) -> String {
        let mono = self.format_monomial(&t.exponents);
        let c = &t.coefficient;
        let (neg, mag) = if leads_with_minus(c) { (true, -c.clone()) } else { (false, c.clone()) };
        let body = if mono.is_empty() {
            format_gaussian(&mag)
        } else if mag.is_one() {
            mono
        } else {
            format!("{}*{}", format_gaussian(&mag), mono)
        };
        match (with_sign, neg) {
            (true, true) => format!("-{body}"),
            _ => body,
        }
    }
}

/// Unparenthesized coefficients print with a leading minus when negative.
fn leads_with_minus(c: &Gaussian) -> bool {
    if c.im.is_zero() {
        c.re.is_negative()
    } else {
        c.re.is_zero() && c.im.is_negative()
    }
}

fn weighted_degree(t: &Monomial, weights: &[BigRational]) -> BigRational {
    t.exponents.iter().zip(weights).map(|(&e, w)| w * BigRational::from_integer(e.into())).sum()
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, leads_with_minus(&t.coefficient)) {
                (0, _) => write!(f, "{}", self.format_term(t, true))?,
                (_, true) => write!(f, " - {}", self.format_term(t, false))?,
                (_, false) => write!(f, " + {}", self.format_term(t, false))?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(text[start..i].parse().expect("ascii digits"))
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                i += 1;
                match b {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        let ch = text[start..].chars().next().unwrap_or('?');
                        return Err(syntax(start, format!("unexpected character '{ch}'")));
                    }
                }
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

/// Sort key placing `z2` before `z10`.
fn natural_key(name: &str) -> (String, Option<BigInt>, String) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (prefix, digits) = name.split_at(split);
    (prefix.to_string(), digits.parse().ok(), name.to_string())
}

pub(crate) fn natural_cmp(a: &str, b: &str) -> Ordering {
    natural_key(a).cmp(&natural_key(b))
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn expr(&mut self) -> Result<WeightedPoly, PolyError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeightedPoly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let divisor = self.power()?;
                    match divisor.as_constant() {
                        Some(c) if c.is_zero() => return Err(syntax(at, "division by zero")),
                        Some(c) => acc = acc.scale(&c.inv()),
                        None => return Err(syntax(at, "division by a non-constant")),
                    }
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<WeightedPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e = n.to_u32().ok_or_else(|| syntax(at, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(syntax(at, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<WeightedPoly, PolyError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(WeightedPoly::constant(self.vars.to_vec(), gauss::from_rational(BigRational::from_integer(n)))),
            Tok::Ident(name) if name == "i" => Ok(WeightedPoly::constant(self.vars.to_vec(), gauss::imag_unit())),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(k) => Ok(WeightedPoly::variable(self.vars.to_vec(), k)),
                None => Err(syntax(at, format!("unknown variable '{name}'"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(syntax(at, format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_with(text: &str, toks: &[(Tok, usize)], vars: &[String]) -> Result<WeightedPoly, PolyError> {
    let mut p = Parser { toks, pos: 0, end: text.len(), vars };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(poly)
}

/// Parses a nonzero polynomial; variables are every identifier other than `i`.
pub fn parse_polynomial(text: &str) -> Result<WeightedPoly, PolyError> {
    let toks = tokenize(text)?;
    let mut vars: Vec<String> = toks
        .iter()
        .filter_map(|(t, _)| match t {
            Tok::Ident(name) if name != "i" => Some(name.clone()),
            _ => None,
        })
        .collect();
    vars.sort_by(|a, b| natural_cmp(a, b));
    vars.dedup();
    let poly = parse_with(text, &toks, &vars)?;
    if poly.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(poly)
}

/// Parses over a fixed variable list; the zero polynomial is accepted.
pub fn parse_polynomial_in(text: &str, variables: &[String]) -> Result<WeightedPoly, PolyError> {
    let toks = tokenize(text)?;
    parse_with(text, &toks, variables)
}

/// Parses a constant such as `1/2`, `-3i` or `(1+i)/2`.
pub fn parse_gaussian(text: &str) -> Result<Gaussian, PolyError> {
    parse_polynomial_in(text, &[])?
        .as_constant()
        .ok_or_else(|| syntax(0, "expected a constant"))
}

// ---------------------------------------------------------------------------
// Weights

/// Result of solving `sum(i_k * b_k) = d` over all terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightInference {
    /// Unique positive ray, scaled so `d` is the least value making every
    /// weight a positive integer.
    Determined { weights: Vec<BigRational>, degree: BigRational },
    /// The solution space has this dimension (> 1) and no canonical choice applies.
    Ambiguous { dimension: usize },
    /// No solution with all weights and the degree positive.
    Infeasible,
}

pub fn infer_weights(poly: &WeightedPoly) -> WeightInference {
    if let Some(a) = detect_brieskorn_pham(poly) {
        let (weights, degree) = a.canonical_weights();
        return WeightInference::Determined { weights, degree };
    }
    let n = poly.nvars();
    if poly.is_zero() {
        return WeightInference::Infeasible;
    }
    // unknowns (b_0, .., b_{n-1}, d); one row per term
    let mut data = Vec::with_capacity(poly.terms().len() * (n + 1));
    for t in poly.terms() {
        data.extend(t.exponents.iter().map(|&e| BigRational::from_integer(e.into())));
        data.push(-BigRational::one());
    }
    let system = RationalMatrix::new(poly.terms().len(), n + 1, data).expect("shape");
    let kernel = system.kernel_basis();
    match kernel.len() {
        0 => WeightInference::Infeasible,
        1 => {
            let v = &kernel[0];
            let d = &v[n];
            if d.is_zero() {
                return WeightInference::Infeasible;
            }
            let ray: Vec<BigRational> = v[..n].iter().map(|b| b / d).collect();
            if ray.iter().any(|b| !b.is_positive()) {
                return WeightInference::Infeasible;
            }
            let scale = BigRational::from_integer(gauss::lcm_of_denominators(&ray));
            WeightInference::Determined {
                weights: ray.iter().map(|b| b * &scale).collect(),
                degree: scale,
            }
        }
        dimension => WeightInference::Ambiguous { dimension },
    }
}

// ---------------------------------------------------------------------------
// Brieskorn-Pham

/// Exponents `(a_0, ..., a_n)` of `z_0^{a_0} + ... + z_n^{a_n}`; all `>= 2`, at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(a: Vec<u64>) -> Result<Self, PolyError> {
        if a.len() < 2 {
            return Err(PolyError::InvalidExponents(format!("need at least 2 exponents, got {}", a.len())));
        }
        if let Some(bad) = a.iter().find(|&&x| x < 2) {
            return Err(PolyError::InvalidExponents(format!("exponent {bad} is below 2")));
        }
        if let Some(big) = a.iter().find(|&&x| x > u64::from(u32::MAX)) {
            return Err(PolyError::InvalidExponents(format!("exponent {big} is too large")));
        }
        Ok(Self(a))
    }

    /// Parses `2,3,5`.
    pub fn parse_csv(text: &str) -> Result<Self, PolyError> {
        let a = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| PolyError::InvalidExponents(format!("'{}' is not a positive integer", s.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(a)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Complex dimension `n` of the hypersurface in `C^{n+1}`.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn lcm(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &a| acc.lcm(&BigInt::from(a)))
    }

    /// `b_i = lcm(a)/a_i`, `d = lcm(a)`.
    pub fn canonical_weights(&self) -> (Vec<BigRational>, BigRational) {
        let l = self.lcm();
        let weights = self.0.iter().map(|&a| BigRational::from_integer(&l / BigInt::from(a))).collect();
        (weights, BigRational::from_integer(l))
    }

    /// `z0^a0 + z1^a1 + ...`.
    pub fn pure_power_polynomial(&self) -> WeightedPoly {
        let n = self.len();
        let vars = (0..n).map(|k| format!("z{k}")).collect();
        let terms = self.0.iter().enumerate().map(|(k, &a)| {
            let mut e = vec![0; n];
            e[k] = a as u32;
            (e, gauss::from_int(1))
        });
        WeightedPoly::from_terms(vars, terms).expect("arity matches")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `Some(a)` iff the polynomial is one pure power `c_k z_k^{a_k}` per
/// variable with every `a_k >= 2` (nonzero `c_k` are absorbed by rescaling).
pub fn detect_brieskorn_pham(poly: &WeightedPoly) -> Option<ExponentVector> {
    let n = poly.nvars();
    if n < 2 || poly.terms().len() != n {
        return None;
    }
    let mut a = vec![0u64; n];
    for t in poly.terms() {
        let mut support = t.exponents.iter().enumerate().filter(|(_, &e)| e > 0);
        let (k, &e) = support.next()?;
        if support.next().is_some() || e < 2 || a[k] != 0 {
            return None;
        }
        a[k] = u64::from(e);
    }
    ExponentVector::new(a).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn parses_pure_powers() {
        let p = parse_polynomial("z0^3+z1^6+z2^2").unwrap();
        assert_eq!(p.variables(), ["z0", "z1", "z2"]);
        let exps: Vec<_> = p.terms().iter().map(|t| t.exponents.clone()).collect();
        assert_eq!(exps, vec![vec![3, 0, 0], vec![0, 6, 0], vec![0, 0, 2]]);
    }

    #[test]
    fn cancellation_is_zero_polynomial() {
        assert_eq!(parse_polynomial("z0^2 - z0^2"), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn like_terms_merge() {
        let p = parse_polynomial("2*z0*z1^2 + z1^2*z0*1").unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].exponents, vec![1, 2]);
        assert_eq!(p.terms()[0].coefficient, gauss::from_int(3));
    }

    #[test]
    fn gaussian_and_rational_coefficients() {
        let p = parse_polynomial("3i*x + 1/2*y - (1+2i)x").unwrap();
        assert_eq!(p.coefficient(&[1, 0]), gauss::from_int(-1) + gauss::imag_unit());
        assert_eq!(p.coefficient(&[0, 1]), gauss::from_ratio(1, 2));
        assert_eq!(parse_gaussian("i^2").unwrap(), gauss::from_int(-1));
        assert_eq!(parse_gaussian("(1+i)/2").unwrap(), (gauss::from_int(1) + gauss::imag_unit()) * gauss::from_ratio(1, 2));
    }

    #[test]
    fn natural_variable_order() {
        let p = parse_polynomial("z10 + z2 + z1").unwrap();
        assert_eq!(p.variables(), ["z1", "z2", "z10"]);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_polynomial("z0^ + 1") {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("z0 $ z1") {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("(z0 + 1"), Err(PolyError::Syntax { offset: 7, .. })));
        assert!(matches!(parse_polynomial("1/z0"), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_polynomial("z0/0"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_polynomial(""), Err(PolyError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn display_roundtrips() {
        for text in ["z0^3 + z1^6 + z2^2", "-x^2*y + 1/2*i*y - 3", "(1-2i)*a*b^3 + 2i"] {
            let p = parse_polynomial(text).unwrap();
            let q = parse_polynomial(&p.to_string()).unwrap();
            assert_eq!(p, q, "{text} -> {p}");
        }
    }

    #[test]
    fn weights_of_brieskorn_pham() {
        let p = parse_polynomial("z0^3+z1^6+z2^2").unwrap();
        assert_eq!(
            infer_weights(&p),
            WeightInference::Determined { weights: vec![r(2), r(1), r(3)], degree: r(6) }
        );
        let q = parse_polynomial("z0^2+z1^2").unwrap();
        assert_eq!(infer_weights(&q), WeightInference::Determined { weights: vec![r(1), r(1)], degree: r(2) });
    }

    #[test]
    fn weights_by_row_reduction() {
        // 3*b0 = d, b0 + b1 = d
        let p = parse_polynomial("z0^3+z0*z1").unwrap();
        assert_eq!(infer_weights(&p), WeightInference::Determined { weights: vec![r(1), r(2)], degree: r(3) });
    }

    #[test]
    fn weight_edge_cases() {
        // z0^2 + z0^3: b0 forced to 0
        assert_eq!(infer_weights(&parse_polynomial("z0^2 + z0^3").unwrap()), WeightInference::Infeasible);
        // constant plus a monomial: d = 0
        assert_eq!(infer_weights(&parse_polynomial("z0^2*z1 + 1").unwrap()), WeightInference::Infeasible);
        // single mixed monomial: two free directions
        assert_eq!(
            infer_weights(&parse_polynomial("z0^2*z1^3").unwrap()),
            WeightInference::Ambiguous { dimension: 2 }
        );
    }

    #[test]
    fn with_weights_checks_terms() {
        let p = parse_polynomial("z0^3+z0*z1").unwrap();
        assert!(p.clone().with_weights(vec![r(1), r(2)], r(3)).is_ok());
        assert!(matches!(p.with_weights(vec![r(1), r(1)], r(3)), Err(PolyError::NotWeighted { .. })));
    }

    #[test]
    fn detects_brieskorn_pham() {
        let a = detect_brieskorn_pham(&parse_polynomial("z0^3+z1^6+z2^2").unwrap()).unwrap();
        assert_eq!(a.as_slice(), [3, 6, 2]);
        assert_eq!(detect_brieskorn_pham(&parse_polynomial("z0^2+z0*z1").unwrap()), None);
        let b = detect_brieskorn_pham(&parse_polynomial("5z0^2+7z1^2").unwrap()).unwrap();
        assert_eq!(b.as_slice(), [2, 2]);
        assert_eq!(detect_brieskorn_pham(&parse_polynomial("z0^2+z1").unwrap()), None);
        assert_eq!(detect_brieskorn_pham(&parse_polynomial("z0^2+z0^3").unwrap()), None);
    }

    #[test]
    fn exponent_vector_validation() {
        assert!(ExponentVector::new(vec![2]).is_err());
        assert!(ExponentVector::new(vec![2, 1]).is_err());
        assert_eq!(ExponentVector::parse_csv("2, 3,5").unwrap().to_string(), "2,3,5");
        assert!(ExponentVector::parse_csv("2,x").is_err());
    }

    #[test]
    fn compose_and_pow() {
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let p = parse_polynomial_in("x*y + x^2", &vars).unwrap();
        let subs = [parse_polynomial_in("x + y", &vars).unwrap(), parse_polynomial_in("x - y", &vars).unwrap()];
        let expect = parse_polynomial_in("2*x^2 + 2*x*y", &vars).unwrap();
        assert_eq!(p.compose(&subs), expect);
        assert_eq!(
            parse_polynomial_in("(x+y)^3", &vars).unwrap(),
            parse_polynomial_in("x^3 + 3x^2*y + 3x*y^2 + y^3", &vars).unwrap()
        );
    }
}
