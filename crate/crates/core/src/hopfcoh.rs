//! Dimension tables for `H^q(Omega^p(E))` on Hopf and Brieskorn-van de Ven
//! manifolds, with `E` trivial on the universal cover.
//!
//! Edge degrees of the cover are infinite-dimensional. They are never given
//! numbers: `I - T^*` is Fredholm of index zero there, so kernel and
//! cokernel share one [`DimEntry::Symbol`], which is how `H^0 = H^1` and
//! `H^{n-1} = H^n` come out of the tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::groupcoh::{z_cohomology, GroupCohError};
use crate::linalg::RationalMatrix;
use crate::milnor::{fixed_subspace_dim, milnor_number};
use crate::poly::ExponentVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("dimension n = {0} is below 3")]
    DimensionTooSmall(usize),
    #[error("form degree p = {p} outside 0..={n}")]
    FormDegree { p: usize, n: usize },
    #[error("p = 0 is not covered by the Brieskorn-van de Ven table (needs p >= 1)")]
    ZeroFormDegree,
    #[error("tau must be at least 1")]
    ZeroTau,
    #[error("symbol {0} would be added to itself")]
    RepeatedSymbol(String),
    #[error("degree {q} outside 0..={n}")]
    DegreeOutOfRange { q: usize, n: usize },
    #[error("inconsistent profile at degree {q}: {reason}")]
    InconsistentProfile { q: usize, reason: String },
    #[error("E1 table: {0}")]
    BadE1(String),
    #[error("search exceeded {0} nodes")]
    SearchBound(u64),
    #[error("canonical divisor of a Brieskorn-van de Ven manifold needs exponents")]
    MissingExponents,
    #[error(transparent)]
    GroupCoh(#[from] GroupCohError),
}

/// A dimension that may be a number, an unknown, or a formal sum of both.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DimEntry {
    Zero,
    Finite(BigUint),
    Symbol(String),
    /// Normalized: distinct symbols sorted by name, then at most one nonzero `Finite`.
    Sum(Vec<DimEntry>),
}

impl DimEntry {
    pub fn finite(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            DimEntry::Zero
        } else {
            DimEntry::Finite(n)
        }
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        DimEntry::Symbol(name.into())
    }

    fn parts(&self) -> (BigUint, Vec<String>) {
        match self {
            DimEntry::Zero => (BigUint::zero(), Vec::new()),
            DimEntry::Finite(n) => (n.clone(), Vec::new()),
            DimEntry::Symbol(s) => (BigUint::zero(), vec![s.clone()]),
            DimEntry::Sum(items) => {
                let mut total = BigUint::zero();
                let mut syms = Vec::new();
                for item in items {
                    let (f, s) = item.parts();
                    total += f;
                    syms.extend(s);
                }
                (total, syms)
            }
        }
    }

    fn from_parts(finite: BigUint, mut symbols: Vec<String>) -> Self {
        symbols.sort();
        match (symbols.len(), finite.is_zero()) {
            (0, _) => Self::finite(finite),
            (1, true) => DimEntry::Symbol(symbols.pop().expect("one symbol")),
            _ => {
                let mut items: Vec<DimEntry> = symbols.into_iter().map(DimEntry::Symbol).collect();
                if !finite.is_zero() {
                    items.push(DimEntry::Finite(finite));
                }
                DimEntry::Sum(items)
            }
        }
    }

    /// Formal sum. Fails if a symbol would appear twice.
    pub fn add(&self, other: &Self) -> Result<Self, HopfError> {
        let (f1, mut s1) = self.parts();
        let (f2, s2) = other.parts();
        for s in s2 {
            if s1.contains(&s) {
                return Err(HopfError::RepeatedSymbol(s));
            }
            s1.push(s);
        }
        Ok(Self::from_parts(f1 + f2, s1))
    }

    /// The value when no symbol is involved.
    pub fn as_finite(&self) -> Option<BigUint> {
        match self {
            DimEntry::Zero => Some(BigUint::zero()),
            DimEntry::Finite(n) => Some(n.clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DimEntry::Zero)
    }

    pub fn symbols(&self) -> Vec<String> {
        self.parts().1
    }

    /// The numeric part of the entry (the whole value when symbol-free).
    pub fn finite_part(&self) -> BigUint {
        self.parts().0
    }
}

impl fmt::Display for DimEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimEntry::Zero => write!(f, "0"),
            DimEntry::Finite(n) => write!(f, "{n}"),
            DimEntry::Symbol(s) => write!(f, "{s}"),
            DimEntry::Sum(items) => {
                let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("+"))
            }
        }
    }
}

/// `q -> dim` over `0 <= q <= n`; absent degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    n: usize,
    entries: BTreeMap<usize, DimEntry>,
}

impl GradedDims {
    pub fn new(n: usize) -> Self {
        Self { n, entries: BTreeMap::new() }
    }

    pub fn from_vec(entries: Vec<DimEntry>) -> Self {
        let n = entries.len().saturating_sub(1);
        let mut g = Self::new(n);
        for (q, e) in entries.into_iter().enumerate() {
            g.set(q, e).expect("in range");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, q: usize, e: DimEntry) -> Result<(), HopfError> {
        if q > self.n {
            return Err(HopfError::DegreeOutOfRange { q, n: self.n });
        }
        if e.is_zero() {
            self.entries.remove(&q);
        } else {
            self.entries.insert(q, e);
        }
        Ok(())
    }

    pub fn get(&self, q: usize) -> DimEntry {
        self.entries.get(&q).cloned().unwrap_or(DimEntry::Zero)
    }

    /// Entries for `q = 0..=n`.
    pub fn to_vec(&self) -> Vec<DimEntry> {
        (0..=self.n).map(|q| self.get(q)).collect()
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_vec().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `q -> (dim ker, dim coker)` of `T^* - I` on the cover's `H^q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KerCokerProfile {
    entries: BTreeMap<usize, (DimEntry, DimEntry)>,
}

pub const INFINITE_EDGE: &str = "infinite-edge";

/// Default names for the shared Fredholm symbols at the cover's edge degrees.
pub fn edge_symbol(q: usize) -> String {
    format!("F{q}")
}

impl KerCokerProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, q: usize, ker: DimEntry, coker: DimEntry) {
        self.entries.insert(q, (ker, coker));
    }

    pub fn get(&self, q: usize) -> (DimEntry, DimEntry) {
        self.entries.get(&q).cloned().unwrap_or((DimEntry::Zero, DimEntry::Zero))
    }

    fn with_edges(cover: &GradedDims, edge_name: &dyn Fn(usize) -> String) -> Self {
        let mut p = Self::new();
        for q in 0..=cover.n() {
            if cover.get(q).as_finite().is_none() {
                let s = DimEntry::symbol(edge_name(q));
                p.set(q, s.clone(), s);
            }
        }
        p
    }

    /// Kernel and cokernel of an explicit action on every finite nonzero
    /// degree (via [`z_cohomology`]); symbolic degrees share a Fredholm symbol.
    pub fn from_actions(
        cover: &GradedDims,
        actions: &BTreeMap<usize, RationalMatrix>,
        edge_name: &dyn Fn(usize) -> String,
    ) -> Result<Self, HopfError> {
        let mut p = Self::with_edges(cover, edge_name);
        for q in 0..=cover.n() {
            let Some(dim) = cover.get(q).as_finite() else { continue };
            if dim.is_zero() {
                continue;
            }
            let a = actions.get(&q).ok_or_else(|| HopfError::InconsistentProfile {
                q,
                reason: "no action supplied for a nonzero finite degree".into(),
            })?;
            if BigUint::from(a.rows()) != dim {
                return Err(HopfError::InconsistentProfile {
                    q,
                    reason: format!("action is {}x{}, cover has dimension {dim}", a.rows(), a.cols()),
                });
            }
            let z = z_cohomology(a)?;
            p.set(q, DimEntry::finite(z.h0 as u64), DimEntry::finite(z.h1 as u64));
        }
        Ok(p)
    }

    /// `ker = coker = fixed` on every finite nonzero degree.
    pub fn from_fixed_dim(cover: &GradedDims, fixed: u64, edge_name: &dyn Fn(usize) -> String) -> Self {
        let mut p = Self::with_edges(cover, edge_name);
        for q in 0..=cover.n() {
            if cover.get(q).as_finite().is_some_and(|d| !d.is_zero()) {
                p.set(q, DimEntry::finite(fixed), DimEntry::finite(fixed));
            }
        }
        p
    }
}

/// `H^q(V - 0, Omega^p)` for `1 <= q <= n-2`: `tau` when `p + q` is `n-1` or
/// `n`, else 0. `q = 0` and `q = n-1` are infinite-dimensional edges unless
/// the `tau` rule also applies there; `q = n` vanishes.
pub fn cover_omega_dims(n: usize, p: usize, tau: &BigUint) -> Result<GradedDims, HopfError> {
    check_np(n, p)?;
    if tau.is_zero() {
        return Err(HopfError::ZeroTau);
    }
    let mut g = GradedDims::new(n);
    for q in 0..n {
        let tau_degree = p + q == n - 1 || p + q == n;
        let e = if tau_degree {
            DimEntry::Finite(tau.clone())
        } else if q == 0 || q == n - 1 {
            DimEntry::symbol(INFINITE_EDGE)
        } else {
            DimEntry::Zero
        };
        g.set(q, e)?;
    }
    Ok(g)
}

fn check_np(n: usize, p: usize) -> Result<(), HopfError> {
    if n < 3 {
        return Err(HopfError::DimensionTooSmall(n));
    }
    if p > n {
        return Err(HopfError::FormDegree { p, n });
    }
    Ok(())
}

/// `h^k = ker_k + coker_{k-1}` over signed positions; used both in range and
/// for the unclipped W-part.
fn recurrence(pieces: &[(i64, DimEntry, DimEntry)]) -> Result<BTreeMap<i64, DimEntry>, HopfError> {
    let mut out: BTreeMap<i64, DimEntry> = BTreeMap::new();
    for (q, ker, coker) in pieces {
        for (pos, e) in [(*q, ker), (q + 1, coker)] {
            if e.is_zero() {
                continue;
            }
            let cur = out.remove(&pos).unwrap_or(DimEntry::Zero);
            out.insert(pos, cur.add(e)?);
        }
    }
    Ok(out)
}

/// Dimensions on the quotient from the cover and the kernel/cokernel profile.
pub fn quotient_dims_from_profile(cover: &GradedDims, profile: &KerCokerProfile) -> Result<GradedDims, HopfError> {
    let n = cover.n();
    let mut pieces = Vec::new();
    for q in 0..=n {
        let (ker, coker) = profile.get(q);
        if let Some(dim) = cover.get(q).as_finite() {
            let (Some(k), Some(c)) = (ker.as_finite(), coker.as_finite()) else {
                return Err(HopfError::InconsistentProfile { q, reason: "symbolic kernel on a finite degree".into() });
            };
            if k > dim || c > dim {
                return Err(HopfError::InconsistentProfile { q, reason: format!("ker {k} / coker {c} exceed dimension {dim}") });
            }
            if k != c {
                return Err(HopfError::InconsistentProfile { q, reason: format!("ker {k} != coker {c} on a finite degree") });
            }
        }
        if q == n && !coker.is_zero() {
            return Err(HopfError::InconsistentProfile { q, reason: "cokernel in top degree".into() });
        }
        pieces.push((q as i64, ker, coker));
    }
    let mut g = GradedDims::new(n);
    for (pos, e) in recurrence(&pieces)? {
        g.set(pos as usize, e)?;
    }
    Ok(g)
}

pub fn a_symbol(p: usize) -> String {
    format!("A_{p}")
}

pub fn b_symbol(p: usize) -> String {
    format!("B_{p}")
}

fn v_part(n: usize, p: usize) -> GradedDims {
    let mut g = GradedDims::new(n);
    for q in [0, 1] {
        g.set(q, DimEntry::symbol(a_symbol(p))).expect("in range");
    }
    for q in [n - 1, n] {
        g.set(q, DimEntry::symbol(b_symbol(p))).expect("in range");
    }
    g
}

/// `H^q(H, Omega^p(E))` on a Hopf manifold: `A_p` at `q = 0, 1`, `B_p` at
/// `q = n-1, n`, zero in between.
pub fn hopf_omega_table(n: usize, p: usize) -> Result<GradedDims, HopfError> {
    check_np(n, p)?;
    Ok(v_part(n, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BvdvMode {
    /// W-part `(1, 2, 1)` centered at `n - p - 1`, as stated in the theorem.
    Theorem,
    /// Recomputed from the cover dimensions and the one-dimensional fixed
    /// subspace of the scaling action: lands at `n - p`.
    Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvdvTable {
    pub n: usize,
    pub p: usize,
    pub mode: BvdvMode,
    pub row: GradedDims,
    pub w_center: i64,
    /// Unclipped W-part, `(degree, rank)` by increasing degree.
    pub w_part: Vec<(i64, u64)>,
    /// Total W rank falling outside `0..=n`.
    pub clipped_mass: u64,
}

/// Brieskorn-van de Ven table for `p >= 1`, assuming the scaling action fixes
/// a one-dimensional subspace of each `tau`-dimensional cover degree.
pub fn bvdv_omega_table(n: usize, p: usize, mode: BvdvMode) -> Result<BvdvTable, HopfError> {
    bvdv_table_with(n, p, mode, 1)
}

/// As [`bvdv_omega_table`], for `z_0^{a_0} + ... + z_n^{a_n}` with the fixed
/// subspace computed from its Milnor algebra.
pub fn bvdv_omega_table_for(a: &ExponentVector, p: usize, mode: BvdvMode) -> Result<BvdvTable, HopfError> {
    let fixed = fixed_subspace_dim(a);
    debug_assert!(BigUint::from(fixed) <= milnor_number(a));
    bvdv_table_with(a.dim(), p, mode, fixed)
}

fn bvdv_table_with(n: usize, p: usize, mode: BvdvMode, fixed: u64) -> Result<BvdvTable, HopfError> {
    check_np(n, p)?;
    if p == 0 {
        return Err(HopfError::ZeroFormDegree);
    }
    let (n_i, p_i) = (n as i64, p as i64);
    let w: BTreeMap<i64, DimEntry> = match mode {
        BvdvMode::Theorem => {
            let c = n_i - p_i - 1;
            [(c - 1, 1u64), (c, 2), (c + 1, 1)].into_iter().map(|(q, r)| (q, DimEntry::finite(r))).collect()
        }
        BvdvMode::Derivation => {
            // cover degrees with p + q in {n-1, n}, each with ker = coker = fixed
            let f = DimEntry::finite(fixed);
            let pieces: Vec<_> = [n_i - 1 - p_i, n_i - p_i].into_iter().map(|q| (q, f.clone(), f.clone())).collect();
            recurrence(&pieces)?
        }
    };
    let w_part: Vec<(i64, u64)> = w
        .iter()
        .map(|(&q, e)| (q, e.as_finite().and_then(|v| v.to_u64()).expect("finite W rank")))
        .collect();
    let w_center = match mode {
        BvdvMode::Theorem => n_i - p_i - 1,
        BvdvMode::Derivation => n_i - p_i,
    };
    let mut row = v_part(n, p);
    let mut clipped_mass = 0;
    for &(q, r) in &w_part {
        if (0..=n_i).contains(&q) {
            let q = q as usize;
            row.set(q, row.get(q).add(&DimEntry::finite(r))?)?;
        } else {
            clipped_mass += r;
        }
    }
    Ok(BvdvTable { n, p, mode, row, w_center, w_part, clipped_mass })
}

/// Coefficients of a divisor in the basis `D_0, ..., D_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub coefficients: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldKind {
    Hopf,
    Bvdv,
}

/// Canonical class: `sum D_i` for Hopf quotients of `C^{n+1} - 0`; for
/// Brieskorn-van de Ven `(-a_0, 1, ..., 1)`. The sum in the latter formula
/// may also be read as including `i = 0`, giving
/// [`canonical_divisor_alternative`]; the two forms used to derive it leave
/// the sign convention open.
pub fn canonical_divisor(kind: ManifoldKind, n: usize, a: Option<&ExponentVector>) -> Result<DivisorClass, HopfError> {
    match kind {
        ManifoldKind::Hopf => Ok(DivisorClass { coefficients: vec![1; n + 1] }),
        ManifoldKind::Bvdv => {
            let a = a.ok_or(HopfError::MissingExponents)?;
            let mut c = vec![1i64; a.len()];
            c[0] = -(a.as_slice()[0] as i64);
            Ok(DivisorClass { coefficients: c })
        }
    }
}

/// `(-a_0 + 1, 1, ..., 1)`.
pub fn canonical_divisor_alternative(a: &ExponentVector) -> DivisorClass {
    let mut c = vec![1i64; a.len()];
    c[0] = 1 - a.as_slice()[0] as i64;
    DivisorClass { coefficients: c }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PicardStatement {
    /// `Pic = C^*`
    CStar,
    Undetermined,
}

impl fmt::Display for PicardStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PicardStatement::CStar => write!(f, "Pic ≅ C*"),
            PicardStatement::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// Exponential-sequence argument: needs `H^0(O) = H^1(O)` and `b_2 = 0`.
pub fn picard_statement(structure_row: &GradedDims, b2: usize) -> PicardStatement {
    if b2 == 0 && structure_row.get(0) == structure_row.get(1) {
        PicardStatement::CStar
    } else {
        PicardStatement::Undetermined
    }
}

// ---------------------------------------------------------------------------
// Hodge-de Rham degeneration

pub const DEFAULT_NODE_BOUND: u64 = 10_000_000;

/// `E_1^{p,q}` as `entries[p][q]` and the Betti vector the sequence abuts to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Table {
    entries: Vec<Vec<u64>>,
    target: Vec<u64>,
}

impl E1Table {
    pub fn new(entries: Vec<Vec<u64>>, target: Vec<u64>) -> Result<Self, HopfError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(HopfError::BadE1("empty grid".into()));
        }
        if entries.iter().any(|r| r.len() != cols) {
            return Err(HopfError::BadE1("ragged grid".into()));
        }
        if target.len() != rows + cols - 1 {
            return Err(HopfError::BadE1(format!(
                "target has {} entries, grid needs {}",
                target.len(),
                rows + cols - 1
            )));
        }
        Ok(Self { entries, target })
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn target(&self) -> &[u64] {
        &self.target
    }

    fn p_len(&self) -> usize {
        self.entries.len()
    }

    fn q_len(&self) -> usize {
        self.entries[0].len()
    }
}

/// Ranks `r^{p,q}` of `d_1: E_1^{p,q} -> E_1^{p+1,q}`, stored as `ranks[p][q]`
/// for `p` below the last column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankAssignment {
    pub ranks: Vec<Vec<u64>>,
}

impl RankAssignment {
    fn rank(&self, p: usize, q: usize) -> u64 {
        self.ranks.get(p).map_or(0, |row| row[q])
    }

    /// `E_2^{p,q} = E_1^{p,q} - r^{p,q} - r^{p-1,q}`, or `None` if negative.
    pub fn e2(&self, e1: &E1Table) -> Option<Vec<Vec<u64>>> {
        let mut out = e1.entries.clone();
        for (p, row) in out.iter_mut().enumerate() {
            for (q, cell) in row.iter_mut().enumerate() {
                let left = if p > 0 { self.rank(p - 1, q) } else { 0 };
                *cell = cell.checked_sub(self.rank(p, q))?.checked_sub(left)?;
            }
        }
        Some(out)
    }

    /// Recomputes the antidiagonal sums of `E_2` and compares with the target.
    pub fn verify(&self, e1: &E1Table) -> bool {
        let Some(e2) = self.e2(e1) else { return false };
        let mut sums = vec![0u64; e1.target.len()];
        for (p, row) in e2.iter().enumerate() {
            for (q, &v) in row.iter().enumerate() {
                sums[p + q] += v;
            }
        }
        sums == e1.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// Lexicographically smallest assignment, ordered by `p` then `q`.
    Feasible(RankAssignment),
    Infeasible,
}

struct Search<'a> {
    e1: &'a E1Table,
    ranks: Vec<Vec<u64>>,
    nodes: u64,
    bound: u64,
}

impl Search<'_> {
    fn vars(&self) -> usize {
        (self.e1.p_len() - 1) * self.e1.q_len()
    }

    /// With the first `assigned` variables fixed, can every antidiagonal still hit its target?
    fn consistent(&self, assigned: usize) -> bool {
        let (pl, ql) = (self.e1.p_len(), self.e1.q_len());
        let known = |p: usize, q: usize| p * ql + q < assigned;
        let mut fixed = vec![0u64; self.e1.target.len()];
        let mut slack = vec![0u64; self.e1.target.len()];
        for p in 0..pl {
            for q in 0..ql {
                let e = self.e1.entries[p][q];
                let left = if p == 0 { Some(0) } else { known(p - 1, q).then(|| self.ranks[p - 1][q]) };
                let right = if p + 1 == pl { Some(0) } else { known(p, q).then(|| self.ranks[p][q]) };
                match (left, right) {
                    (Some(l), Some(r)) => fixed[p + q] += e - l - r,
                    (l, r) => slack[p + q] += e - l.unwrap_or(0) - r.unwrap_or(0),
                }
            }
        }
        self.e1
            .target
            .iter()
            .zip(fixed.iter().zip(&slack))
            .all(|(&t, (&f, &s))| f <= t && t <= f + s)
    }

    fn go(&mut self, idx: usize) -> Result<bool, HopfError> {
        self.nodes += 1;
        if self.nodes > self.bound {
            return Err(HopfError::SearchBound(self.bound));
        }
        if !self.consistent(idx) {
            return Ok(false);
        }
        if idx == self.vars() {
            return Ok(true);
        }
        let ql = self.e1.q_len();
        let (p, q) = (idx / ql, idx % ql);
        let left = if p > 0 { self.ranks[p - 1][q] } else { 0 };
        let max = (self.e1.entries[p][q] - left).min(self.e1.entries[p + 1][q]);
        for r in 0..=max {
            self.ranks[p][q] = r;
            if self.go(idx + 1)? {
                return Ok(true);
            }
        }
        self.ranks[p][q] = 0;
        Ok(false)
    }
}

/// Looks for ranks of `d_1` under which `E_2` already has the target total
/// dimensions, i.e. the sequence can degenerate at `E_2`. Exhaustive
/// backtracking in lexicographic order.
pub fn hodge_derham_feasible(e1: &E1Table, node_bound: u64) -> Result<Feasibility, HopfError> {
    let mut s = Search {
        e1,
        ranks: vec![vec![0; e1.q_len()]; e1.p_len() - 1],
        nodes: 0,
        bound: node_bound,
    };
    if s.go(0)? {
        let a = RankAssignment { ranks: s.ranks };
        debug_assert!(a.verify(e1));
        Ok(Feasibility::Feasible(a))
    } else {
        Ok(Feasibility::Infeasible)
    }
}
