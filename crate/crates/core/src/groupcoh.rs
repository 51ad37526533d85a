//! Cohomology of the deck group of `V - 0 -> (V - 0)/pi_1`.
//!
//! `pi_1` is a central extension of a finite group `G` by `Z = <g>`. Over `Q`,
//! `H^q(Z, W)` is `ker(g - 1)` for `q = 0`, `coker(g - 1)` for `q = 1` and 0
//! above, and the finite quotient only contributes its invariants. With the
//! cover's cohomology concentrated in degrees `0, n-1, n, 2n-1` this gives
//! `h^k = dim ker_k + dim coker_{k-1}`, taken `G`-invariantly.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::linalg::{LinalgError, RationalMatrix};

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupCohError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("group closure exceeded {bound} elements")]
    ClosureBound { bound: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("finite generator {index} does not commute with the central generator")]
    NonCentral { index: usize },
    #[error("middle Betti number {0} > 0 requires the deck action on the middle cohomology")]
    MissingDeckAction(usize),
    #[error("complex dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
}

/// `dim H^q(Z, W)` for `Z` acting on `W` through a single matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZCohomology {
    /// invariants `W^g = ker(A - I)`
    pub h0: usize,
    /// covariants `W_g = coker(A - I)`
    pub h1: usize,
    /// always 0: `Z` has cohomological dimension 1
    pub higher: usize,
}

pub fn z_cohomology(a: &RationalMatrix) -> Result<ZCohomology, GroupCohError> {
    let k = a.minus_identity()?;
    let h0 = k.kernel_basis().len();
    let h1 = k.rows() - k.rank();
    assert_eq!(h0, h1, "rank-nullity for a square matrix");
    Ok(ZCohomology { h0, h1, higher: 0 })
}

/// All products of the generators, breadth first, identity included.
pub fn group_closure(gens: &[RationalMatrix], bound: usize) -> Result<Vec<RationalMatrix>, GroupCohError> {
    let first = gens.first().ok_or(GroupCohError::NoGenerators)?;
    let dim = first.rows();
    for (i, g) in gens.iter().enumerate() {
        if g.rows() != dim || !g.is_square() {
            return Err(LinalgError::Mismatch(format!("generator {i} is {}x{}, expected {dim}x{dim}", g.rows(), g.cols())).into());
        }
        if !g.is_invertible() {
            return Err(GroupCohError::NotInvertible(format!("generator {i}")));
        }
    }
    let id = RationalMatrix::identity(dim);
    let mut seen: HashSet<RationalMatrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(GroupCohError::ClosureBound { bound });
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// `(1/|G|) * sum_{h in G} h`.
pub fn averaging_projector(group: &[RationalMatrix]) -> RationalMatrix {
    let dim = group[0].rows();
    let sum = group.iter().fold(RationalMatrix::zeros(dim, dim), |acc, g| acc.add(g).expect("same shape"));
    sum.scale(&BigRational::new(BigInt::from(1), BigInt::from(group.len())))
}

/// Dimension of the subspace fixed by the finite group the generators span.
pub fn finite_invariants(gens: &[RationalMatrix], bound: usize) -> Result<usize, GroupCohError> {
    let group = group_closure(gens, bound)?;
    Ok(averaging_projector(&group).rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionProvenance {
    /// Identity assumed because no action was supplied.
    DefaultIdentity,
    UserSupplied,
}

/// Action of `pi_1` on the rational cohomology of `V - 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckAction {
    pub n: usize,
    pub middle_betti: usize,
    /// Infinite-order generator on `H^{n-1}(V - 0, Q)`.
    pub action_mid: RationalMatrix,
    /// Generators of the finite quotient on the same space.
    pub finite_part: Option<Vec<RationalMatrix>>,
    pub provenance: ActionProvenance,
}

impl DeckAction {
    pub fn new(
        n: usize,
        action_mid: RationalMatrix,
        finite_part: Option<Vec<RationalMatrix>>,
    ) -> Result<Self, GroupCohError> {
        if n < 2 {
            return Err(GroupCohError::DimensionTooSmall(n));
        }
        action_mid.require_square()?;
        if !action_mid.is_invertible() {
            return Err(GroupCohError::NotInvertible("middle action".into()));
        }
        let b = action_mid.rows();
        if let Some(gens) = &finite_part {
            for (index, g) in gens.iter().enumerate() {
                if g.rows() != b || g.cols() != b {
                    return Err(LinalgError::Mismatch(format!("finite generator {index} must be {b}x{b}")).into());
                }
                if action_mid.mul(g)? != g.mul(&action_mid)? {
                    return Err(GroupCohError::NonCentral { index });
                }
            }
        }
        Ok(Self { n, middle_betti: b, action_mid, finite_part, provenance: ActionProvenance::UserSupplied })
    }

    /// Identity action on a `b`-dimensional middle cohomology, flagged as assumed.
    pub fn default_identity(n: usize, b: usize) -> Result<Self, GroupCohError> {
        let mut d = Self::new(n, RationalMatrix::identity(b), None)?;
        d.provenance = ActionProvenance::DefaultIdentity;
        Ok(d)
    }

    fn finite_projector(&self, bound: usize) -> Result<RationalMatrix, GroupCohError> {
        match &self.finite_part {
            Some(gens) if !gens.is_empty() && self.middle_betti > 0 => {
                Ok(averaging_projector(&group_closure(gens, bound)?))
            }
            _ => Ok(RationalMatrix::identity(self.middle_betti)),
        }
    }
}

/// `(dim ker(K)^G, dim coker(K)^G)` for `K = T - I`, with `P` the averaging
/// projector of a finite group commuting with `T`.
fn invariant_ker_coker(t: &RationalMatrix, p: &RationalMatrix) -> Result<(usize, usize), GroupCohError> {
    if t.rows() == 0 {
        return Ok((0, 0));
    }
    let k = t.minus_identity()?;
    let kernel = k.kernel_matrix();
    let ker = if kernel.cols() == 0 { 0 } else { p.mul(&kernel)?.rank() };
    let coker = p.rank() - p.mul(&k)?.rank();
    Ok((ker, coker))
}

/// Assembles `h^k = ker_k + coker_{k-1}` from per-degree `(ker, coker)` pairs.
pub(crate) fn assemble(len: usize, pieces: &[(usize, (usize, usize))]) -> Vec<usize> {
    let mut h = vec![0; len];
    for &(q, (ker, coker)) in pieces {
        h[q] += ker;
        if q + 1 < len {
            h[q + 1] += coker;
        }
    }
    h
}

fn one() -> RationalMatrix {
    RationalMatrix::identity(1)
}

/// Betti numbers `b_0, ..., b_{2n}` of `(V - 0)/pi_1`.
///
/// Degrees 0 and `2n-1` of the cover carry the trivial action; `H^n` is dual
/// to `H^{n-1}`, so the generator acts there by the inverse transpose.
pub fn quotient_betti(d: &DeckAction, bound: usize) -> Result<Vec<usize>, GroupCohError> {
    let n = d.n;
    let p = d.finite_projector(bound)?;
    let dual = d.action_mid.inverse().expect("validated invertible").transpose();
    let pieces = [
        (0, invariant_ker_coker(&one(), &one())?),
        (n - 1, invariant_ker_coker(&d.action_mid, &p)?),
        (n, invariant_ker_coker(&dual, &p.transpose())?),
        (2 * n - 1, invariant_ker_coker(&one(), &one())?),
    ];
    Ok(assemble(2 * n + 1, &pieces))
}

/// `true` iff no nonzero class of `H^{n-1}(V - 0, Q)` is fixed by all of `pi_1`.
pub fn is_homological_hopf(d: &DeckAction, bound: usize) -> Result<bool, GroupCohError> {
    let p = d.finite_projector(bound)?;
    Ok(invariant_ker_coker(&d.action_mid, &p)?.0 == 0)
}

/// A local system given by its monodromy along the central generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystemRep {
    pub rank: usize,
    pub rho_t: RationalMatrix,
    pub deck_on_mid: Option<RationalMatrix>,
}

impl LocalSystemRep {
    pub fn new(rho_t: RationalMatrix, deck_on_mid: Option<RationalMatrix>) -> Result<Self, GroupCohError> {
        rho_t.require_square()?;
        if !rho_t.is_invertible() {
            return Err(GroupCohError::NotInvertible("local system monodromy".into()));
        }
        if let Some(d) = &deck_on_mid {
            d.require_square()?;
            if !d.is_invertible() {
                return Err(GroupCohError::NotInvertible("deck action".into()));
            }
        }
        Ok(Self { rank: rho_t.rows(), rho_t, deck_on_mid })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystemCohomology {
    /// `dim H^k(L)`, `k = 0..=2n`
    pub dims: Vec<usize>,
    pub warnings: Vec<String>,
}

pub const LOCAL_SYSTEM_DISCREPANCY: &str = "local-system-dims: the general ker/coker computation differs from \
the blanket statement dim H^0 = dim H^1 = dim H^{2n-1} = dim H^{2n} = 1, which holds for the trivial rank-one system";

/// Cohomology of a local system on the `Z`-quotient: the pulled-back system is
/// trivial, so the cover contributes `H^q(V - 0) ⊗ F` with the generator
/// acting by `(deck action) ⊗ rho(T)`.
pub fn local_system_cohomology(
    n: usize,
    rep: &LocalSystemRep,
    middle_betti: usize,
) -> Result<LocalSystemCohomology, GroupCohError> {
    if n < 2 {
        return Err(GroupCohError::DimensionTooSmall(n));
    }
    let r = rep.rank;
    let id = RationalMatrix::identity(r);
    let mut pieces = vec![
        (0, invariant_ker_coker(&rep.rho_t, &id)?),
        (2 * n - 1, invariant_ker_coker(&rep.rho_t, &id)?),
    ];
    if middle_betti > 0 {
        let deck = rep.deck_on_mid.as_ref().ok_or(GroupCohError::MissingDeckAction(middle_betti))?;
        if deck.rows() != middle_betti {
            return Err(LinalgError::Mismatch(format!("deck action must be {middle_betti}x{middle_betti}")).into());
        }
        let dual = deck.inverse().expect("validated invertible").transpose();
        let big_id = RationalMatrix::identity(middle_betti * r);
        pieces.push((n - 1, invariant_ker_coker(&deck.kron(&rep.rho_t), &big_id)?));
        pieces.push((n, invariant_ker_coker(&dual.kron(&rep.rho_t), &big_id)?));
    }
    let dims = assemble(2 * n + 1, &pieces);
    let blanket: Vec<usize> = (0..=2 * n)
        .map(|k| usize::from(k == 0 || k == 1 || k == 2 * n - 1 || k == 2 * n))
        .collect();
    let warnings = if dims == blanket { Vec::new() } else { vec![LOCAL_SYSTEM_DISCREPANCY.to_string()] };
    Ok(LocalSystemCohomology { dims, warnings })
}
