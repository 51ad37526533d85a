//! Exact invariants of weighted-homogeneous isolated singularities and of the
//! homological Hopf manifolds obtained as quotients of their punctured cones.
//!
//! The crate is organized bottom-up:
//!
//! - [`poly`]: polynomial parsing, weighted homogeneity and Brieskorn-Pham shape.
//! - [`milnor`]: Milnor algebra of `z0^a0 + ... + zn^an`, its monomial basis and
//!   the weights of the scaling automorphism on it.
//! - [`link`]: monodromy divisor of the link, homology-sphere tests and a
//!   brute-force eigenvalue oracle.
//! - [`groupcoh`]: cohomology of the deck group (central `Z` plus a finite
//!   quotient), Betti numbers of quotients and local-system cohomology.
//! - [`hopfcoh`]: dimension tables for `H^q(Omega^p(E))` on Hopf and
//!   Brieskorn-van de Ven manifolds, canonical divisors, Picard group and the
//!   Hodge-de Rham degeneration checker.
//! - [`autos`]: automorphism-group finiteness and the quadric automorphism family.
//!
//! All arithmetic is exact (big integers, rationals and Gaussian rationals)
//! except the explicitly numeric probes ([`link::brute_force_oracle`]'s
//! product estimate and [`autos::orbit_probe`]).
//!
//! Data-parallel inner loops run on rayon when the `parallel` feature is on
//! (the default). Every such loop takes an [`Exec`] so callers can force the
//! sequential path; both paths return identical results.

pub mod autos;
pub mod exec;
pub mod gauss;
pub mod groupcoh;
pub mod hopfcoh;
pub mod link;
pub mod linalg;
pub mod milnor;
pub mod poly;

pub use exec::Exec;
pub use gauss::Gaussian;
pub use linalg::RationalMatrix;
pub use poly::{ExponentVector, WeightedPoly};
