//! JSON report schema `hopfcalc/1`.
//!
//! Every section is always present, `null` when the command did not compute
//! it, so a parsed report re-serializes byte for byte. Big integers and exact
//! rationals are decimal strings.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "hopfcalc/1";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub input: InputEcho,
    pub milnor: Option<MilnorSection>,
    pub link: Option<LinkSection>,
    pub quotient: Option<QuotientSection>,
    pub local_system: Option<LocalSystemSection>,
    pub cohomology: Option<CohomologySection>,
    pub canonical: Option<CanonicalSection>,
    pub autos: Option<AutosSection>,
    pub quadric: Option<QuadricSection>,
    pub hodge: Option<HodgeSection>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: InputEcho) -> Self {
        Self { schema: SCHEMA.to_string(), command: command.to_string(), input, ..Self::default() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    pub input_file: Option<String>,
    pub exponents: Option<Vec<u64>>,
    pub poly: Option<String>,
    pub n: Option<usize>,
    pub tau_override: Option<String>,
    pub p: Option<usize>,
    pub mode: Option<String>,
    pub action: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MilnorSection {
    pub tau: String,
    /// `exponents` or `override`
    pub tau_source: String,
    pub basis_bounds: Option<Vec<u64>>,
    pub weights: Option<Vec<String>>,
    pub degree: Option<String>,
    pub fixed_subspace_dim: Option<String>,
    /// Basis size recounted by enumeration (`--oracle`).
    pub enumerated_tau: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntry {
    pub m: String,
    pub s: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSection {
    pub link_dimension: usize,
    pub divisor: Vec<DivisorEntry>,
    pub divisor_text: String,
    pub degree: String,
    pub eig1_multiplicity: String,
    pub middle_betti: String,
    pub delta_at_one: Option<String>,
    /// `[base, exponent]` over pairwise coprime bases.
    pub delta_at_one_factors: Option<Vec<[String; 2]>>,
    pub q_sphere: bool,
    pub z_sphere: bool,
    /// `none` or `low-dimension`
    pub sphere_caveat: String,
    pub oracle: Option<OracleSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub tuples: String,
    pub multiplicity: String,
    pub delta_at_one_estimate: Option<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSection {
    pub n: usize,
    pub middle_betti: usize,
    pub betti: Vec<usize>,
    pub is_homological_hopf: bool,
    /// `default-identity` or `user-supplied`
    pub action_provenance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemSection {
    pub n: usize,
    pub rank: usize,
    pub middle_betti: usize,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologySection {
    pub n: usize,
    pub tau: Option<String>,
    pub tables: Vec<FormDegreeTable>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDegreeTable {
    pub p: usize,
    /// `H^q(V - 0, Omega^p)`, when `tau` is known.
    pub cover: Option<Vec<String>>,
    pub hopf: Vec<String>,
    pub bvdv_theorem: Option<BvdvRow>,
    pub bvdv_derivation: Option<BvdvRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BvdvRow {
    pub row: Vec<String>,
    pub w_center: i64,
    /// `[degree, rank]` before clipping to `0..=n`.
    pub w_part: Vec<[i64; 2]>,
    pub clipped_mass: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalSection {
    pub hopf: Vec<i64>,
    pub bvdv: Option<Vec<i64>>,
    pub bvdv_alternative: Option<Vec<i64>>,
    pub b2: Option<usize>,
    pub picard: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutosSection {
    pub k: u64,
    pub sum_inverse_exponents: String,
    pub finite_automorphism_group: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadricSection {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    /// Coefficients of `f`, constant term first.
    pub f: Vec<String>,
    pub variants: Vec<QuadricVariantReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadricVariantReport {
    /// `printed` or `corrected`
    pub variant: String,
    pub map: Vec<String>,
    pub preserves_quadric: bool,
    pub multiplier: String,
    pub residual: Option<String>,
    /// `eigenvalues` or `charpoly`
    pub spectrum_kind: String,
    pub spectrum: Vec<String>,
    pub contracts: bool,
    pub probe: Option<ProbeSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSection {
    pub label: String,
    pub iterations: usize,
    pub epsilon: String,
    pub samples: Vec<ProbeSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSample {
    pub point: Vec<String>,
    /// `contracting`, `non-contracting`, `near-fixed-point` or `rejected-origin`
    pub verdict: String,
    pub steps_to_epsilon: Option<usize>,
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeSection {
    pub e1: Vec<Vec<u64>>,
    pub target: Vec<u64>,
    pub feasible: bool,
    pub ranks: Option<Vec<Vec<u64>>>,
    pub e2: Option<Vec<Vec<u64>>>,
    pub verified: bool,
}
