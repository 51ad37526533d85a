//! TOML input files.
//!
//! ```toml
//! [singularity]
//! exponents = [3, 5, 2, 2, 2, 2]   # or: poly = "x^2 + y^3 + z^5"
//! tau = 8                          # optional override
//!
//! [quotient]
//! action = [[1, 0], [0, "1/2"]]
//! finite = [[[-1, 0], [0, -1]]]
//!
//! [bundle]
//! p = 1
//! mode = "both"
//! ```
//!
//! Further tables: `[local_system] rho, deck`, `[hodge] e1, target`,
//! `[quadric] n, alpha, beta, f, variant`, `[autos] k`. Matrix entries are
//! integers or strings holding rationals.

use std::path::Path;

use num_rational::BigRational;
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub singularity: Option<SingularityIn>,
    pub quotient: Option<QuotientIn>,
    pub bundle: Option<BundleIn>,
    pub local_system: Option<LocalSystemIn>,
    pub hodge: Option<HodgeIn>,
    pub quadric: Option<QuadricIn>,
    pub autos: Option<AutosIn>,
}

/// An integer or a string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.trim().to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityIn {
    pub exponents: Option<Vec<u64>>,
    pub poly: Option<String>,
    pub tau: Option<Cell>,
    pub n: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientIn {
    pub action: Option<Vec<Vec<Cell>>>,
    pub finite: Option<Vec<Vec<Vec<Cell>>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleIn {
    pub p: Option<usize>,
    pub mode: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemIn {
    pub rho: Option<Vec<Vec<Cell>>>,
    pub deck: Option<Vec<Vec<Cell>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeIn {
    pub e1: Option<Vec<Vec<u64>>>,
    pub target: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadricIn {
    pub n: Option<usize>,
    pub alpha: Option<Cell>,
    pub beta: Option<Cell>,
    pub f: Option<String>,
    pub variant: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutosIn {
    pub k: Option<u64>,
}

pub fn load(path: &Path) -> Result<InputFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<InputFile, CliError> {
    toml::from_str(text).map_err(|e| CliError::Input(format!("TOML: {}", e.message())))
}

pub fn rational(text: &str) -> Result<BigRational, CliError> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Input(format!("not a rational number: {text:?}")))
}

/// Rows of text cells.
pub fn cells_to_rows(cells: &[Vec<Cell>]) -> Vec<Vec<String>> {
    cells.iter().map(|r| r.iter().map(Cell::text).collect()).collect()
}

/// `"1,0;0,1/2"`: rows separated by `;`, entries by `,`.
pub fn matrix_rows(text: &str) -> Vec<Vec<String>> {
    text.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(|c| c.trim().to_string()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let f = parse(
            r#"
            [singularity]
            exponents = [2, 2, 2, 2]
            tau = "1"
            [quotient]
            action = [[-1]]
            [bundle]
            p = 2
            mode = "theorem"
            "#,
        )
        .unwrap();
        assert_eq!(f.singularity.unwrap().exponents, Some(vec![2, 2, 2, 2]));
        assert_eq!(cells_to_rows(&f.quotient.unwrap().action.unwrap()), vec![vec!["-1".to_string()]]);
        assert_eq!(f.bundle.unwrap().p, Some(2));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(parse("[singularity]\nexponent = [2]"), Err(CliError::Input(_))));
    }

    #[test]
    fn matrices() {
        assert_eq!(matrix_rows("1,0; 0,1/2"), vec![vec!["1", "0"], vec!["0", "1/2"]]);
        assert_eq!(rational(" -3/6 ").unwrap().to_string(), "-1/2");
        assert!(rational("x").is_err());
    }
}
