//! The JSON problem description.

use serde::{Deserialize, Serialize};
use toric_tor::{CharacteristicMatrix, Coefficients, Fan, Integer, ProductMode, SimplicialComplex};

use crate::CliError;

/// Accepts `"Z"`, `"Q"` and `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientsJson {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl CoefficientsJson {
    pub fn to_coefficients(&self) -> Result<Coefficients, CliError> {
        let c = match self {
            CoefficientsJson::Name(s) if s == "Z" => Coefficients::Integers,
            CoefficientsJson::Name(s) if s == "Q" => Coefficients::Rationals,
            CoefficientsJson::Name(s) => return Err(CliError::Input(format!("unknown coefficients `{s}`"))),
            CoefficientsJson::Prime { fp } => Coefficients::PrimeField(*fp),
        };
        Ok(c.validate()?)
    }

    pub fn from_coefficients(c: Coefficients) -> Self {
        match c {
            Coefficients::Integers => CoefficientsJson::Name("Z".into()),
            Coefficients::Rationals => CoefficientsJson::Name("Q".into()),
            Coefficients::PrimeField(p) => CoefficientsJson::Prime { fp: p },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    Twisted,
    Canonical,
}

impl From<ModeSpec> for ProductMode {
    fn from(m: ModeSpec) -> Self {
        match m {
            ModeSpec::Twisted => ProductMode::Twisted,
            ModeSpec::Canonical => ProductMode::Canonical,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    vertices: Option<Vec<String>>,
    facets: Option<Vec<Vec<String>>>,
    matrix: Option<Vec<Vec<i64>>>,
    rays: Option<Vec<Vec<i64>>>,
    cones: Option<Vec<Vec<usize>>>,
    dim: Option<usize>,
    coefficients: Option<CoefficientsJson>,
    max_total_degree: Option<usize>,
    mode: Option<ModeSpec>,
}

/// Where the complex and matrix came from.
#[derive(Clone, Debug)]
pub enum Geometry {
    Complex,
    /// A fan; `ghosts` columns were added to complete the ray lattice.
    Fan { fan: Fan, ghosts: usize },
}

/// A validated problem: complex, characteristic matrix and options.
#[derive(Clone, Debug)]
pub struct Problem {
    pub complex: SimplicialComplex,
    pub matrix: CharacteristicMatrix,
    pub geometry: Geometry,
    pub coefficients: Coefficients,
    pub max_total_degree: Option<usize>,
    pub mode: ModeSpec,
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawProblem = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        let coefficients = match raw.coefficients {
            None => Coefficients::Integers,
            Some(c) => c.to_coefficients()?,
        };
        let mode = raw.mode.unwrap_or(ModeSpec::Twisted);
        let (complex, matrix, geometry) = match (raw.vertices, raw.facets, raw.matrix, raw.rays, raw.cones) {
            (Some(vertices), Some(facets), Some(matrix), None, None) => {
                let complex = SimplicialComplex::from_facets(&vertices, &facets)?;
                if matrix.iter().any(|row| row.len() != vertices.len()) {
                    return Err(CliError::Input(format!("every matrix row needs {} entries", vertices.len())));
                }
                let matrix = CharacteristicMatrix::from_i64_rows(vertices.len(), &matrix)?;
                (complex, matrix, Geometry::Complex)
            }
            (None, None, None, Some(rays), Some(cones)) => {
                let dim = match (raw.dim, rays.first()) {
                    (Some(d), _) => d,
                    (None, Some(r)) => r.len(),
                    (None, None) => return Err(CliError::Input("a fan without rays needs `dim`".into())),
                };
                let rays: Vec<Vec<Integer>> = rays.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect();
                let fan = Fan::new(dim, rays, &cones)?.complete_ghosts();
                let ghosts = fan.ghosts().len();
                (fan.complex().clone(), fan.characteristic_matrix(), Geometry::Fan { fan, ghosts })
            }
            _ => {
                return Err(CliError::Input(
                    "expected either `vertices`, `facets` and `matrix`, or `rays` and `cones`".into(),
                ))
            }
        };
        Ok(Problem { complex, matrix, geometry, coefficients, max_total_degree: raw.max_total_degree, mode })
    }

    /// Rejects canonical mode when 2 is not invertible.
    pub fn check_mode(&self) -> Result<(), CliError> {
        if self.mode == ModeSpec::Canonical && !self.coefficients.two_is_invertible() {
            return Err(toric_tor::Error::CanonicalModeNeedsHalf(self.coefficients).into());
        }
        Ok(())
    }

    /// The truncation degree `D`.
    pub fn degree(&self) -> Result<usize, CliError> {
        self.max_total_degree
            .ok_or_else(|| CliError::Input("`max_total_degree` (or --degree) is required".into()))
    }
}
