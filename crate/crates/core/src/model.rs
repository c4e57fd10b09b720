//! Finite Hamiltonians `H(λ) = H0 + λ·HI` with a model-space partition.

use std::collections::BTreeSet;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ValidationError;

/// One off-diagonal coupling `(i, j, value)`, stored once and applied
/// symmetrically. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, f64)", into = "(usize, usize, f64)")]
pub struct Coupling {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

impl From<(usize, usize, f64)> for Coupling {
    fn from((i, j, value): (usize, usize, f64)) -> Self {
        Coupling { i, j, value }
    }
}

impl From<Coupling> for (usize, usize, f64) {
    fn from(c: Coupling) -> Self {
        (c.i, c.j, c.value)
    }
}

/// A real symmetric Hamiltonian split into its diagonal `H0` and its strictly
/// off-diagonal interaction `HI`, with the model (P) space given as a list of
/// basis indices. The remaining indices form the complement (Q) space.
///
/// Construct through [`MatrixModel::validate`] (or [`MatrixModel::from_json`]);
/// the numerical routines assume a validated model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixModel {
    pub dimension: usize,
    pub h0_diagonal: Vec<f64>,
    pub interaction: Vec<Coupling>,
    pub p_space: Vec<usize>,
}

const ZHENG3_JSON: &str = include_str!("../../../models/zheng3.json");

impl MatrixModel {
    /// The three-state tridiagonal toy model
    /// `[[2, λ, 0], [λ, 1.1, λ], [0, λ, 1]]` with model space `{2, 3}`.
    pub fn zheng3() -> MatrixModel {
        Self::from_json(ZHENG3_JSON).expect("bundled fixture is valid")
    }

    pub fn from_json(text: &str) -> Result<MatrixModel, ModelLoadError> {
        let raw: MatrixModel = serde_json::from_str(text).map_err(ModelLoadError::Parse)?;
        Ok(raw.validate()?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<MatrixModel, ModelLoadError> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(ModelLoadError::Io)?;
        Self::from_json(&text)
    }

    /// Checks every model invariant and returns the model in canonical form:
    /// couplings stored with `i < j`, sorted by `(i, j)`.
    pub fn validate(self) -> Result<MatrixModel, ValidationError> {
        let MatrixModel {
            dimension,
            h0_diagonal,
            interaction,
            p_space,
        } = self;

        if dimension == 0 {
            return Err(ValidationError::ZeroDimension);
        }
        if h0_diagonal.len() != dimension {
            return Err(ValidationError::DimensionMismatch {
                dimension,
                len: h0_diagonal.len(),
            });
        }
        if h0_diagonal.iter().any(|e| !e.is_finite()) {
            return Err(ValidationError::NonFiniteValue {
                field: "h0_diagonal",
            });
        }
        for a in 0..dimension {
            for b in a + 1..dimension {
                if h0_diagonal[a] == h0_diagonal[b] {
                    return Err(ValidationError::DegenerateUnperturbed {
                        first: a + 1,
                        second: b + 1,
                    });
                }
            }
        }

        let in_range = |index: usize| {
            if index == 0 || index > dimension {
                Err(ValidationError::IndexOutOfRange { index, dimension })
            } else {
                Ok(())
            }
        };

        let mut couplings = Vec::with_capacity(interaction.len());
        let mut seen = BTreeSet::new();
        for c in interaction {
            in_range(c.i)?;
            in_range(c.j)?;
            if c.i == c.j {
                return Err(ValidationError::DiagonalInteraction { index: c.i });
            }
            if !c.value.is_finite() {
                return Err(ValidationError::NonFiniteValue {
                    field: "interaction",
                });
            }
            let (i, j) = if c.i < c.j { (c.i, c.j) } else { (c.j, c.i) };
            if !seen.insert((i, j)) {
                return Err(ValidationError::DuplicateEntry { i, j });
            }
            couplings.push(Coupling {
                i,
                j,
                value: c.value,
            });
        }
        couplings.sort_by_key(|c| (c.i, c.j));

        if p_space.is_empty() {
            return Err(ValidationError::EmptyPSpace);
        }
        let mut members = BTreeSet::new();
        for &index in &p_space {
            in_range(index)?;
            if !members.insert(index) {
                return Err(ValidationError::DuplicatePSpaceIndex { index });
            }
        }

        Ok(MatrixModel {
            dimension,
            h0_diagonal,
            interaction: couplings,
            p_space,
        })
    }

    /// Basis indices outside the model space, ascending.
    pub fn q_space(&self) -> Vec<usize> {
        (1..=self.dimension)
            .filter(|i| !self.p_space.contains(i))
            .collect()
    }

    /// `H0 + λ·HI` as a dense row-major matrix (0-based).
    pub fn hamiltonian_at(&self, lambda: Complex64) -> Vec<Vec<Complex64>> {
        let n = self.dimension;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (k, &e) in self.h0_diagonal.iter().enumerate() {
            m[k][k] = Complex64::new(e, 0.0);
        }
        for c in &self.interaction {
            let v = lambda * c.value;
            m[c.i - 1][c.j - 1] = v;
            m[c.j - 1][c.i - 1] = v;
        }
        m
    }

    /// The interaction `HI` as a dense real symmetric matrix (0-based).
    pub fn interaction_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.dimension;
        let mut m = vec![vec![0.0; n]; n];
        for c in &self.interaction {
            m[c.i - 1][c.j - 1] = c.value;
            m[c.j - 1][c.i - 1] = c.value;
        }
        m
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelLoadError {
    #[error("cannot read model file: {0}")]
    Io(#[source] std::io::Error),
    #[error("ParseError: malformed model file: {0}")]
    Parse(#[source] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}
