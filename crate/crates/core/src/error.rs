use thiserror::Error;

use crate::roots::RootSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A violated [`MatrixModel`](crate::model::MatrixModel) invariant.
///
/// Indices are reported 1-based, as in the model file.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("ZeroDimension: the model must have at least one basis state")]
    ZeroDimension,
    #[error("DimensionMismatch: dimension is {dimension} but h0_diagonal has {len} entries")]
    DimensionMismatch { dimension: usize, len: usize },
    #[error("NonFiniteValue: {field} contains a non-finite number")]
    NonFiniteValue { field: &'static str },
    #[error("DegenerateUnperturbed: h0_diagonal entries {first} and {second} are equal")]
    DegenerateUnperturbed { first: usize, second: usize },
    #[error("DiagonalInteraction: interaction entry ({index}, {index}) lies on the diagonal")]
    DiagonalInteraction { index: usize },
    #[error("IndexOutOfRange: index {index} is outside 1..={dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("DuplicateEntry: interaction pair ({i}, {j}) appears more than once")]
    DuplicateEntry { i: usize, j: usize },
    #[error("EmptyPSpace: p_space must list at least one basis state")]
    EmptyPSpace,
    #[error("DuplicatePSpaceIndex: basis state {index} appears more than once in p_space")]
    DuplicatePSpaceIndex { index: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("OrderMismatch: truncation orders {left} and {right} differ")]
    OrderMismatch { left: usize, right: usize },
    #[error("EmptyList: at least one element is required")]
    EmptyList,
    #[error("StateIndexOutOfRange: state {index} is outside 1..={dimension}")]
    StateIndexOutOfRange { index: usize, dimension: usize },
    #[error("ZeroPolynomial: the polynomial has no nonzero coefficient")]
    ZeroPolynomial,
    #[error("NonConvergence: root iteration stopped after {} iterations (max residual {:e})", .0.iterations, .0.max_residual)]
    NonConvergence(Box<RootSet>),
    #[error("RootFindingFailure: {context} (max residual {max_residual:e}, best roots {best:?})")]
    RootFindingFailure {
        context: String,
        max_residual: f64,
        best: Vec<num_complex::Complex64>,
    },
    #[error(
        "DegreeTooSmall: the discriminant needs degree >= 2 in the energy variable, got {degree}"
    )]
    DegreeTooSmall { degree: usize },
}

impl Error {
    /// Wraps a root-finder non-convergence with caller context.
    pub(crate) fn root_failure(self, context: impl Into<String>) -> Error {
        match self {
            Error::NonConvergence(set) => Error::RootFindingFailure {
                context: context.into(),
                max_residual: set.max_residual,
                best: set.roots,
            },
            other => other,
        }
    }
}
