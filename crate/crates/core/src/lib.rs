//! Resummation of Rayleigh–Schrödinger eigenvalue series through the
//! characteristic polynomial of an implicit effective Hamiltonian.
//!
//! The pipeline is:
//!
//! 1. [`model::MatrixModel`] describes a finite Hamiltonian `H0 + λ·HI` and a
//!    model space of basis states.
//! 2. [`rspt`] expands each model-space eigenvalue as a power series in `λ`
//!    truncated at order `K`.
//! 3. [`reconstruction`] multiplies the factors `(W - E_n(λ))` with every
//!    power of `λ` above `K` discarded, giving a monic polynomial in `W`.
//! 4. [`discriminant`] locates the values of `λ` at which two roots of that
//!    polynomial coalesce (exceptional points).
//!
//! [`charpoly`] computes the exact characteristic polynomial of the full
//! matrix, which serves as the reference for everything above.

pub mod charpoly;
pub mod cli;
pub mod discriminant;
pub mod error;
pub mod lambda_poly;
pub mod model;
pub mod reconstruction;
pub mod roots;
pub mod rspt;
pub mod series;

pub use charpoly::{characteristic_polynomial, exact_eigenvalues_at, CharPoly};
pub use discriminant::{
    discriminant, exceptional_points, nearest_exceptional_point, EpSource,
    ExceptionalPointEstimate, NearestExceptionalPoint, SecularPolynomial,
};
pub use error::{Error, Result, ValidationError};
pub use lambda_poly::LambdaPolynomial;
pub use model::MatrixModel;
pub use num_complex::Complex64;
pub use reconstruction::{eigenvalues_at, reconstruct, SeriesPolynomial};
pub use roots::{all_roots, RootSet};
pub use rspt::{p_space_series, perturbation_series, StateSeries};
pub use series::TruncatedSeries;
