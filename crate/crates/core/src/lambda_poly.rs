//! Exact (untruncated) polynomials in the coupling `λ`, and determinants of
//! small matrices over that ring.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::series::{render_terms, TruncatedSeries};

/// Absolute tolerance below which a leading coefficient is treated as zero.
pub const STRIP_TOLERANCE: f64 = 1e-12;

/// `c_0 + c_1 λ + ... + c_D λ^D` with `c_D ≠ 0`, or `[0]` for the zero
/// polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaPolynomial {
    coefficients: Vec<f64>,
}

impl LambdaPolynomial {
    /// Builds a polynomial, dropping leading coefficients with magnitude
    /// `<= STRIP_TOLERANCE`.
    pub fn new(mut coefficients: Vec<f64>) -> Self {
        while coefficients.len() > 1 && coefficients.last().unwrap().abs() <= STRIP_TOLERANCE {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        if coefficients.len() == 1 && coefficients[0].abs() <= STRIP_TOLERANCE {
            coefficients[0] = 0.0;
        }
        LambdaPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        LambdaPolynomial {
            coefficients: vec![0.0],
        }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(vec![value])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> f64 {
        self.coefficients.get(power).copied().unwrap_or(0.0)
    }

    /// Degree in `λ`; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficients[0] == 0.0
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        Self::new(
            (0..len)
                .map(|k| self.coefficient(k) + other.coefficient(k))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        Self::new(
            (0..len)
                .map(|k| self.coefficient(k) - other.coefficient(k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0.0; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    /// `p(-λ)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { *c })
                .collect(),
        )
    }

    pub fn evaluate(&self, lambda: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * lambda + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn render(&self, variable: &str) -> String {
        render_terms(&self.coefficients, variable)
    }
}

impl From<&TruncatedSeries> for LambdaPolynomial {
    fn from(series: &TruncatedSeries) -> Self {
        LambdaPolynomial::new(series.coefficients().to_vec())
    }
}

impl fmt::Display for LambdaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Determinant of a square matrix of λ-polynomials by cofactor expansion
/// along successive rows. Minors are memoized on their column set, so the
/// cost is `O(n·2^n)` ring operations instead of `O(n!)`.
///
/// Panics if the matrix is not square or has more than 63 columns.
pub fn determinant(matrix: &[Vec<LambdaPolynomial>]) -> LambdaPolynomial {
    let n = matrix.len();
    assert!(
        matrix.iter().all(|row| row.len() == n),
        "matrix must be square"
    );
    assert!(n < 64, "cofactor expansion is limited to 63 columns");
    if n == 0 {
        return LambdaPolynomial::constant(1.0);
    }
    let mut memo = HashMap::new();
    minor(matrix, 0, (1u64 << n) - 1, &mut memo)
}

fn minor(
    matrix: &[Vec<LambdaPolynomial>],
    row: usize,
    columns: u64,
    memo: &mut HashMap<u64, LambdaPolynomial>,
) -> LambdaPolynomial {
    if row == matrix.len() {
        return LambdaPolynomial::constant(1.0);
    }
    if let Some(cached) = memo.get(&columns) {
        return cached.clone();
    }
    let mut total = LambdaPolynomial::zero();
    let mut position = 0;
    for col in 0..matrix.len() {
        if columns & (1 << col) == 0 {
            continue;
        }
        let entry = &matrix[row][col];
        if !entry.is_zero() {
            let sub = minor(matrix, row + 1, columns & !(1 << col), memo);
            let term = entry.mul(&sub);
            total = if position % 2 == 0 {
                total.add(&term)
            } else {
                total.sub(&term)
            };
        }
        position += 1;
    }
    memo.insert(columns, total.clone());
    total
}
