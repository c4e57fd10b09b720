//! The exact characteristic polynomial `det(E·I - H(λ))` with coefficients
//! kept as exact polynomials in `λ`.

use num_complex::Complex64;

use crate::error::Result;
use crate::lambda_poly::{determinant, LambdaPolynomial};
use crate::model::MatrixModel;
use crate::roots::monic_roots;

/// `E^n + p_1(λ) E^{n-1} + ... + p_n(λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    /// `p_1..p_n`; the leading `E^n` coefficient is implicitly 1.
    pub coefficients: Vec<LambdaPolynomial>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// `p_1(λ)..p_n(λ)` at a given coupling.
    pub fn evaluate_coefficients(&self, lambda: Complex64) -> Vec<Complex64> {
        self.coefficients
            .iter()
            .map(|p| p.evaluate(lambda))
            .collect()
    }
}

/// The Hamiltonian `H0 + λ·HI` with entries as λ-polynomials.
fn lambda_matrix(model: &MatrixModel) -> Vec<Vec<LambdaPolynomial>> {
    let n = model.dimension;
    let mut m = vec![vec![LambdaPolynomial::zero(); n]; n];
    for (k, &e) in model.h0_diagonal.iter().enumerate() {
        m[k][k] = LambdaPolynomial::constant(e);
    }
    for c in &model.interaction {
        let entry = LambdaPolynomial::new(vec![0.0, c.value]);
        m[c.i - 1][c.j - 1] = entry.clone();
        m[c.j - 1][c.i - 1] = entry;
    }
    m
}

/// Faddeev–LeVerrier recursion over the λ-polynomial ring:
///
/// ```text
/// M_1 = I,            p_1 = -tr(H)
/// M_k = H M_{k-1} + p_{k-1} I,   p_k = -tr(H M_k) / k
/// ```
///
/// Only division by the integer `k` is needed, so the ring stays closed.
pub fn characteristic_polynomial(model: &MatrixModel) -> CharPoly {
    let h = lambda_matrix(model);
    let n = model.dimension;

    let mut m: Vec<Vec<LambdaPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LambdaPolynomial::constant(1.0)
                    } else {
                        LambdaPolynomial::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut coefficients = Vec::with_capacity(n);

    for k in 1..=n {
        if k > 1 {
            let previous = &coefficients[k - 2];
            let mut next = matmul(&h, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = row[i].add(previous);
            }
            m = next;
        }
        let hm = matmul(&h, &m);
        let trace = (0..n).fold(LambdaPolynomial::zero(), |acc, i| acc.add(&hm[i][i]));
        coefficients.push(trace.scale(-1.0 / k as f64));
    }

    CharPoly { coefficients }
}

/// Independent route: `p_j = (-1)^j Σ` (all `j×j` principal minors of `H`),
/// each minor expanded by cofactors. Exponential in the dimension; meant as
/// a cross-check for small models.
pub fn characteristic_polynomial_cofactor(model: &MatrixModel) -> CharPoly {
    let h = lambda_matrix(model);
    let n = model.dimension;
    let mut coefficients = vec![LambdaPolynomial::zero(); n];
    for subset in 1u64..(1u64 << n) {
        let indices: Vec<usize> = (0..n).filter(|&i| subset & (1 << i) != 0).collect();
        let minor: Vec<Vec<LambdaPolynomial>> = indices
            .iter()
            .map(|&r| indices.iter().map(|&c| h[r][c].clone()).collect())
            .collect();
        let j = indices.len();
        coefficients[j - 1] = coefficients[j - 1].add(&determinant(&minor));
    }
    for (j, p) in coefficients.iter_mut().enumerate() {
        if j % 2 == 0 {
            *p = p.neg();
        }
    }
    CharPoly { coefficients }
}

fn matmul(a: &[Vec<LambdaPolynomial>], b: &[Vec<LambdaPolynomial>]) -> Vec<Vec<LambdaPolynomial>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero())
                        .fold(LambdaPolynomial::zero(), |acc, k| {
                            acc.add(&a[i][k].mul(&b[k][j]))
                        })
                })
                .collect()
        })
        .collect()
}

/// All `n` eigenvalues at `λ`, sorted by real part then imaginary part.
pub fn exact_eigenvalues_at(cp: &CharPoly, lambda: Complex64) -> Result<Vec<Complex64>> {
    monic_roots(&cp.evaluate_coefficients(lambda))
        .map_err(|e| e.root_failure(format!("exact eigenvalues at lambda = {lambda}")))
}
