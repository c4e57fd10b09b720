//! Oracles shared by the integration tests. Nothing here goes through the
//! library's determinant or root-finding code.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use secular::model::{Coupling, MatrixModel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A dense symmetric model with distinct diagonal entries in [-2, 2] and
/// every off-diagonal coupling drawn from [-1, 1].
pub fn random_model(rng: &mut impl Rng, dimension: usize) -> MatrixModel {
    let mut h0: Vec<f64> = Vec::with_capacity(dimension);
    while h0.len() < dimension {
        let e = rng.gen_range(-2.0..2.0);
        if h0.iter().all(|x: &f64| (x - e).abs() > 0.05) {
            h0.push(e);
        }
    }
    let mut interaction = Vec::new();
    for i in 1..=dimension {
        for j in i + 1..=dimension {
            interaction.push(Coupling {
                i,
                j,
                value: rng.gen_range(-1.0..1.0),
            });
        }
    }
    MatrixModel {
        dimension,
        h0_diagonal: h0,
        interaction,
        p_space: (1..=dimension).collect(),
    }
    .validate()
    .unwrap()
}

/// Eigenvalues of `H0 + λ·HI` for real `λ` by a dense symmetric eigensolver,
/// ascending.
pub fn dense_eigenvalues(model: &MatrixModel, lambda: f64) -> Vec<f64> {
    let n = model.dimension;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (k, &e) in model.h0_diagonal.iter().enumerate() {
        m[(k, k)] = e;
    }
    for c in &model.interaction {
        m[(c.i - 1, c.j - 1)] = lambda * c.value;
        m[(c.j - 1, c.i - 1)] = lambda * c.value;
    }
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// The exact toy-model eigenvalues from the closed-form cubic
/// `E³ - 4.1E² + (5.3 - 2λ²)E + (3λ² - 2.2)` via the companion matrix.
pub fn toy_cubic_roots(lambda: Complex64) -> Vec<Complex64> {
    let l2 = lambda * lambda;
    let ascending = [
        l2 * 3.0 - 2.2,
        -l2 * 2.0 + 5.3,
        Complex64::new(-4.1, 0.0),
        Complex64::new(1.0, 0.0),
    ];
    companion_roots(&ascending)
}

/// Roots of a polynomial (ascending coefficients) as eigenvalues of its
/// companion matrix, sorted by real then imaginary part.
pub fn companion_roots(ascending: &[Complex64]) -> Vec<Complex64> {
    let d = ascending.len() - 1;
    let lead = ascending[d];
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -ascending[i] / lead;
    }
    let mut roots: Vec<Complex64> = m
        .schur()
        .eigenvalues()
        .expect("complex Schur form always has eigenvalues")
        .iter()
        .copied()
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

pub fn min_pairwise_gap(values: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in 0..i {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}
