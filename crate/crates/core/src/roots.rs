//! All complex roots of a univariate polynomial by Aberth–Ehrlich iteration.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-13;
pub const MAX_ITERATIONS: usize = 500;
const POLISH_STEPS: usize = 3;
/// Offset of the starting angles, in radians; keeps the initial circle off
/// any symmetry axis of real or even polynomials.
const ANGLE_OFFSET: f64 = 0.618_033_988_749_894_8;

/// Roots with multiplicity, plus a residual summary.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `max |p(z)| / (|a_d| + |p'(z)|)` over the returned roots.
    pub max_residual: f64,
    pub iterations: usize,
}

/// Finds every root of `Σ coefficients[k]·x^k`.
///
/// Leading zero coefficients are dropped first; roots at the origin (exact
/// zero low-order coefficients) are returned exactly. The remaining roots
/// start on a circle whose radius is the Cauchy bound and are refined until
/// each Aberth correction is below `tol·(1 + |z|)` or `p(z)` is at rounding
/// level. Every root then gets up to three Newton polishing steps.
///
/// A constant polynomial has no roots. Failure to converge within
/// [`MAX_ITERATIONS`] returns [`Error::NonConvergence`] holding the best
/// iterate.
pub fn all_roots(coefficients: &[Complex64], tol: f64) -> Result<RootSet> {
    let zero = Complex64::new(0.0, 0.0);
    let top = coefficients
        .iter()
        .rposition(|c| *c != zero)
        .ok_or(Error::ZeroPolynomial)?;
    let bottom = coefficients.iter().position(|c| *c != zero).unwrap();

    let poly = &coefficients[bottom..=top];
    let mut roots = vec![zero; bottom];
    let degree = poly.len() - 1;

    let mut iterations = 0;
    let mut converged = true;
    match degree {
        0 => {}
        1 => roots.push(-poly[0] / poly[1]),
        _ => {
            let (found, iters, ok) = aberth(poly, tol);
            roots.extend(found);
            iterations = iters;
            converged = ok;
        }
    }

    let full = &coefficients[..=top];
    for z in roots.iter_mut().skip(bottom) {
        polish(full, z);
    }

    let lead = full[top].norm();
    let max_residual = roots
        .iter()
        .map(|&z| {
            let (p, dp) = eval_with_derivative(full, z);
            p.norm() / (lead + dp.norm())
        })
        .fold(0.0, f64::max);

    let set = RootSet {
        roots,
        max_residual,
        iterations,
    };
    if converged && max_residual.is_finite() {
        Ok(set)
    } else {
        Err(Error::NonConvergence(Box::new(set)))
    }
}

/// Same as [`all_roots`] for real coefficients.
pub fn all_roots_real(coefficients: &[f64], tol: f64) -> Result<RootSet> {
    let complex: Vec<Complex64> = coefficients
        .iter()
        .map(|&c| Complex64::new(c, 0.0))
        .collect();
    all_roots(&complex, tol)
}

fn eval_with_derivative(poly: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in poly.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |a_k| |z|^k`, the scale of rounding error in evaluating `p(z)`.
fn evaluation_scale(poly: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    poly.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

fn aberth(poly: &[Complex64], tol: f64) -> (Vec<Complex64>, usize, bool) {
    let degree = poly.len() - 1;
    let lead = poly[degree];
    let radius = 1.0
        + poly[..degree]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);

    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / degree as f64 + ANGLE_OFFSET))
        .collect();
    let mut done = vec![false; degree];

    for iteration in 1..=MAX_ITERATIONS {
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(poly, z[i]);
            if p.norm() <= 8.0 * f64::EPSILON * evaluation_scale(poly, z[i]) {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let denom = dp / p - repulsion;
            if denom.norm() == 0.0 || !denom.is_finite() {
                continue;
            }
            let step = denom.inv();
            z[i] -= step;
            if step.norm() < tol * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return (z, iteration, true);
        }
        if z.iter().any(|r| !r.is_finite()) {
            return (z, iteration, false);
        }
    }
    (z, MAX_ITERATIONS, false)
}

/// Newton steps that are kept only while they reduce `|p|`.
fn polish(poly: &[Complex64], z: &mut Complex64) {
    for _ in 0..POLISH_STEPS {
        let (p, dp) = eval_with_derivative(poly, *z);
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            return;
        }
        let candidate = *z - p / dp;
        let (pc, _) = eval_with_derivative(poly, candidate);
        if pc.norm().partial_cmp(&p.norm()) != Some(std::cmp::Ordering::Less) {
            return;
        }
        *z = candidate;
    }
}

/// Roots of the monic polynomial `x^d + p_1 x^{d-1} + ... + p_d`, given
/// `[p_1, ..., p_d]`, sorted with [`sort_roots`].
pub fn monic_roots(tail: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut ascending: Vec<Complex64> = tail.iter().rev().copied().collect();
    ascending.push(Complex64::new(1.0, 0.0));
    let mut roots = all_roots(&ascending, DEFAULT_TOLERANCE)?.roots;
    sort_roots(&mut roots);
    Ok(roots)
}

/// Sorts eigenvalue-like roots by real part, breaking near-ties (within
/// `1e-11·(1 + |Re|)`, such as conjugate pairs) by imaginary part.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut start = 0;
    while start < roots.len() {
        let mut end = start + 1;
        while end < roots.len()
            && roots[end].re - roots[end - 1].re <= 1e-11 * (1.0 + roots[end - 1].re.abs())
        {
            end += 1;
        }
        roots[start..end].sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal));
        start = end;
    }
}
