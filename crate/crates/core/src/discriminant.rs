//! Discriminants in the energy variable and the exceptional points they
//! vanish on.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::charpoly::CharPoly;
use crate::error::{Error, Result};
use crate::lambda_poly::{determinant, LambdaPolynomial};
use crate::reconstruction::SeriesPolynomial;
use crate::roots::{all_roots_real, DEFAULT_TOLERANCE};

const MAX_POLISH_STEPS: usize = 50;
/// Relative tolerance for treating two moduli as one symmetry class.
pub const MODULUS_TIE_TOLERANCE: f64 = 1e-12;

/// A polynomial monic in the energy variable whose lower coefficients are
/// polynomials in `λ`.
pub trait SecularPolynomial {
    /// Degree in the energy variable.
    fn energy_degree(&self) -> usize;
    /// `p_1..p_d` as exact λ-polynomials.
    fn lambda_coefficients(&self) -> Vec<LambdaPolynomial>;
}

impl SecularPolynomial for CharPoly {
    fn energy_degree(&self) -> usize {
        self.degree()
    }

    fn lambda_coefficients(&self) -> Vec<LambdaPolynomial> {
        self.coefficients.clone()
    }
}

/// Truncated series are promoted to degree-K polynomials as they stand;
/// nothing produced from them is truncated again.
impl SecularPolynomial for SeriesPolynomial {
    fn energy_degree(&self) -> usize {
        self.degree()
    }

    fn lambda_coefficients(&self) -> Vec<LambdaPolynomial> {
        self.coefficients()
            .iter()
            .map(LambdaPolynomial::from)
            .collect()
    }
}

/// `Disc_E(p) = (-1)^{d(d-1)/2} Res_E(p, ∂p/∂E)` for `p` monic of degree `d`,
/// from the `(2d-1)×(2d-1)` Sylvester matrix over the λ-polynomial ring.
pub fn discriminant<P: SecularPolynomial + ?Sized>(poly: &P) -> Result<LambdaPolynomial> {
    let d = poly.energy_degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d });
    }
    let tail = poly.lambda_coefficients();

    // Highest power first.
    let mut p = Vec::with_capacity(d + 1);
    p.push(LambdaPolynomial::constant(1.0));
    p.extend(tail.iter().cloned());
    let dp: Vec<LambdaPolynomial> = (0..d).map(|k| p[k].scale((d - k) as f64)).collect();

    let size = 2 * d - 1;
    let mut sylvester = vec![vec![LambdaPolynomial::zero(); size]; size];
    for shift in 0..d - 1 {
        for (k, c) in p.iter().enumerate() {
            sylvester[shift][shift + k] = c.clone();
        }
    }
    for shift in 0..d {
        for (k, c) in dp.iter().enumerate() {
            sylvester[d - 1 + shift][shift + k] = c.clone();
        }
    }

    let resultant = determinant(&sylvester);
    let max_degree = tail.iter().map(|c| c.degree()).max().unwrap_or(0);
    debug_assert!(resultant.degree() <= (2 * d - 2) * max_degree);

    Ok(if (d * (d - 1) / 2) % 2 == 1 {
        resultant.neg()
    } else {
        resultant
    })
}

/// Where an exceptional point estimate comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EpSource {
    /// The exact characteristic polynomial.
    Exact,
    /// The effective secular polynomial reconstructed at this order.
    ReconstructionOrder(usize),
}

impl fmt::Display for EpSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpSource::Exact => f.write_str("exact"),
            EpSource::ReconstructionOrder(k) => write!(f, "K={k}"),
        }
    }
}

/// A coupling value at which two eigenvalues coalesce.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalPointEstimate {
    pub lambda_value: Complex64,
    pub modulus: f64,
    pub source: EpSource,
    /// `|disc(λ)|` at the polished root.
    pub residual: f64,
}

/// The exceptional point closest to the origin, with the size of its
/// symmetry class (`±λ`, `λ*`, ...).
#[derive(Debug, Clone, PartialEq)]
pub struct NearestExceptionalPoint {
    pub point: ExceptionalPointEstimate,
    pub multiplicity: usize,
}

/// All roots of the discriminant, Newton-polished on the discriminant and
/// sorted by modulus, then by principal argument among equal moduli.
///
/// A nonzero constant discriminant has no exceptional points.
pub fn exceptional_points(
    disc: &LambdaPolynomial,
    source: EpSource,
) -> Result<Vec<ExceptionalPointEstimate>> {
    if disc.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let set = all_roots_real(disc.coefficients(), DEFAULT_TOLERANCE)
        .map_err(|e| e.root_failure(format!("discriminant roots ({source})")))?;
    let slope = disc.derivative();

    let mut points: Vec<ExceptionalPointEstimate> = set
        .roots
        .into_iter()
        .map(|root| {
            let lambda_value = polish(disc, &slope, root);
            ExceptionalPointEstimate {
                lambda_value,
                modulus: lambda_value.norm(),
                source,
                residual: disc.evaluate(lambda_value).norm(),
            }
        })
        .collect();

    sort_by_modulus(&mut points);
    Ok(points)
}

/// Newton iteration on the discriminant, keeping the starting point if the
/// iteration does not improve the residual.
fn polish(disc: &LambdaPolynomial, slope: &LambdaPolynomial, start: Complex64) -> Complex64 {
    let mut z = start;
    for _ in 0..MAX_POLISH_STEPS {
        let d = slope.evaluate(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = disc.evaluate(z) / d;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    if z.is_finite() && disc.evaluate(z).norm() <= disc.evaluate(start).norm() {
        z
    } else {
        start
    }
}

fn sort_by_modulus(points: &mut [ExceptionalPointEstimate]) {
    points.sort_by(|a, b| a.modulus.total_cmp(&b.modulus));
    let mut start = 0;
    while start < points.len() {
        let mut end = start + 1;
        while end < points.len()
            && points[end].modulus - points[start].modulus
                <= MODULUS_TIE_TOLERANCE * points[start].modulus
        {
            end += 1;
        }
        points[start..end].sort_by(|a, b| {
            a.lambda_value
                .arg()
                .partial_cmp(&b.lambda_value.arg())
                .unwrap_or(Ordering::Equal)
        });
        start = end;
    }
}

/// The minimum-modulus point. Among points whose moduli agree within
/// [`MODULUS_TIE_TOLERANCE`] the one with argument in `[0, π)` is reported.
pub fn nearest_exceptional_point(
    points: &[ExceptionalPointEstimate],
) -> Result<NearestExceptionalPoint> {
    let smallest = points
        .iter()
        .map(|p| p.modulus)
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptyList)?;
    let mut class: Vec<&ExceptionalPointEstimate> = points
        .iter()
        .filter(|p| p.modulus - smallest <= MODULUS_TIE_TOLERANCE * smallest)
        .collect();
    class.sort_by(|a, b| {
        a.lambda_value
            .arg()
            .partial_cmp(&b.lambda_value.arg())
            .unwrap_or(Ordering::Equal)
    });
    let upper = |p: &&&ExceptionalPointEstimate| {
        let arg = p.lambda_value.arg();
        (0.0..PI).contains(&arg)
    };
    let representative = class.iter().find(upper).unwrap_or(&class[0]);
    Ok(NearestExceptionalPoint {
        point: (*representative).clone(),
        multiplicity: class.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::characteristic_polynomial;
    use crate::model::MatrixModel;
    use crate::reconstruction::reconstruct;
    use crate::rspt::p_space_series;
    use crate::series::TruncatedSeries;

    fn assert_close(p: &LambdaPolynomial, expected: &[f64], rel: f64) {
        let len = p.coefficients().len().max(expected.len());
        for k in 0..len {
            let want = expected.get(k).copied().unwrap_or(0.0);
            let got = p.coefficient(k);
            assert!(
                (got - want).abs() <= rel * want.abs().max(1e-300) + 1e-15,
                "coefficient {k}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn toy_second_order_discriminant() {
        let model = MatrixModel::zheng3();
        let p = reconstruct(&p_space_series(&model, 2).unwrap()).unwrap();
        let disc = discriminant(&p).unwrap();
        assert_close(&disc, &[0.01, 0.0, 34.0 / 9.0, 0.0, 100.0 / 81.0], 1e-12);
    }

    #[test]
    fn shifted_square_discriminant() {
        // W² - λ²
        let p = SeriesPolynomial::new(vec![
            TruncatedSeries::zero(2),
            TruncatedSeries::new(vec![0.0, 0.0, -1.0]),
        ]);
        let disc = discriminant(&p).unwrap();
        assert_close(&disc, &[0.0, 0.0, 4.0], 0.0);

        let points = exceptional_points(&disc, EpSource::ReconstructionOrder(2)).unwrap();
        assert_eq!(points.len(), 2);
        assert!(points.iter().all(|p| p.modulus == 0.0));
    }

    #[test]
    fn degree_one_is_rejected() {
        let p = SeriesPolynomial::new(vec![TruncatedSeries::zero(2)]);
        assert!(matches!(
            discriminant(&p),
            Err(Error::DegreeTooSmall { degree: 1 })
        ));
    }

    #[test]
    fn quadratic_matches_closed_form() {
        let p1 = TruncatedSeries::new(vec![0.3, -1.2, 0.7, 2.0]);
        let p2 = TruncatedSeries::new(vec![-0.4, 0.5, 1.5, -0.25]);
        let sp = SeriesPolynomial::new(vec![p1.clone(), p2.clone()]);
        let a = LambdaPolynomial::from(&p1);
        let b = LambdaPolynomial::from(&p2);
        let want = a.mul(&a).sub(&b.scale(4.0));
        assert_close(&discriminant(&sp).unwrap(), want.coefficients(), 1e-13);
    }

    #[test]
    fn exact_toy_discriminant_is_even_of_degree_six() {
        let cp = characteristic_polynomial(&MatrixModel::zheng3());
        let disc = discriminant(&cp).unwrap();
        assert_eq!(disc.degree(), 6);
        for k in (1..=5).step_by(2) {
            assert!(disc.coefficient(k).abs() <= 1e-12 * disc.max_abs_coefficient());
        }
    }

    #[test]
    fn nearest_of_exact_toy_points() {
        let cp = characteristic_polynomial(&MatrixModel::zheng3());
        let points = exceptional_points(&discriminant(&cp).unwrap(), EpSource::Exact).unwrap();
        assert_eq!(points.len(), 6);
        let nearest = nearest_exceptional_point(&points).unwrap();
        assert_eq!(nearest.multiplicity, 2);
        assert!((nearest.point.modulus - 0.05139217757).abs() < 1e-9);
        assert!(nearest.point.lambda_value.im > 0.0);
        // Sorted by modulus, the -π/2 partner first.
        assert!(points[0].lambda_value.im < 0.0);
    }

    #[test]
    fn nearest_of_single_point_and_empty() {
        let p = ExceptionalPointEstimate {
            lambda_value: Complex64::new(0.0, -2.0),
            modulus: 2.0,
            source: EpSource::Exact,
            residual: 0.0,
        };
        let nearest = nearest_exceptional_point(std::slice::from_ref(&p)).unwrap();
        assert_eq!(nearest.point, p);
        assert_eq!(nearest.multiplicity, 1);
        assert!(matches!(
            nearest_exceptional_point(&[]),
            Err(Error::EmptyList)
        ));
    }

    #[test]
    fn source_labels() {
        assert_eq!(EpSource::Exact.to_string(), "exact");
        assert_eq!(EpSource::ReconstructionOrder(4).to_string(), "K=4");
    }
}
