//! The order-K effective secular polynomial `{∏_n (W - E_n(λ))}^[K]`.
//!
//! Expanding the product of model-space factors, with every power of `λ`
//! above `K` discarded, gives the characteristic polynomial of an effective
//! Hamiltonian on the model space without ever building that operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::monic_roots;
use crate::series::TruncatedSeries;

/// `W^N + p_1(λ) W^{N-1} + ... + p_N(λ)` with every `p_j` truncated at
/// order `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPolynomial {
    coefficients: Vec<TruncatedSeries>,
}

impl SeriesPolynomial {
    /// Panics if `coefficients` is empty or the orders disagree.
    pub fn new(coefficients: Vec<TruncatedSeries>) -> Self {
        assert!(!coefficients.is_empty(), "degree must be at least 1");
        let order = coefficients[0].order();
        assert!(
            coefficients.iter().all(|c| c.order() == order),
            "all coefficients must share one truncation order"
        );
        SeriesPolynomial { coefficients }
    }

    /// Degree in `W` (number of model-space states).
    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// Shared truncation order `K`.
    pub fn order(&self) -> usize {
        self.coefficients[0].order()
    }

    /// `p_1..p_N`.
    pub fn coefficients(&self) -> &[TruncatedSeries] {
        &self.coefficients
    }

    pub fn evaluate_coefficients(&self, lambda: Complex64) -> Vec<Complex64> {
        self.coefficients
            .iter()
            .map(|p| p.evaluate(lambda))
            .collect()
    }

    pub fn to_json(&self) -> SeriesPolynomialJson {
        SeriesPolynomialJson {
            degree: self.degree(),
            order: self.order(),
            coefficients: self
                .coefficients
                .iter()
                .map(|p| p.coefficients().iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }
}

/// Serialized form `{degree, order, coefficients: [[c0..cK], ...]}` with
/// every number written as its shortest round-trip decimal string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolynomialJson {
    pub degree: usize,
    pub order: usize,
    pub coefficients: Vec<Vec<String>>,
}

impl TryFrom<SeriesPolynomialJson> for SeriesPolynomial {
    type Error = String;

    fn try_from(json: SeriesPolynomialJson) -> std::result::Result<Self, String> {
        if json.coefficients.len() != json.degree || json.degree == 0 {
            return Err(format!(
                "expected {} coefficient series, found {}",
                json.degree,
                json.coefficients.len()
            ));
        }
        let mut series = Vec::with_capacity(json.degree);
        for row in json.coefficients {
            if row.len() != json.order + 1 {
                return Err(format!(
                    "expected {} coefficients per series, found {}",
                    json.order + 1,
                    row.len()
                ));
            }
            let values = row
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| format!("{s:?}: {e}")))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            if values.iter().any(|v| !v.is_finite()) {
                return Err("non-finite coefficient".into());
            }
            series.push(TruncatedSeries::new(values));
        }
        Ok(SeriesPolynomial::new(series))
    }
}

/// Multiplies out `∏ (W - E_n(λ))` with truncation at every step.
///
/// The factors are put in a canonical order first, so any permutation of the
/// input gives bitwise identical coefficients.
pub fn reconstruct<S: AsRef<TruncatedSeries>>(series_list: &[S]) -> Result<SeriesPolynomial> {
    let first = series_list.first().ok_or(Error::EmptyList)?.as_ref();
    let order = first.order();
    for s in series_list {
        if s.as_ref().order() != order {
            return Err(Error::OrderMismatch {
                left: order,
                right: s.as_ref().order(),
            });
        }
    }

    let mut factors: Vec<&TruncatedSeries> = series_list.iter().map(|s| s.as_ref()).collect();
    factors.sort_by(|a, b| {
        a.coefficients()
            .iter()
            .zip(b.coefficients())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    // ascending[j] multiplies W^j; starts as the constant polynomial 1.
    let mut ascending = vec![TruncatedSeries::constant(1.0, order)];
    for energy in factors {
        let mut next = vec![TruncatedSeries::zero(order); ascending.len() + 1];
        for (j, c) in ascending.iter().enumerate() {
            // (W - E)·c W^j = c W^{j+1} - (E·c) W^j
            next[j + 1] = next[j + 1].add(c)?;
            next[j] = next[j].sub(&energy.mul_truncated(c)?)?;
        }
        ascending = next;
    }

    ascending.pop();
    ascending.reverse();
    Ok(SeriesPolynomial::new(ascending))
}

/// Roots in `W` of the reconstructed polynomial at `λ`, sorted by real part
/// then imaginary part.
pub fn eigenvalues_at(poly: &SeriesPolynomial, lambda: Complex64) -> Result<Vec<Complex64>> {
    monic_roots(&poly.evaluate_coefficients(lambda)).map_err(|e| {
        e.root_failure(format!(
            "order-{} effective eigenvalues at lambda = {lambda}",
            poly.order()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MatrixModel;
    use crate::rspt::p_space_series;
    use proptest::prelude::*;

    fn assert_series(s: &TruncatedSeries, expected: &[f64], tol: f64) {
        assert_eq!(s.order() + 1, expected.len());
        for (got, want) in s.coefficients().iter().zip(expected) {
            assert!((got - want).abs() <= tol, "{got} vs {want}");
        }
    }

    #[test]
    fn toy_second_order_reconstruction() {
        let model = MatrixModel::zheng3();
        let poly = reconstruct(&p_space_series(&model, 2).unwrap()).unwrap();
        assert_eq!(poly.degree(), 2);
        assert_eq!(poly.order(), 2);
        assert_series(&poly.coefficients()[0], &[-2.1, 0.0, 10.0 / 9.0], 1e-14);
        assert_series(&poly.coefficients()[1], &[1.1, 0.0, -19.0 / 9.0], 1e-14);
    }

    #[test]
    fn single_factor() {
        let poly = reconstruct(&[TruncatedSeries::new(vec![1.0, 0.0, -10.0])]).unwrap();
        assert_eq!(poly.degree(), 1);
        assert_series(&poly.coefficients()[0], &[-1.0, 0.0, 10.0], 0.0);
    }

    #[test]
    fn full_space_reconstruction_is_the_exact_cubic() {
        let mut model = MatrixModel::zheng3();
        model.p_space = vec![1, 2, 3];
        let poly = reconstruct(&p_space_series(&model, 2).unwrap()).unwrap();
        assert_series(&poly.coefficients()[0], &[-4.1, 0.0, 0.0], 1e-12);
        assert_series(&poly.coefficients()[1], &[5.3, 0.0, -2.0], 1e-12);
        assert_series(&poly.coefficients()[2], &[-2.2, 0.0, 3.0], 1e-12);
    }

    #[test]
    fn errors() {
        let empty: [TruncatedSeries; 0] = [];
        assert!(matches!(reconstruct(&empty), Err(Error::EmptyList)));
        let mixed = [TruncatedSeries::zero(2), TruncatedSeries::zero(3)];
        assert!(matches!(
            reconstruct(&mixed),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn eigenvalues_at_zero_coupling() {
        let model = MatrixModel::zheng3();
        let poly = reconstruct(&p_space_series(&model, 2).unwrap()).unwrap();
        let e = eigenvalues_at(&poly, Complex64::new(0.0, 0.0)).unwrap();
        assert!((e[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((e[1] - Complex64::new(1.1, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let model = MatrixModel::zheng3();
        let poly = reconstruct(&p_space_series(&model, 6).unwrap()).unwrap();
        let text = serde_json::to_string(&poly.to_json()).unwrap();
        let back: SeriesPolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SeriesPolynomial::try_from(back).unwrap(), poly);
    }

    fn series_list() -> impl Strategy<Value = Vec<TruncatedSeries>> {
        (1usize..5, 0usize..7).prop_flat_map(|(n, k)| {
            prop::collection::vec(
                prop::collection::vec(-3.0f64..3.0, k + 1).prop_map(TruncatedSeries::new),
                n,
            )
        })
    }

    proptest! {
        #[test]
        fn reconstruction_is_symmetric(list in series_list(), seed in any::<u64>()) {
            let mut shuffled = list.clone();
            // Deterministic Fisher–Yates driven by the seed.
            let mut state = seed;
            for i in (1..shuffled.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                shuffled.swap(i, j);
            }
            prop_assert_eq!(reconstruct(&list).unwrap(), reconstruct(&shuffled).unwrap());
        }

        #[test]
        fn constant_terms_are_elementary_symmetric(list in series_list()) {
            let poly = reconstruct(&list).unwrap();
            let roots: Vec<f64> = list.iter().map(|s| s.coefficient(0)).collect();
            // e_j via the recurrence on ∏(1 + r t).
            let mut e = vec![1.0];
            for r in &roots {
                let mut next = e.clone();
                next.push(0.0);
                for j in 1..next.len() {
                    next[j] += r * e[j - 1];
                }
                e = next;
            }
            for (j, p) in poly.coefficients().iter().enumerate() {
                let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
                prop_assert!((p.coefficient(0) - sign * e[j + 1]).abs() <= 1e-12 * (1.0 + e[j + 1].abs()));
            }
        }

        #[test]
        fn vieta_sum(list in series_list(), re in -0.5f64..0.5, im in -0.5f64..0.5) {
            let poly = reconstruct(&list).unwrap();
            let lambda = Complex64::new(re, im);
            let e = eigenvalues_at(&poly, lambda).unwrap();
            let sum: Complex64 = e.iter().sum();
            let want = -poly.coefficients()[0].evaluate(lambda);
            let scale = e.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
            prop_assert!((sum - want).norm() <= 1e-12 * scale);
        }
    }
}
