//! Power series in `λ` truncated at a fixed order.
//!
//! All coefficient arithmetic of the resummation goes through
//! [`TruncatedSeries`], so a wider float type only has to be introduced here.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `c_0 + c_1 λ + ... + c_K λ^K` with `K = order`.
///
/// Products discard every power above `K`; the truncation is part of the
/// multiplication itself.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coefficients: Vec<f64>,
}

impl TruncatedSeries {
    /// Builds a series of order `coefficients.len() - 1`.
    ///
    /// Panics on an empty vector or a non-finite coefficient.
    pub fn new(coefficients: Vec<f64>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "a truncated series needs at least the constant term"
        );
        assert!(
            coefficients.iter().all(|c| c.is_finite()),
            "series coefficients must be finite"
        );
        TruncatedSeries { coefficients }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coefficients: vec![0.0; order + 1],
        }
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = value;
        s
    }

    /// `coefficient · λ^power`, or the zero series if `power > order`.
    pub fn monomial(coefficient: f64, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coefficients[power] = coefficient;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> f64 {
        self.coefficients.get(power).copied().unwrap_or(0.0)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product keeping only powers `0..=K`.
    ///
    /// The terms `a_i b_{k-i}` and `a_{k-i} b_i` are summed pairwise before
    /// accumulation, which makes the product bitwise commutative.
    pub fn mul_truncated(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let a = &self.coefficients;
        let b = &other.coefficients;
        let coefficients = (0..a.len())
            .map(|k| {
                let mut acc = 0.0;
                let mut lo = 0;
                let mut hi = k;
                while lo < hi {
                    acc += a[lo] * b[hi] + a[hi] * b[lo];
                    lo += 1;
                    hi -= 1;
                }
                if lo == hi {
                    acc += a[lo] * b[lo];
                }
                acc
            })
            .collect();
        Ok(TruncatedSeries { coefficients })
    }

    /// Horner evaluation of the partial sum.
    pub fn evaluate(&self, lambda: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * lambda + c)
    }

    /// True when every odd-power coefficient has magnitude at most `tol`.
    pub fn is_even(&self, tol: f64) -> bool {
        self.coefficients
            .iter()
            .skip(1)
            .step_by(2)
            .all(|c| c.abs() <= tol)
    }

    /// Renders `c0 + c1*x + c2*x^2 + ...` with 17 significant digits.
    pub fn render(&self, variable: &str) -> String {
        render_terms(&self.coefficients, variable)
    }
}

impl AsRef<TruncatedSeries> for TruncatedSeries {
    fn as_ref(&self) -> &TruncatedSeries {
        self
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Scientific notation with 17 significant digits, which round-trips any
/// `f64`. Negative zero prints as zero.
pub fn sci17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub(crate) fn render_terms(coefficients: &[f64], variable: &str) -> String {
    let mut out = String::new();
    for (power, &c) in coefficients.iter().enumerate() {
        let magnitude = sci17(c.abs());
        if power == 0 {
            out.push_str(&sci17(c));
        } else {
            out.push_str(if c.is_sign_negative() && c != 0.0 {
                " - "
            } else {
                " + "
            });
            out.push_str(&magnitude);
        }
        match power {
            0 => {}
            1 => {
                out.push('*');
                out.push_str(variable);
            }
            _ => {
                out.push('*');
                out.push_str(variable);
                out.push('^');
                out.push_str(&power.to_string());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[f64]) -> TruncatedSeries {
        TruncatedSeries::new(c.to_vec())
    }

    fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
        a.order() == b.order()
            && a.coefficients()
                .iter()
                .zip(b.coefficients())
                .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
    }

    // Second-order toy-model series: 1 - 10λ² and 1.1 + (80/9)λ².
    fn low() -> TruncatedSeries {
        s(&[1.0, 0.0, -10.0])
    }
    fn mid() -> TruncatedSeries {
        s(&[1.1, 0.0, 80.0 / 9.0])
    }

    #[test]
    fn add_toy_series() {
        let sum = low().add(&mid()).unwrap();
        assert!(close(&sum, &s(&[2.1, 0.0, -10.0 / 9.0]), 1e-15));
        assert_eq!(low().add(&TruncatedSeries::zero(2)).unwrap(), low());
        assert_eq!(
            low().add(&low().scale(-1.0)).unwrap(),
            TruncatedSeries::zero(2)
        );
    }

    #[test]
    fn mul_drops_terms_above_order() {
        let prod = low().mul_truncated(&mid()).unwrap();
        assert!(close(&prod, &s(&[1.1, 0.0, -19.0 / 9.0]), 1e-15));

        assert_eq!(
            low()
                .mul_truncated(&TruncatedSeries::constant(1.0, 2))
                .unwrap(),
            low()
        );

        let x = TruncatedSeries::monomial(1.0, 1, 1);
        assert_eq!(x.mul_truncated(&x).unwrap(), TruncatedSeries::zero(1));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = low().add(&TruncatedSeries::zero(3)).unwrap_err();
        assert!(matches!(err, Error::OrderMismatch { left: 2, right: 3 }));
        assert!(low().mul_truncated(&TruncatedSeries::zero(1)).is_err());
    }

    #[test]
    fn evaluate_partial_sums() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(low().evaluate(c(0.0, 0.0)), c(1.0, 0.0));
        assert!((low().evaluate(c(0.1, 0.0)) - c(0.9, 0.0)).norm() < 1e-15);
        assert!((low().evaluate(c(0.0, 0.1)) - c(1.1, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn parity_check() {
        assert!(low().is_even(1e-12));
        assert!(!TruncatedSeries::monomial(1.0, 1, 1).is_even(1e-12));
    }

    #[test]
    fn rendering() {
        assert_eq!(
            low().render("x"),
            "1.0000000000000000e0 + 0.0000000000000000e0*x - 1.0000000000000000e1*x^2"
        );
        assert_eq!(sci17(-0.0), "0.0000000000000000e0");
        assert_eq!(sci17(80.0 / 9.0), "8.8888888888888893e0");
    }

    fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-2.0f64..2.0, order + 1).prop_map(TruncatedSeries::new)
    }

    proptest! {
        #[test]
        fn mul_is_commutative_and_associative(
            (a, b, c) in (0usize..8).prop_flat_map(|k| (series(k), series(k), series(k)))
        ) {
            prop_assert_eq!(a.mul_truncated(&b).unwrap(), b.mul_truncated(&a).unwrap());
            let left = a.mul_truncated(&b).unwrap().mul_truncated(&c).unwrap();
            let right = a.mul_truncated(&b.mul_truncated(&c).unwrap()).unwrap();
            let scale = a.coefficients().iter().chain(b.coefficients()).chain(c.coefficients())
                .fold(1.0f64, |m, x| m.max(x.abs()));
            for (x, y) in left.coefficients().iter().zip(right.coefficients()) {
                // Relative to the size of the summed terms, not of the result.
                let bound = 1e-14 * scale.powi(3) * (left.order() as f64 + 1.0).powi(2);
                prop_assert!((x - y).abs() <= bound, "{} vs {}", x, y);
            }
            prop_assert_eq!(left.order(), a.order());
        }

        #[test]
        fn evaluation_is_multiplicative_when_nothing_is_dropped(
            a in prop::collection::vec(-2.0f64..2.0, 0..4),
            b in prop::collection::vec(-2.0f64..2.0, 0..4),
            re in -0.7f64..0.7,
            im in -0.7f64..0.7,
        ) {
            // Pad both factors to order deg(a) + deg(b) so the product is exact.
            let order = a.len() + b.len();
            let pad = |v: &[f64]| {
                let mut c = v.to_vec();
                c.resize(order + 1, 0.0);
                TruncatedSeries::new(c)
            };
            let (sa, sb) = (pad(&a), pad(&b));
            let lambda = Complex64::new(re, im);
            let lhs = sa.mul_truncated(&sb).unwrap().evaluate(lambda);
            let rhs = sa.evaluate(lambda) * sb.evaluate(lambda);
            let magnitude = sa.coefficients().iter().map(|c| c.abs()).sum::<f64>()
                * sb.coefficients().iter().map(|c| c.abs()).sum::<f64>();
            prop_assert!((lhs - rhs).norm() <= 1e-13 * magnitude.max(1.0));
        }
    }
}
