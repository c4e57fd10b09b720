//! Nondegenerate Rayleigh–Schrödinger perturbation theory to arbitrary order.

use crate::error::{Error, Result, ValidationError};
use crate::model::MatrixModel;
use crate::series::TruncatedSeries;

/// The eigenvalue series anchored at one unperturbed basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSeries {
    /// 1-based basis index.
    pub state_index: usize,
    pub energy_series: TruncatedSeries,
}

impl AsRef<TruncatedSeries> for StateSeries {
    fn as_ref(&self) -> &TruncatedSeries {
        &self.energy_series
    }
}

/// Energy coefficients `E_0..E_K` of the eigenvalue connected to basis state
/// `state_index` (1-based).
///
/// Uses intermediate normalization: the wavefunction corrections `x_k` have
/// no component along the reference state, and
///
/// ```text
/// E_k      = <n| V x_{k-1}>
/// x_k[m]   = ((V x_{k-1})[m] - Σ_{j=1}^{k-1} E_j x_{k-j}[m]) / (E_0 - h0[m]),  m ≠ n
/// ```
///
/// The recursion runs over the full basis, not only the model space.
pub fn perturbation_series(
    model: &MatrixModel,
    state_index: usize,
    order: usize,
) -> Result<StateSeries> {
    let dim = model.dimension;
    if state_index == 0 || state_index > dim {
        return Err(Error::StateIndexOutOfRange {
            index: state_index,
            dimension: dim,
        });
    }
    let n = state_index - 1;
    let h0 = &model.h0_diagonal;
    let e0 = h0[n];

    let mut denominators = vec![0.0; dim];
    for m in (0..dim).filter(|&m| m != n) {
        let gap = e0 - h0[m];
        if gap == 0.0 {
            return Err(ValidationError::DegenerateUnperturbed {
                first: state_index.min(m + 1),
                second: state_index.max(m + 1),
            }
            .into());
        }
        denominators[m] = gap;
    }

    let v = model.interaction_matrix();
    let apply_v = |x: &[f64]| -> Vec<f64> {
        v.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    };

    let mut energies = Vec::with_capacity(order + 1);
    energies.push(e0);
    let mut corrections: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
    let mut reference = vec![0.0; dim];
    reference[n] = 1.0;
    corrections.push(reference);

    for k in 1..=order {
        let vx = apply_v(&corrections[k - 1]);
        energies.push(vx[n]);
        // The last correction is only needed for the next energy.
        if k == order {
            break;
        }
        let mut next = vec![0.0; dim];
        for m in (0..dim).filter(|&m| m != n) {
            let shift: f64 = (1..k).map(|j| energies[j] * corrections[k - j][m]).sum();
            next[m] = (vx[m] - shift) / denominators[m];
        }
        corrections.push(next);
    }

    Ok(StateSeries {
        state_index,
        energy_series: TruncatedSeries::new(energies),
    })
}

/// One series per model-space state, in `p_space` order.
pub fn p_space_series(model: &MatrixModel, order: usize) -> Result<Vec<StateSeries>> {
    model
        .p_space
        .iter()
        .map(|&index| perturbation_series(model, index, order))
        .collect()
}
