//! Subcommand implementations behind the `secular` binary.
//!
//! Each command returns its full output as a `String` so the binary only
//! prints and maps errors to exit codes.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::{characteristic_polynomial, exact_eigenvalues_at};
use crate::discriminant::{
    discriminant, exceptional_points, nearest_exceptional_point, EpSource,
    ExceptionalPointEstimate, NearestExceptionalPoint,
};
use crate::error::{Error, ValidationError};
use crate::model::{MatrixModel, ModelLoadError};
use crate::reconstruction::{eigenvalues_at, reconstruct};
use crate::rspt::p_space_series;
use crate::series::sci17;

/// Imaginary parts at or below this magnitude are not printed.
pub const IMAGINARY_CUTOFF: f64 = 1e-10;

/// The orders reported by `table1`.
pub const TABLE1_ORDERS: [usize; 5] = [2, 4, 6, 8, 10];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Numerical(#[from] Error),
}

impl CliError {
    /// 1 for I/O, 2 for invalid input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Numerical(Error::Validation(_)) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<ModelLoadError> for CliError {
    fn from(e: ModelLoadError) -> Self {
        match e {
            ModelLoadError::Io(_) => CliError::Io(e.to_string()),
            ModelLoadError::Parse(_) | ModelLoadError::Invalid(_) => {
                CliError::Invalid(e.to_string())
            }
        }
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn load(path: &Path) -> CliResult<MatrixModel> {
    MatrixModel::load(path).map_err(|e| match e {
        ModelLoadError::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
        other => other.into(),
    })
}

pub fn cmd_validate(model_path: &Path) -> CliResult<String> {
    load(model_path)?;
    Ok("OK\n".to_string())
}

/// Per model-space state, one line per order: `order coefficient`.
pub fn series_table(model: &MatrixModel, order: usize) -> CliResult<String> {
    let mut out = String::new();
    for s in p_space_series(model, order)? {
        writeln!(out, "# state {}", s.state_index).unwrap();
        for (k, c) in s.energy_series.coefficients().iter().enumerate() {
            writeln!(out, "{k} {}", sci17(*c)).unwrap();
        }
    }
    Ok(out)
}

pub fn cmd_series(model_path: &Path, order: usize) -> CliResult<String> {
    series_table(&load(model_path)?, order)
}

pub fn charpoly_text(model: &MatrixModel) -> String {
    let cp = characteristic_polynomial(model);
    let mut out = String::new();
    writeln!(
        out,
        "# det(E*I - H(x)) = E^{n} + sum_j p_j(x) E^({n}-j)",
        n = cp.degree()
    )
    .unwrap();
    for (j, p) in cp.coefficients.iter().enumerate() {
        writeln!(out, "p_{}(x) = {}", j + 1, p.render("x")).unwrap();
    }
    out
}

pub fn cmd_charpoly(model_path: &Path) -> CliResult<String> {
    Ok(charpoly_text(&load(model_path)?))
}

pub fn reconstruct_json(model: &MatrixModel, order: usize) -> CliResult<String> {
    let poly = reconstruct(&p_space_series(model, order)?)?;
    let mut text = serde_json::to_string_pretty(&poly.to_json()).expect("serializable");
    text.push('\n');
    Ok(text)
}

pub fn cmd_reconstruct(model_path: &Path, order: usize) -> CliResult<String> {
    reconstruct_json(&load(model_path)?, order)
}

/// Sample grid and orders for `sweep`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub steps: usize,
    pub orders: Vec<usize>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            lambda_min: 0.0,
            lambda_max: 0.5,
            steps: 101,
            orders: vec![6],
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.lambda_min.is_finite() && self.lambda_max.is_finite())
            || self.lambda_min >= self.lambda_max
        {
            return Err(CliError::Invalid(format!(
                "InvalidSweep: need lambda_min < lambda_max, got {} and {}",
                self.lambda_min, self.lambda_max
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Invalid(format!(
                "InvalidSweep: need at least 2 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    /// `lambda_min + i·(lambda_max - lambda_min)/(steps - 1)`; the last
    /// sample is exactly `lambda_max`.
    pub fn samples(&self) -> Vec<f64> {
        let span = self.lambda_max - self.lambda_min;
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.lambda_max
                } else {
                    self.lambda_min + span * i as f64 / last as f64
                }
            })
            .collect()
    }
}

/// One real coupling sample with exact and resummed eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSweepRow {
    pub lambda: f64,
    /// All eigenvalues of the full matrix, sorted.
    pub exact_energies: Vec<Complex64>,
    /// One sorted list of model-space energies per requested order.
    pub effective_energies: Vec<Vec<Complex64>>,
    /// Root-finding failures at this sample; affected values are NaN.
    pub error: Option<String>,
}

pub fn sweep(model: &MatrixModel, spec: &SweepSpec) -> CliResult<Vec<EigenSweepRow>> {
    spec.validate()?;
    let cp = characteristic_polynomial(model);
    let polys = spec
        .orders
        .iter()
        .map(|&k| Ok(reconstruct(&p_space_series(model, k)?)?))
        .collect::<CliResult<Vec<_>>>()?;
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let n_p = model.p_space.len();

    let rows = spec
        .samples()
        .into_par_iter()
        .map(|lambda| {
            let at = Complex64::new(lambda, 0.0);
            let mut errors = Vec::new();
            let exact_energies = exact_eigenvalues_at(&cp, at).unwrap_or_else(|e| {
                errors.push(e.to_string());
                vec![nan; model.dimension]
            });
            let effective_energies = polys
                .iter()
                .map(|p| {
                    eigenvalues_at(p, at).unwrap_or_else(|e| {
                        errors.push(e.to_string());
                        vec![nan; n_p]
                    })
                })
                .collect();
            EigenSweepRow {
                lambda,
                exact_energies,
                effective_energies,
                error: (!errors.is_empty()).then(|| errors.join("; ")),
            }
        })
        .collect();
    Ok(rows)
}

/// A value, or `re+imi` when the imaginary part is significant.
fn complex_cell(z: Complex64) -> String {
    if z.im.abs() <= IMAGINARY_CUTOFF {
        sci17(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", sci17(z.re), sci17(z.im.abs()))
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn sweep_csv(model: &MatrixModel, spec: &SweepSpec, rows: &[EigenSweepRow]) -> String {
    let mut header = vec!["lambda".to_string()];
    header.extend((1..=model.dimension).map(|i| format!("exact_{i}")));
    for k in &spec.orders {
        header.extend((1..=model.p_space.len()).map(|i| format!("eff_K{k}_{i}")));
    }
    header.push("error".to_string());

    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let mut cells = vec![sci17(row.lambda)];
        cells.extend(row.exact_energies.iter().map(|&z| complex_cell(z)));
        for energies in &row.effective_energies {
            cells.extend(energies.iter().map(|&z| complex_cell(z)));
        }
        cells.push(row.error.as_deref().map(csv_field).unwrap_or_default());
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Writes the CSV to `out` (or returns it when `out` is `None`).
pub fn cmd_sweep(model_path: &Path, spec: &SweepSpec, out: Option<&Path>) -> CliResult<String> {
    let model = load(model_path)?;
    let rows = sweep(&model, spec)?;
    let csv = sweep_csv(&model, spec, &rows);
    match out {
        Some(path) => {
            std::fs::write(path, &csv)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(format!("wrote {} rows to {}\n", rows.len(), path.display()))
        }
        None => Ok(csv),
    }
}

/// Exceptional points from one source, plus the one nearest the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct EpResult {
    pub source: EpSource,
    pub points: Vec<ExceptionalPointEstimate>,
    pub nearest: NearestExceptionalPoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpReport {
    pub exact: Option<EpResult>,
    pub orders: Vec<EpResult>,
}

pub fn exact_exceptional_points(model: &MatrixModel) -> CliResult<EpResult> {
    let disc = discriminant(&characteristic_polynomial(model))?;
    let points = exceptional_points(&disc, EpSource::Exact)?;
    let nearest = nearest_exceptional_point(&points)?;
    Ok(EpResult {
        source: EpSource::Exact,
        points,
        nearest,
    })
}

/// RSPT to order `K`, reconstruction, discriminant, roots.
pub fn order_exceptional_points(model: &MatrixModel, order: usize) -> CliResult<EpResult> {
    let poly = reconstruct(&p_space_series(model, order)?)?;
    let source = EpSource::ReconstructionOrder(order);
    let points = exceptional_points(&discriminant(&poly)?, source)?;
    let nearest = nearest_exceptional_point(&points)?;
    Ok(EpResult {
        source,
        points,
        nearest,
    })
}

pub fn ep_report(
    model: &MatrixModel,
    orders: &[usize],
    include_exact: bool,
) -> CliResult<EpReport> {
    let exact = include_exact
        .then(|| exact_exceptional_points(model))
        .transpose()?;
    let orders = orders
        .iter()
        .map(|&k| order_exceptional_points(model, k))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(EpReport { exact, orders })
}

#[derive(Serialize)]
struct PointJson {
    re: String,
    im: String,
    modulus: String,
    source: String,
    residual: String,
}

#[derive(Serialize)]
struct NearestJson {
    source: String,
    re: String,
    im: String,
    modulus: String,
    multiplicity: usize,
}

#[derive(Serialize)]
struct EpReportJson {
    points: Vec<PointJson>,
    nearest: Vec<NearestJson>,
}

fn num(x: f64) -> String {
    (if x == 0.0 { 0.0 } else { x }).to_string()
}

impl EpReport {
    fn results(&self) -> impl Iterator<Item = &EpResult> {
        self.exact.iter().chain(&self.orders)
    }

    /// `{"points": [...], "nearest": [...]}`; exact entries first, then
    /// orders as requested. Numbers are shortest round-trip decimal strings.
    pub fn to_json(&self) -> String {
        let report = EpReportJson {
            points: self
                .results()
                .flat_map(|r| &r.points)
                .map(|p| PointJson {
                    re: num(p.lambda_value.re),
                    im: num(p.lambda_value.im),
                    modulus: num(p.modulus),
                    source: p.source.to_string(),
                    residual: num(p.residual),
                })
                .collect(),
            nearest: self
                .results()
                .map(|r| NearestJson {
                    source: r.source.to_string(),
                    re: num(r.nearest.point.lambda_value.re),
                    im: num(r.nearest.point.lambda_value.im),
                    modulus: num(r.nearest.point.modulus),
                    multiplicity: r.nearest.multiplicity,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&report).expect("serializable");
        text.push('\n');
        text
    }
}

pub fn cmd_ep(model_path: &Path, orders: &[usize], include_exact: bool) -> CliResult<String> {
    Ok(ep_report(&load(model_path)?, orders, include_exact)?.to_json())
}

/// Nearest exceptional point modulus for K = 2, 4, 6, 8, 10 next to the
/// exact value.
pub fn table1_report(model: &MatrixModel) -> CliResult<EpReport> {
    ep_report(model, &TABLE1_ORDERS, true)
}

pub fn table1_text(report: &EpReport) -> String {
    let exact = report.exact.as_ref().map(|r| r.nearest.point.modulus);
    let mut out = String::from("K      |lambda_1^[K]|         |error|\n");
    for r in &report.orders {
        let k = match r.source {
            EpSource::ReconstructionOrder(k) => k.to_string(),
            EpSource::Exact => "exact".into(),
        };
        let modulus = r.nearest.point.modulus;
        let error = exact
            .map(|e| format!("{:.3e}", (modulus - e).abs()))
            .unwrap_or_default();
        writeln!(out, "{k:<6} {:<22} {error}", format!("{modulus:.17}")).unwrap();
    }
    if let Some(e) = exact {
        writeln!(out, "{:<6} {:.17}", "exact", e).unwrap();
    }
    out
}

pub fn cmd_table1(model_path: Option<&Path>) -> CliResult<String> {
    let model = match model_path {
        Some(path) => load(path)?,
        None => MatrixModel::zheng3(),
    };
    Ok(table1_text(&table1_report(&model)?))
}
