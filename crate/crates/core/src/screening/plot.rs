//! Kernel density data behind marginal distribution plots.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::matrix::DataMatrix;
use crate::error::{Error, Result};
use crate::moments::{sample_quantile, sample_sd, Sample};

pub const KDE_GRID_POINTS: usize = 512;
/// Grid extends this many bandwidths beyond the data range.
pub const KDE_GRID_PAD: f64 = 3.0;
pub const BANDWIDTH_RULE: &str = "silverman: 0.9 * min(sd, IQR/1.34) * n^(-1/5)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDensity {
    pub label: String,
    pub count: usize,
    pub proportion: f64,
    pub values: Vec<f64>,
    /// Class density scaled by the class proportion, so the class curves
    /// add up to the overall density.
    pub density: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariablePlot {
    pub variable_id: String,
    pub values: Vec<f64>,
    pub bandwidth: f64,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub classes: Vec<ClassDensity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalPlotData {
    pub bandwidth_rule: String,
    pub kernel: String,
    pub variables: Vec<VariablePlot>,
}

/// Rule-of-thumb Gaussian-kernel bandwidth. Falls back to the sd, or to 1,
/// when the spread measures vanish.
pub fn silverman_bandwidth(values: &[f64]) -> f64 {
    let n = values.len();
    let Ok(s) = Sample::new(values.to_vec()) else {
        return 1.0;
    };
    let sd = if n > 1 { sample_sd(&s).unwrap_or(0.0) } else { 0.0 };
    let iqr = match (sample_quantile(&s, 0.75), sample_quantile(&s, 0.25)) {
        (Ok(a), Ok(b)) => (a - b) / 1.34,
        _ => 0.0,
    };
    let spread = match (sd > 0.0, iqr > 0.0) {
        (true, true) => sd.min(iqr),
        (true, false) => sd,
        (false, true) => iqr,
        (false, false) => 1.0,
    };
    0.9 * spread * (n as f64).powf(-0.2)
}

/// `(1 / (N h)) Σ φ((t - x_i) / h)` over `values` at each grid point, with
/// `total` as `N` so that subsets give proportion-scaled curves.
fn kde(values: &[f64], total: usize, h: f64, grid: &[f64]) -> Vec<f64> {
    let norm = 1.0 / (total as f64 * h * (2.0 * PI).sqrt());
    grid.iter()
        .map(|&t| {
            values
                .iter()
                .map(|&x| {
                    let u = (t - x) / h;
                    (-0.5 * u * u).exp()
                })
                .sum::<f64>()
                * norm
        })
        .collect()
}

/// Plot data for the listed variables. `labels`, when given, assigns a class
/// to each sample (same order as the matrix columns).
pub fn export_marginal_plot_data(
    matrix: &DataMatrix,
    variable_ids: &[String],
    labels: Option<&[String]>,
) -> Result<MarginalPlotData> {
    if let Some(l) = labels {
        if l.len() != matrix.n() {
            return Err(Error::Precondition(format!(
                "{} class labels for {} samples",
                l.len(),
                matrix.n()
            )));
        }
    }
    let variables = variable_ids
        .iter()
        .map(|id| {
            let i = matrix.index_of(id).ok_or_else(|| Error::UnknownVariable(id.clone()))?;
            let row = matrix.row(i);
            let values = matrix.observed(i);
            if values.is_empty() {
                return Err(Error::Empty(format!("variable {id} has no observed values")));
            }
            let h = silverman_bandwidth(&values);
            let (lo, hi) = values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            let (a, b) = (lo - KDE_GRID_PAD * h, hi + KDE_GRID_PAD * h);
            let step = (b - a) / (KDE_GRID_POINTS - 1) as f64;
            let grid: Vec<f64> = (0..KDE_GRID_POINTS).map(|k| a + step * k as f64).collect();
            let density = kde(&values, values.len(), h, &grid);
            let mut classes = Vec::new();
            if let Some(labels) = labels {
                let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
                for (v, l) in row.iter().zip(labels) {
                    if !v.is_nan() {
                        groups.entry(l.as_str()).or_default().push(*v);
                    }
                }
                for (label, vals) in groups {
                    classes.push(ClassDensity {
                        label: label.to_string(),
                        count: vals.len(),
                        proportion: vals.len() as f64 / values.len() as f64,
                        density: kde(&vals, values.len(), h, &grid),
                        values: vals,
                    });
                }
            }
            Ok(VariablePlot {
                variable_id: id.clone(),
                values,
                bandwidth: h,
                grid,
                density,
                classes,
            })
        })
        .collect::<Result<_>>()?;
    Ok(MarginalPlotData {
        bandwidth_rule: BANDWIDTH_RULE.into(),
        kernel: "gaussian".into(),
        variables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{self, Domain};

    fn trapezoid(grid: &[f64], f: &[f64]) -> f64 {
        grid.windows(2).zip(f.windows(2)).map(|(g, y)| 0.5 * (g[1] - g[0]) * (y[0] + y[1])).sum()
    }

    fn bimodal(n: usize) -> (DataMatrix, Vec<String>) {
        let mut r = rng::stream(5, Domain::Synthetic, 0);
        let mut row = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for j in 0..n {
            let class = j % 3 == 0;
            row.push(rng::standard_normal(&mut r) + if class { 4.0 } else { 0.0 });
            labels.push(if class { "B" } else { "A" }.to_string());
        }
        let samples = (0..n).map(|j| format!("s{j}")).collect();
        (DataMatrix::from_rows(vec!["v".into()], samples, vec![row]).unwrap(), labels)
    }

    #[test]
    fn density_normalised_and_decomposed() {
        let (m, labels) = bimodal(817);
        let doc = export_marginal_plot_data(&m, &["v".into()], Some(&labels)).unwrap();
        let v = &doc.variables[0];
        assert_eq!(v.grid.len(), KDE_GRID_POINTS);
        assert!((trapezoid(&v.grid, &v.density) - 1.0).abs() < 0.01);
        assert_eq!(v.classes.len(), 2);
        let peak = v.density.iter().cloned().fold(0.0, f64::max);
        for k in 0..v.grid.len() {
            let sum: f64 = v.classes.iter().map(|c| c.density[k]).sum();
            assert!((sum - v.density[k]).abs() <= 0.02 * peak);
        }
    }

    #[test]
    fn single_class_matches_overall() {
        let (m, _) = bimodal(100);
        let labels = vec!["all".to_string(); 100];
        let doc = export_marginal_plot_data(&m, &["v".into()], Some(&labels)).unwrap();
        let v = &doc.variables[0];
        for (a, b) in v.classes[0].density.iter().zip(&v.density) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn unknown_variable() {
        let (m, _) = bimodal(20);
        assert!(matches!(
            export_marginal_plot_data(&m, &["nope".into()], None),
            Err(Error::UnknownVariable(_))
        ));
    }
}
