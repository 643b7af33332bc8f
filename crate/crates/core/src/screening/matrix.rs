//! Variables × samples data matrices read from delimited text.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `p × n` matrix with one row per variable. Missing cells are stored as
/// NaN and flagged in `missing`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DataMatrix {
    variable_ids: Vec<String>,
    sample_ids: Vec<String>,
    values: Vec<f64>,
    missing: Vec<bool>,
}

/// Equal ids, equal missing masks and equal observed values.
impl PartialEq for DataMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.variable_ids == other.variable_ids
            && self.sample_ids == other.sample_ids
            && self.missing == other.missing
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a == b || (a.is_nan() && b.is_nan()))
    }
}

impl DataMatrix {
    /// Builds a matrix from rows; non-finite entries count as missing.
    pub fn from_rows(variable_ids: Vec<String>, sample_ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if variable_ids.is_empty() || sample_ids.is_empty() {
            return Err(Error::Empty("matrix has no variables or no samples".into()));
        }
        if rows.len() != variable_ids.len() {
            return Err(Error::Precondition(format!(
                "{} variable ids for {} rows",
                variable_ids.len(),
                rows.len()
            )));
        }
        let n = sample_ids.len();
        let mut seen = HashMap::with_capacity(variable_ids.len());
        for id in &variable_ids {
            if seen.insert(id.as_str(), ()).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let mut values = Vec::with_capacity(rows.len() * n);
        for (id, row) in variable_ids.iter().zip(&rows) {
            if row.len() != n {
                return Err(Error::Precondition(format!("row {id} has {} values, expected {n}", row.len())));
            }
            values.extend(row.iter().map(|v| if v.is_finite() { *v } else { f64::NAN }));
        }
        let missing = values.iter().map(|v| v.is_nan()).collect();
        Ok(Self {
            variable_ids,
            sample_ids,
            values,
            missing,
        })
    }

    pub fn p(&self) -> usize {
        self.variable_ids.len()
    }

    pub fn n(&self) -> usize {
        self.sample_ids.len()
    }

    pub fn variable_ids(&self) -> &[String] {
        &self.variable_ids
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    /// Row `i`, with NaN at missing cells.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n()..(i + 1) * self.n()]
    }

    pub fn is_missing(&self, i: usize, j: usize) -> bool {
        self.missing[i * self.n() + j]
    }

    /// Non-missing values of row `i` in sample order.
    pub fn observed(&self, i: usize) -> Vec<f64> {
        self.row(i).iter().copied().filter(|v| !v.is_nan()).collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.variable_ids.iter().position(|v| v == id)
    }

    /// Applies `f` to every observed cell.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let rows = (0..self.p())
            .map(|i| self.row(i).iter().map(|&v| if v.is_nan() { v } else { f(v) }).collect())
            .collect();
        Self::from_rows(self.variable_ids.clone(), self.sample_ids.clone(), rows)
    }

    /// Writes the matrix in the format read by [`load_matrix`], with `NA`
    /// for missing cells.
    pub fn write_delimited<W: Write>(&self, mut out: W, delimiter: u8) -> Result<()> {
        let d = delimiter as char;
        write!(out, "id")?;
        for s in &self.sample_ids {
            write!(out, "{d}{s}")?;
        }
        writeln!(out)?;
        for (i, id) in self.variable_ids.iter().enumerate() {
            write!(out, "{id}")?;
            for v in self.row(i) {
                if v.is_nan() {
                    write!(out, "{d}NA")?;
                } else {
                    write!(out, "{d}{v}")?;
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Parses a delimited matrix: a header row of sample ids, then one row per
/// variable whose first field is the variable id.
///
/// The header may start with a corner label (`id`, `gene`, ...) or omit it;
/// which one is inferred from the width of the first data row. Empty cells,
/// `NA`, `N/A`, `NaN`, `null`, `.` and infinities are missing; any other cell
/// that is not a number is a parse error.
pub fn load_matrix<R: Read>(input: R, source: &str, delimiter: u8) -> Result<DataMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(delimiter)
        .flexible(true)
        .comment(None)
        .from_reader(input);
    let parse_error = |line: u64, column: usize, message: String| Error::Parse {
        path: source.to_string(),
        line: line as usize,
        column,
        message,
    };
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(Error::Empty(format!("{source} is empty"))),
        Some(r) => r.map_err(|e| csv_error(source, e))?,
    };
    let header: Vec<String> = header.iter().map(|s| s.trim().to_string()).collect();

    let mut sample_ids: Option<Vec<String>> = None;
    let mut variable_ids = Vec::new();
    let mut rows = Vec::new();
    let mut seen: HashMap<String, u64> = HashMap::new();
    for record in records {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        let samples = sample_ids.get_or_insert_with(|| {
            if record.len() == header.len() + 1 {
                header.clone()
            } else {
                header.iter().skip(1).cloned().collect()
            }
        });
        if record.len() != samples.len() + 1 {
            return Err(parse_error(
                line,
                record.len().min(samples.len() + 1) + 1,
                format!("expected {} fields (id + {} samples), found {}", samples.len() + 1, samples.len(), record.len()),
            ));
        }
        let id = record[0].trim().to_string();
        if id.is_empty() {
            return Err(parse_error(line, 1, "empty variable id".into()));
        }
        if let Some(first) = seen.insert(id.clone(), line) {
            return Err(Error::DuplicateId(format!("{id} (lines {first} and {line} of {source})")));
        }
        let row = record
            .iter()
            .enumerate()
            .skip(1)
            .map(|(col, cell)| parse_cell(cell).ok_or_else(|| parse_error(line, col + 1, format!("`{}` is not a number", cell.trim()))))
            .collect::<Result<Vec<f64>>>()?;
        variable_ids.push(id);
        rows.push(row);
    }
    let sample_ids = sample_ids.unwrap_or_default();
    if variable_ids.is_empty() || sample_ids.is_empty() {
        return Err(Error::Empty(format!("{source} has no data rows or no sample columns")));
    }
    DataMatrix::from_rows(variable_ids, sample_ids, rows)
}

/// A finite value, NaN for a missing-value token, `None` otherwise.
fn parse_cell(cell: &str) -> Option<f64> {
    let cell = cell.trim();
    if matches!(cell.to_ascii_lowercase().as_str(), "" | "na" | "n/a" | "nan" | "null" | ".") {
        return Some(f64::NAN);
    }
    cell.parse::<f64>().ok().map(|v| if v.is_finite() { v } else { f64::NAN })
}

pub fn load_matrix_path(path: &Path, delimiter: u8) -> Result<DataMatrix> {
    let file = File::open(path)?;
    load_matrix(std::io::BufReader::new(file), &path.display().to_string(), delimiter)
}

fn csv_error(source: &str, e: csv::Error) -> Error {
    let (line, column) = match e.position() {
        Some(p) => (p.line() as usize, 0),
        None => (0, 0),
    };
    Error::Parse {
        path: source.to_string(),
        line,
        column,
        message: e.to_string(),
    }
}
