use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Observations together with their order statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl Sample {
    /// Rejects empty input and non-finite values.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("sample has no observations".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain("observation", *bad, "finite"));
        }
        let mut sorted = values.clone();
        // stable, total order on finite floats
        sorted.sort_by(f64::total_cmp);
        Ok(Self { values, sorted })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `X_{1:n} <= ... <= X_{n:n}`.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// `a x + b` applied to every observation.
    pub fn affine(&self, a: f64, b: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|x| a * x + b).collect())
    }

    pub(crate) fn require(&self, required: usize, what: &'static str) -> Result<()> {
        if self.len() < required {
            return Err(Error::InsufficientSample {
                n: self.len(),
                required,
                what,
            });
        }
        Ok(())
    }

    pub(crate) fn require_spread(&self) -> Result<()> {
        if self.sorted[0] == self.sorted[self.len() - 1] {
            return Err(Error::DegenerateSample(format!(
                "all {} observations equal {}",
                self.len(),
                self.sorted[0]
            )));
        }
        Ok(())
    }
}
