//! Per-variable summaries and ranked lists.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::DataMatrix;
use crate::error::{Error, Result};
use crate::moments::{compute_summary_with, Sample, Statistic, SummaryConfig, SummaryStatistics, MIN_SUMMARY_N};

/// Which end of a ranked list a selection takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Smallest metrics first (bottom of the list).
    #[default]
    Ascending,
    /// Largest metrics first (top of the list).
    Descending,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ascending" | "asc" | "bottom" => Ok(Self::Ascending),
            "descending" | "desc" | "top" => Ok(Self::Descending),
            _ => Err(Error::Precondition(format!("unknown direction `{s}` (ascending, descending)"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ascending => "ascending",
            Self::Descending => "descending",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub variable_id: String,
    pub metric: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub variable_id: String,
    pub reason: String,
}

/// Variables sorted by decreasing metric; equal metrics are ordered by
/// variable id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedList {
    pub statistic: String,
    pub entries: Vec<RankedEntry>,
    pub excluded: Vec<Exclusion>,
}

impl RankedList {
    /// Sorts `entries` into list order. Non-finite metrics move to `excluded`.
    pub fn new(statistic: impl Into<String>, entries: Vec<RankedEntry>, mut excluded: Vec<Exclusion>) -> Self {
        let (mut entries, bad): (Vec<_>, Vec<_>) = entries.into_iter().partition(|e| e.metric.is_finite());
        excluded.extend(bad.into_iter().map(|e| Exclusion {
            variable_id: e.variable_id,
            reason: format!("non-finite metric {}", e.metric),
        }));
        entries.sort_by(|a, b| b.metric.total_cmp(&a.metric).then_with(|| a.variable_id.cmp(&b.variable_id)));
        Self {
            statistic: statistic.into(),
            entries,
            excluded,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `k` entries from the requested end, most extreme first.
    pub fn select(&self, k: usize, direction: Direction) -> Result<Vec<RankedEntry>> {
        match direction {
            Direction::Ascending => bottom_k(self, k),
            Direction::Descending => top_k(self, k),
        }
    }

    /// Same list with every metric negated (and therefore reversed).
    pub fn negated(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| RankedEntry {
                variable_id: e.variable_id.clone(),
                metric: -e.metric,
            })
            .collect();
        Self::new(self.statistic.clone(), entries, self.excluded.clone())
    }

    /// Tab-separated `rank, variable_id, metric`, ranks from 1.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "rank\tvariable_id\tmetric")?;
        for (i, e) in self.entries.iter().enumerate() {
            writeln!(out, "{}\t{}\t{}", i + 1, e.variable_id, e.metric)?;
        }
        Ok(())
    }

    /// Reads a list written by [`RankedList::write_tsv`], or any two- or
    /// three-column table whose last two columns are id and metric. A first
    /// line whose metric does not parse is taken as a header.
    pub fn read_tsv<R: BufRead>(input: R, source: &str, statistic: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut ids = BTreeSet::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 2 {
                return Err(Error::Parse {
                    path: source.into(),
                    line: lineno,
                    column: 1,
                    message: "expected `variable_id<TAB>metric`".into(),
                });
            }
            let (id, metric) = (fields[fields.len() - 2].trim(), fields[fields.len() - 1].trim());
            let Ok(metric) = metric.parse::<f64>() else {
                if idx == 0 {
                    continue;
                }
                return Err(Error::Parse {
                    path: source.into(),
                    line: lineno,
                    column: fields.len(),
                    message: format!("metric `{metric}` is not a number"),
                });
            };
            if !ids.insert(id.to_string()) {
                return Err(Error::DuplicateId(id.to_string()));
            }
            entries.push(RankedEntry {
                variable_id: id.to_string(),
                metric,
            });
        }
        if entries.is_empty() {
            return Err(Error::Empty(format!("{source} has no ranked entries")));
        }
        Ok(Self::new(statistic, entries, Vec::new()))
    }
}

/// The `k` entries with the smallest metric, in ascending order.
pub fn bottom_k(list: &RankedList, k: usize) -> Result<Vec<RankedEntry>> {
    if k > list.len() {
        return Err(Error::KTooLarge { k, len: list.len() });
    }
    Ok(list.entries.iter().rev().take(k).cloned().collect())
}

/// The `k` entries with the largest metric, in descending order.
pub fn top_k(list: &RankedList, k: usize) -> Result<Vec<RankedEntry>> {
    if k > list.len() {
        return Err(Error::KTooLarge { k, len: list.len() });
    }
    Ok(list.entries[..k].to_vec())
}

/// Outcome of summarising one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableSummary {
    pub variable_id: String,
    pub n_observed: usize,
    pub summary: Option<SummaryStatistics>,
    pub excluded_reason: Option<String>,
}

/// Summaries of every row on its observed cells, computed in parallel.
///
/// Shared tables are built first, serially, for every distinct observed
/// count, so workers only read them and the output does not depend on the
/// number of threads.
pub fn compute_summaries(matrix: &DataMatrix, cfg: &SummaryConfig) -> Result<Vec<VariableSummary>> {
    let counts: BTreeSet<usize> = (0..matrix.p()).map(|i| matrix.observed(i).len()).collect();
    for &n in counts.iter().filter(|&&n| n >= MIN_SUMMARY_N) {
        cfg.prepare(n)?;
    }
    Ok((0..matrix.p())
        .into_par_iter()
        .map(|i| {
            let id = matrix.variable_ids()[i].clone();
            let values = matrix.observed(i);
            let n_observed = values.len();
            match Sample::new(values).and_then(|s| compute_summary_with(&s, cfg)) {
                Ok(s) => VariableSummary {
                    variable_id: id,
                    n_observed,
                    summary: Some(s),
                    excluded_reason: None,
                },
                Err(e) => VariableSummary {
                    variable_id: id,
                    n_observed,
                    summary: None,
                    excluded_reason: Some(e.to_string()),
                },
            }
        })
        .collect())
}

/// Ranked list of `statistic` over precomputed summaries.
pub fn rank_by(summaries: &[VariableSummary], statistic: Statistic) -> RankedList {
    let mut entries = Vec::with_capacity(summaries.len());
    let mut excluded = Vec::new();
    for v in summaries {
        match (&v.summary, &v.excluded_reason) {
            (Some(s), _) => entries.push(RankedEntry {
                variable_id: v.variable_id.clone(),
                metric: statistic.value(s),
            }),
            (None, reason) => excluded.push(Exclusion {
                variable_id: v.variable_id.clone(),
                reason: reason.clone().unwrap_or_default(),
            }),
        }
    }
    RankedList::new(statistic.id(), entries, excluded)
}

/// Ranked lists for each requested statistic, in request order. Variables
/// whose summary fails are listed as excluded, never dropped.
pub fn screen(matrix: &DataMatrix, statistics: &[Statistic], cfg: &SummaryConfig) -> Result<Vec<RankedList>> {
    let summaries = compute_summaries(matrix, cfg)?;
    Ok(statistics.iter().map(|&s| rank_by(&summaries, s)).collect())
}
