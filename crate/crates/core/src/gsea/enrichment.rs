//! Running-sum enrichment scores.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::screening::RankedList;

/// Signed enrichment score with its position and the running profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enrichment {
    pub es: f64,
    /// 1-based position `n'` where `|ES(S, n)|` is first maximal.
    pub position: usize,
    /// `ES(S, n)` for `n = 1..=N`.
    pub running: Vec<f64>,
}

fn check_weight(p: f64) -> Result<()> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::domain("p", p, "finite p >= 0"));
    }
    Ok(())
}

/// `|r|^p`, with `p = 0` giving 1 for every metric, zeros included.
pub(crate) fn hit_weight(metric: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        metric.abs().powf(p)
    }
}

/// Positions in `list` of the members present in it.
pub(crate) fn member_indices(list: &RankedList, members: &[String]) -> Vec<usize> {
    let index: HashMap<&str, usize> = list
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.variable_id.as_str(), i))
        .collect();
    let mut idx: Vec<usize> = members.iter().filter_map(|m| index.get(m.as_str()).copied()).collect();
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// One sweep down the list accumulating `P_hit - P_miss`.
pub fn enrichment_score(list: &RankedList, name: &str, members: &[String], p: f64) -> Result<Enrichment> {
    check_weight(p)?;
    let n = list.len();
    let hits = member_indices(list, members);
    if hits.is_empty() {
        return Err(Error::EmptyIntersection(name.into()));
    }
    if hits.len() == n {
        return Err(Error::DegenerateGeneSet(name.into()));
    }
    let mut is_hit = vec![false; n];
    hits.iter().for_each(|&i| is_hit[i] = true);
    let weights: Vec<f64> = list.entries.iter().map(|e| hit_weight(e.metric, p)).collect();
    let hit_total: f64 = hits.iter().map(|&i| weights[i]).sum();
    if !(hit_total > 0.0) {
        return Err(Error::ZeroDenominator("hit weight of the gene set"));
    }
    let miss_total = (n - hits.len()) as f64;
    let (mut hit_sum, mut misses) = (0.0, 0usize);
    let mut running = Vec::with_capacity(n);
    let (mut best, mut position) = (0.0f64, 1);
    for j in 0..n {
        if is_hit[j] {
            hit_sum += weights[j];
        } else {
            misses += 1;
        }
        let es = hit_sum / hit_total - misses as f64 / miss_total;
        if es.abs() > best.abs() {
            best = es;
            position = j + 1;
        }
        running.push(es);
    }
    Ok(Enrichment {
        es: best,
        position,
        running,
    })
}

/// Enrichment score from sorted hit positions only. The running sum moves
/// monotonically between hits, so its extremes sit just before or just at a
/// hit. `O(m)` for `m` hits.
pub(crate) fn es_from_positions(positions: &[usize], weights: &[f64], n: usize) -> f64 {
    let m = positions.len();
    let hit_total: f64 = weights.iter().sum();
    let miss_total = (n - m) as f64;
    let mut hit_sum = 0.0;
    let mut best = 0.0f64;
    for (i, (&pos, &w)) in positions.iter().zip(weights).enumerate() {
        let misses = (pos - i) as f64 / miss_total;
        if pos > 0 {
            let before = hit_sum / hit_total - misses;
            if before.abs() > best.abs() {
                best = before;
            }
        }
        hit_sum += w;
        let after = hit_sum / hit_total - misses;
        if after.abs() > best.abs() {
            best = after;
        }
    }
    best
}
