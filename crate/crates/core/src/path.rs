//! Dynamic-programming path optimization over per-time candidate sets.
//!
//! Candidates are identified by `(time n, index m)` with `counts[n]` candidates
//! at time `n`. A score closure `score(n, m, prev)` gives the contribution of
//! candidate `m` at time `n` when the candidate selected at `n − 1` is `prev`
//! (`None` at `n = 0`). The path score is the left-to-right sum of those
//! contributions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};

/// Best partial-path values `U(m, n)` and predecessors `q(m, n)`, stored
/// `max_points × n_times` column by column. Entries beyond `counts[n]` hold NaN
/// (values) and `None` (predecessors); predecessors at the first time are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct DpState {
    max_points: usize,
    n_times: usize,
    values: Vec<f64>,
    predecessors: Vec<Option<u32>>,
}

impl DpState {
    pub fn max_points(&self) -> usize {
        self.max_points
    }

    pub fn n_times(&self) -> usize {
        self.n_times
    }

    pub fn value(&self, m: usize, n: usize) -> f64 {
        self.values[n * self.max_points + m]
    }

    pub fn predecessor(&self, m: usize, n: usize) -> Option<usize> {
        self.predecessors[n * self.max_points + m].map(|q| q as usize)
    }
}

/// Optimal index path, its score and the DP tables.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalPath {
    pub indices: Vec<usize>,
    pub score: f64,
    pub state: DpState,
}

fn check_counts(counts: &[usize]) -> Result<()> {
    if counts.is_empty() {
        bail!(InvalidInput, "path optimization over zero time steps");
    }
    if let Some(n) = counts.iter().position(|&c| c == 0) {
        bail!(Contract, "no candidates at time index {n}");
    }
    if counts.iter().any(|&c| c > u32::MAX as usize) {
        bail!(InvalidInput, "too many candidates per time step");
    }
    Ok(())
}

/// Maximizes the path score exactly. Argmax ties go to the lowest index.
pub fn optimal_path<F>(counts: &[usize], mut score: F) -> Result<OptimalPath>
where
    F: FnMut(usize, usize, Option<usize>) -> f64,
{
    check_counts(counts)?;
    let n_times = counts.len();
    let max_points = *counts.iter().max().unwrap_or(&0);
    let mut values = vec![f64::NAN; max_points * n_times];
    let mut predecessors = vec![None; max_points * n_times];

    for m in 0..counts[0] {
        values[m] = score(0, m, None);
    }
    for n in 1..n_times {
        let (prev, cur) = values.split_at_mut(n * max_points);
        let prev = &prev[(n - 1) * max_points..];
        for m in 0..counts[n] {
            let mut best_k = 0;
            let mut best = f64::NEG_INFINITY;
            for k in 0..counts[n - 1] {
                let v = prev[k] + score(n, m, Some(k));
                if k == 0 || v > best {
                    best = v;
                    best_k = k;
                }
            }
            cur[m] = best;
            predecessors[n * max_points + m] = Some(best_k as u32);
        }
    }

    let last = (n_times - 1) * max_points;
    let mut end = 0;
    for m in 1..counts[n_times - 1] {
        if values[last + m] > values[last + end] {
            end = m;
        }
    }
    let score_total = values[last + end];
    let mut indices = vec![0usize; n_times];
    indices[n_times - 1] = end;
    for n in (1..n_times).rev() {
        let m = indices[n];
        indices[n - 1] = predecessors[n * max_points + m].map(|q| q as usize).unwrap_or(0);
    }
    Ok(OptimalPath { indices, score: score_total, state: DpState { max_points, n_times, values, predecessors } })
}

/// Greedy forward/backward selection from the best starting candidate.
///
/// The start is the `(n, m)` maximizing `start(n, m)` (earliest time, then
/// lowest index, on ties). Moving away from it, each step picks the candidate
/// maximizing `step(n, m, nb_time, nb_index)`, where `nb_index` was chosen at
/// the adjacent, already fixed time `nb_time` (`n − 1` going forward, `n + 1`
/// going backward).
pub fn greedy_path<S, F>(counts: &[usize], mut start: S, mut step: F) -> Result<Vec<usize>>
where
    S: FnMut(usize, usize) -> f64,
    F: FnMut(usize, usize, usize, usize) -> f64,
{
    check_counts(counts)?;
    let n_times = counts.len();
    let (mut n0, mut m0, mut best) = (0, 0, f64::NEG_INFINITY);
    for (n, &c) in counts.iter().enumerate() {
        for m in 0..c {
            let v = start(n, m);
            if v > best {
                (n0, m0, best) = (n, m, v);
            }
        }
    }
    let mut indices = vec![0usize; n_times];
    indices[n0] = m0;
    let mut pick = |n: usize, nb_time: usize, nb_index: usize| {
        let mut best_m = 0;
        let mut best = f64::NEG_INFINITY;
        for m in 0..counts[n] {
            let v = step(n, m, nb_time, nb_index);
            if v > best {
                best = v;
                best_m = m;
            }
        }
        best_m
    };
    for n in n0 + 1..n_times {
        indices[n] = pick(n, n - 1, indices[n - 1]);
    }
    for n in (0..n0).rev() {
        indices[n] = pick(n, n + 1, indices[n + 1]);
    }
    Ok(indices)
}

/// Left-to-right sum of `score` along `indices`.
pub fn score_of<F>(indices: &[usize], mut score: F) -> f64
where
    F: FnMut(usize, usize, Option<usize>) -> f64,
{
    let mut total = 0.0;
    for (n, &m) in indices.iter().enumerate() {
        let prev = if n == 0 { None } else { Some(indices[n - 1]) };
        total += score(n, m, prev);
    }
    total
}
