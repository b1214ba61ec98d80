//! Timing ladder over seeded random regular graphs.

use serde::Serialize;
use thiserror::Error;

use super::generate::{random_graph, GenerateError, RandomModel, RandomSpec};
use crate::solver::{compute_k_factor, SolveError, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BenchSpec {
    pub n: usize,
    pub d: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub m: usize,
    pub seed: u64,
    pub status: SolveStatus,
    pub augmentations: u64,
    pub blossom_operations: u64,
    pub repeats: usize,
    /// Median over the repeats.
    pub seconds: f64,
    /// `seconds / (k * m * n)`, scaled by 1e9.
    pub ratio_ns: f64,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("bench ladder is empty")]
    EmptyLadder,
    #[error("bench ladder must be strictly increasing in n")]
    NotIncreasing,
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Solves one seeded `d`-regular instance per rung, `repeats` times, and
/// reports the median solve time. Graph generation is not timed.
pub fn run_bench(ladder: &[BenchSpec], seed: u64, repeats: usize) -> Result<Vec<BenchRow>, BenchError> {
    if ladder.is_empty() {
        return Err(BenchError::EmptyLadder);
    }
    if ladder.windows(2).any(|w| w[0].n >= w[1].n) {
        return Err(BenchError::NotIncreasing);
    }
    let mut rows = Vec::with_capacity(ladder.len());
    for spec in ladder {
        let g = random_graph(RandomSpec { n: spec.n, model: RandomModel::DRegular { d: spec.d }, seed })?;
        let mut times = Vec::with_capacity(repeats.max(1));
        let mut outcome = compute_k_factor(&g, spec.k)?;
        times.push(outcome.stats.elapsed.as_secs_f64());
        for _ in 1..repeats {
            let again = compute_k_factor(&g, spec.k)?;
            debug_assert_eq!(again.factor, outcome.factor);
            times.push(again.stats.elapsed.as_secs_f64());
            outcome = again;
        }
        times.sort_by(f64::total_cmp);
        let seconds = times[times.len() / 2];
        let work = (spec.k * g.edge_count() * spec.n).max(1) as f64;
        rows.push(BenchRow {
            n: spec.n,
            d: spec.d,
            k: spec.k,
            m: g.edge_count(),
            seed,
            status: outcome.status,
            augmentations: outcome.stats.augmentations,
            blossom_operations: outcome.stats.blossom_operations,
            repeats: times.len(),
            seconds,
            ratio_ns: seconds / work * 1e9,
        });
    }
    Ok(rows)
}

/// Plain-text table, one row per rung.
pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>7} {:>3} {:>3} {:>8} {:>14} {:>10} {:>9} {:>12} {:>12}\n",
        "n", "d", "k", "m", "status", "augments", "blossoms", "seconds", "ns/(kmn)"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>7} {:>3} {:>3} {:>8} {:>14} {:>10} {:>9} {:>12.6} {:>12.6}\n",
            r.n,
            r.d,
            r.k,
            r.m,
            r.status.to_string(),
            r.augmentations,
            r.blossom_operations,
            r.seconds,
            r.ratio_ns
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_validation() {
        assert!(matches!(run_bench(&[], 1, 1), Err(BenchError::EmptyLadder)));
        let bad = [BenchSpec { n: 20, d: 4, k: 2 }, BenchSpec { n: 20, d: 4, k: 2 }];
        assert!(matches!(run_bench(&bad, 1, 1), Err(BenchError::NotIncreasing)));
        assert!(matches!(run_bench(&[BenchSpec { n: 5, d: 3, k: 1 }], 1, 1), Err(BenchError::Generate(_))));
    }

    #[test]
    fn single_small_rung() {
        let rows = run_bench(&[BenchSpec { n: 100, d: 4, k: 2 }], 3, 3).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].m, 200);
        assert_eq!(rows[0].status, SolveStatus::FactorFound);
        assert_eq!(rows[0].augmentations, 100);
        assert!(format_table(&rows).lines().count() == 2);
    }
}
