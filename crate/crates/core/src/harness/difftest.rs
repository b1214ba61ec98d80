//! Differential testing of the solver against the brute-force oracle.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::generate::{enumerate_graphs, random_graph, GenerateError, RandomModel, RandomSpec};
use super::oracle::{brute_force_augmenting_trail, brute_force_k_factor, is_k_factor};
use crate::graph::Graph;
use crate::klimited::{KLimitedSubgraph, Trail};
use crate::solver::{compute_k_factor_with, SolveObserver, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DiffMode {
    /// Every labeled graph on exactly `n` vertices.
    Exhaustive { n: usize },
    /// `count` graphs drawn from `model`; instance `i` uses a seed derived
    /// from the base seed and `i`.
    Random { count: usize, n: usize, model: RandomModel },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffConfig {
    #[serde(flatten)]
    pub mode: DiffMode,
    pub ks: Vec<usize>,
    pub seed: u64,
    pub oracle_cap: usize,
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

impl DiffConfig {
    pub fn new(mode: DiffMode, ks: Vec<usize>) -> Self {
        // n <= 12 graphs have at most 66 edges; the degree-pruned oracle
        // handles those quickly.
        DiffConfig { mode, ks, seed: 0, oracle_cap: 66, out_dir: None }
    }
}

#[derive(Debug, Error)]
pub enum DiffError {
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("cannot write counterexample to {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DiffTotals {
    pub n: usize,
    pub k: usize,
    pub instances: u64,
    pub agree_yes: u64,
    pub agree_no: u64,
    /// Oracle found a factor, solver did not.
    pub solver_missed: u64,
    /// Solver reported a factor that is not one.
    pub solver_false: u64,
    /// Solver factor is valid but the oracle found none; signals an oracle bug.
    pub oracle_missed: u64,
    /// Oracle skipped because the edge cap was exceeded.
    pub unchecked: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Disagreement {
    SolverMissed,
    SolverFalse,
    OracleMissed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub kind: Disagreement,
    pub n: usize,
    pub k: usize,
    pub hash: String,
    /// For misses: whether an augmenting trail exists for the subgraph the
    /// solver stopped at (a search gap) or not (no trail exists at all).
    pub trail_exists_at_stop: Option<bool>,
    pub path: Option<String>,
    pub repro: String,
    #[serde(skip)]
    pub document: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    pub config: DiffConfig,
    pub totals: Vec<DiffTotals>,
    pub counterexamples: Vec<Counterexample>,
    pub wall_time_ms: f64,
}

impl DiffReport {
    pub fn solver_false(&self) -> u64 {
        self.totals.iter().map(|t| t.solver_false).sum()
    }

    pub fn solver_missed(&self) -> u64 {
        self.totals.iter().map(|t| t.solver_missed).sum()
    }

    pub fn oracle_missed(&self) -> u64 {
        self.totals.iter().map(|t| t.oracle_missed).sum()
    }

    pub fn instances(&self) -> u64 {
        self.totals.iter().map(|t| t.instances).sum()
    }

    /// Stable-key JSON with timing removed, for reproducibility checks.
    pub fn body_without_timing(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("report is an object").remove("wall_time_ms");
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    AgreeYes,
    AgreeNo,
    Unchecked,
    Disagree(Disagreement),
}

struct Evaluation {
    n: usize,
    k: usize,
    verdict: Verdict,
    trail_exists_at_stop: Option<bool>,
    document: String,
}

#[derive(Default)]
struct LastState(Option<KLimitedSubgraph>);

impl SolveObserver for LastState {
    fn augmented(&mut self, _g: &Graph, _t: &Trail, _b: &KLimitedSubgraph, after: &KLimitedSubgraph) {
        self.0 = Some(after.clone());
    }
}

/// Classifies one instance. Panics never escape: solver assertion failures
/// are reported as `solver_false`.
fn evaluate(g: &Graph, k: usize, cap: usize) -> Evaluation {
    let mut last = LastState::default();
    let solved = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| compute_k_factor_with(g, k, &mut last)));
    let document = g.to_edge_list();
    let base = |verdict, trail_exists_at_stop| Evaluation {
        n: g.vertex_count(),
        k,
        verdict,
        trail_exists_at_stop,
        document: document.clone(),
    };

    let outcome = match solved {
        Ok(Ok(outcome)) => outcome,
        _ => return base(Verdict::Disagree(Disagreement::SolverFalse), None),
    };
    let solver_yes = match (&outcome.status, &outcome.factor) {
        (SolveStatus::FactorFound, Some(f)) if is_k_factor(g, k, f) => true,
        (SolveStatus::FactorFound, _) => return base(Verdict::Disagree(Disagreement::SolverFalse), None),
        _ => false,
    };
    let oracle = match brute_force_k_factor(g, k, cap) {
        Ok(found) => found,
        Err(_) => return base(Verdict::Unchecked, None),
    };
    match (solver_yes, oracle.is_some()) {
        (true, true) => base(Verdict::AgreeYes, None),
        (false, false) => base(Verdict::AgreeNo, None),
        (true, false) => base(Verdict::Disagree(Disagreement::OracleMissed), None),
        (false, true) => {
            let stop = last.0.unwrap_or_else(|| KLimitedSubgraph::empty(g, k).expect("k >= 1"));
            let members: Vec<bool> = g.edges().map(|e| stop.is_member(e)).collect();
            let exists = brute_force_augmenting_trail(g, k, &members).is_some();
            base(Verdict::Disagree(Disagreement::SolverMissed), Some(exists))
        }
    }
}

fn instance_seed(base: u64, i: usize) -> u64 {
    base ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn instance_hash(document: &str, k: usize) -> String {
    let digest = Sha256::digest(format!("k={k}\n{document}").as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn run_difftest(config: &DiffConfig) -> Result<DiffReport, DiffError> {
    if config.ks.contains(&0) {
        return Err(DiffError::ZeroK);
    }
    let clock = Instant::now();
    let graphs: Vec<Graph> = match config.mode {
        DiffMode::Exhaustive { n } => enumerate_graphs(n)?.collect(),
        DiffMode::Random { count, n, model } => (0..count)
            .map(|i| random_graph(RandomSpec { n, model, seed: instance_seed(config.seed, i) }))
            .collect::<Result<_, _>>()?,
    };

    let jobs: Vec<(usize, usize)> = (0..graphs.len()).flat_map(|i| config.ks.iter().map(move |&k| (i, k))).collect();
    let results: Vec<Evaluation> = jobs.par_iter().map(|&(i, k)| evaluate(&graphs[i], k, config.oracle_cap)).collect();

    let mut totals: BTreeMap<(usize, usize), DiffTotals> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for r in results {
        let t = totals.entry((r.n, r.k)).or_insert(DiffTotals { n: r.n, k: r.k, ..Default::default() });
        t.instances += 1;
        match r.verdict {
            Verdict::AgreeYes => t.agree_yes += 1,
            Verdict::AgreeNo => t.agree_no += 1,
            Verdict::Unchecked => t.unchecked += 1,
            Verdict::Disagree(kind) => {
                match kind {
                    Disagreement::SolverMissed => t.solver_missed += 1,
                    Disagreement::SolverFalse => t.solver_false += 1,
                    Disagreement::OracleMissed => t.oracle_missed += 1,
                }
                let hash = instance_hash(&r.document, r.k);
                counterexamples.push(Counterexample {
                    kind,
                    n: r.n,
                    k: r.k,
                    repro: String::new(),
                    path: None,
                    hash,
                    trail_exists_at_stop: r.trail_exists_at_stop,
                    document: r.document,
                });
            }
        }
    }

    if let Some(dir) = &config.out_dir {
        std::fs::create_dir_all(dir).map_err(|source| DiffError::Io { path: dir.clone(), source })?;
    }
    for cx in &mut counterexamples {
        let file = match &config.out_dir {
            Some(dir) => dir.join(counterexample_file_name(cx)),
            None => PathBuf::from(counterexample_file_name(cx)),
        };
        cx.repro = format!("kfactor solve --k {} --input {} --oracle-check", cx.k, file.display());
        if config.out_dir.is_some() {
            write_counterexample(&file, cx)?;
            cx.path = Some(file.display().to_string());
        }
    }

    Ok(DiffReport {
        config: config.clone(),
        totals: totals.into_values().collect(),
        counterexamples,
        wall_time_ms: clock.elapsed().as_secs_f64() * 1e3,
    })
}

fn counterexample_file_name(cx: &Counterexample) -> String {
    let kind = match cx.kind {
        Disagreement::SolverMissed => "missed",
        Disagreement::SolverFalse => "false",
        Disagreement::OracleMissed => "oracle",
    };
    format!("{kind}-k{}-{}.txt", cx.k, cx.hash)
}

fn write_counterexample(path: &Path, cx: &Counterexample) -> Result<(), DiffError> {
    let body = format!(
        "# kind: {}\n# k: {}\n# repro: {}\n{}",
        serde_json::to_value(cx.kind).expect("kind serializes").as_str().unwrap_or_default(),
        cx.k,
        cx.repro,
        cx.document
    );
    std::fs::write(path, body).map_err(|source| DiffError::Io { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_n4_k1() {
        let report = run_difftest(&DiffConfig::new(DiffMode::Exhaustive { n: 4 }, vec![1])).unwrap();
        assert_eq!(report.instances(), 64);
        let t = report.totals[0];
        assert_eq!(t.agree_yes + t.agree_no + t.solver_missed + t.solver_false + t.oracle_missed + t.unchecked, 64);
        assert_eq!(report.solver_false(), 0);
        assert_eq!(report.solver_missed(), 0);
    }

    #[test]
    fn seeds_are_distinct() {
        assert_ne!(instance_seed(7, 0), instance_seed(7, 1));
        assert_ne!(instance_seed(7, 0), instance_seed(8, 0));
    }

    #[test]
    fn rejects_zero_k() {
        assert!(matches!(
            run_difftest(&DiffConfig::new(DiffMode::Exhaustive { n: 3 }, vec![0])),
            Err(DiffError::ZeroK)
        ));
    }
}
