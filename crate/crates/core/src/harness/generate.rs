//! Exhaustive and seeded random graph families.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub const MAX_EXHAUSTIVE_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("exhaustive enumeration supports n <= {MAX_EXHAUSTIVE_N}, got {0}")]
    TooLarge(usize),
    #[error("no {d}-regular graph on {n} vertices")]
    InfeasibleRegular { n: usize, d: usize },
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Vertex pairs `(u, v)`, `u < v`, in lexicographic order; bit `i` of an
/// enumeration mask selects pair `i`.
pub fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// All `2^(n(n-1)/2)` labeled simple graphs on `n` vertices in mask order.
pub fn enumerate_graphs(n: usize) -> Result<impl ExactSizeIterator<Item = Graph>, GenerateError> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(GenerateError::TooLarge(n));
    }
    let pairs = vertex_pairs(n);
    let total = 1usize << pairs.len();
    Ok((0..total).map(move |mask| graph_from_mask(n, &pairs, mask)))
}

pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: usize) -> Graph {
    let edges: Vec<(usize, usize)> =
        pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
    Graph::from_edges(n, &edges).expect("pairs are distinct and loop-free")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum RandomModel {
    Gnp { p: f64 },
    DRegular { d: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomSpec {
    pub n: usize,
    #[serde(flatten)]
    pub model: RandomModel,
    pub seed: u64,
}

/// Deterministic for a fixed seed. Edges come out sorted.
pub fn random_graph(spec: RandomSpec) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut edges = match spec.model {
        RandomModel::Gnp { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenerateError::BadProbability(p));
            }
            vertex_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect()
        }
        RandomModel::DRegular { d } => {
            if (d >= n && !(d == 0 && n == 0)) || (d * n) % 2 == 1 {
                return Err(GenerateError::InfeasibleRegular { n, d });
            }
            random_regular_edges(n, d, &mut rng)
        }
    };
    edges.sort_unstable();
    Ok(Graph::from_edges(n, &edges).expect("generator emits simple graphs"))
}

/// Pairing model: `d` points per vertex are matched two at a time at
/// random; a pair that would form a loop or a parallel edge is redrawn, and
/// the whole pairing restarts when no admissible pair is left.
fn random_regular_edges(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    'restart: loop {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(n * d / 2);
        let mut edges = Vec::with_capacity(n * d / 2);
        let mut misses = 0usize;

        while !points.is_empty() {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            let (u, v) = (points[i].min(points[j]), points[i].max(points[j]));
            if i != j && u != v && !present.contains(&(u, v)) {
                present.insert((u, v));
                edges.push((u, v));
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                misses = 0;
                continue;
            }
            misses += 1;
            if misses > 64 && !has_admissible_pair(&points, &present) {
                continue 'restart;
            }
        }
        return edges;
    }
}

fn has_admissible_pair(points: &[usize], present: &HashSet<(usize, usize)>) -> bool {
    let mut vertices: Vec<usize> = points.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    vertices.iter().enumerate().any(|(a, &u)| vertices[a + 1..].iter().any(|&v| !present.contains(&(u, v))))
}
