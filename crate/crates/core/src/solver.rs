//! The augmentation loop: start from the empty subgraph and apply
//! augmenting trails until every vertex is filled or no trail is found.

use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Dart, EdgeId, Graph, VertexId};
use crate::klimited::{KLimitedSubgraph, Trail};
use crate::search::trace::{TraceEvent, TraceSink};
use crate::search::{find_augmenting_trail_with, SearchStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("edge ({u}, {v}) joins two vertices of the same part")]
    InvalidBipartition { u: usize, v: usize },
    #[error("bipartition has {got} entries for {n} vertices")]
    BipartitionSize { got: usize, n: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    FactorFound,
    /// The search found no augmenting trail for the current subgraph.
    NoFactor,
    InfeasiblePrecheck,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::FactorFound => "factor_found",
            SolveStatus::NoFactor => "no_factor",
            SolveStatus::InfeasiblePrecheck => "infeasible_precheck",
        })
    }
}

/// Elementary necessary conditions a k-factor must meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Infeasibility {
    OddDegreeSum { k: usize, n: usize },
    KTooLarge { k: usize, n: usize },
    DegreeTooSmall { vertex: usize, degree: usize, k: usize },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::OddDegreeSum { k, n } => write!(f, "parity: k*n = {} is odd", k * n),
            Infeasibility::KTooLarge { k, n } => write!(f, "k = {k} exceeds n - 1 = {}", n - 1),
            Infeasibility::DegreeTooSmall { vertex, degree, k } => {
                write!(f, "degree: vertex {vertex} has degree {degree} < {k}")
            }
        }
    }
}

/// Empty when all conditions pass. Only the first low-degree vertex is
/// reported.
pub fn feasibility_precheck(g: &Graph, k: usize) -> Vec<Infeasibility> {
    let n = g.vertex_count();
    let mut reasons = Vec::new();
    if (k * n) % 2 == 1 {
        reasons.push(Infeasibility::OddDegreeSum { k, n });
    }
    if n > 0 && k > n - 1 {
        reasons.push(Infeasibility::KTooLarge { k, n });
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < k) {
        reasons.push(Infeasibility::DegreeTooSmall { vertex: v.0, degree: g.degree(v), k });
    }
    reasons
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub augmentations: u64,
    pub trails_examined: u64,
    pub blossom_operations: u64,
    pub layered_graphs_built: u64,
    pub abandoned_targets: u64,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl SolveStats {
    fn absorb(&mut self, search: &SearchStats) {
        self.trails_examined = search.trails_examined;
        self.blossom_operations = search.blossom_operations;
        self.layered_graphs_built = search.layered_graphs_built;
        self.abandoned_targets = search.abandoned_targets;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub k: usize,
    /// Present iff `status` is `FactorFound`; sorted edge ids.
    pub factor: Option<Vec<EdgeId>>,
    pub infeasibility: Vec<Infeasibility>,
    pub stats: SolveStats,
}

#[derive(Serialize)]
struct ResultDocument<'a> {
    status: SolveStatus,
    k: usize,
    n: usize,
    m: usize,
    factor: Option<Vec<[usize; 2]>>,
    infeasibility: &'a [Infeasibility],
    stats: &'a SolveStats,
}

impl SolveOutcome {
    pub fn is_factor_found(&self) -> bool {
        self.status == SolveStatus::FactorFound
    }

    /// Structured result document with stable key order.
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let factor = self.factor.as_ref().map(|edges| {
            let mut pairs: Vec<[usize; 2]> = edges
                .iter()
                .map(|&e| {
                    let (a, b) = g.endpoints(e);
                    [a.0, b.0]
                })
                .collect();
            pairs.sort_unstable();
            pairs
        });
        serde_json::to_value(ResultDocument {
            status: self.status,
            k: self.k,
            n: g.vertex_count(),
            m: g.edge_count(),
            factor,
            infeasibility: &self.infeasibility,
            stats: &self.stats,
        })
        .expect("result document serializes")
    }
}

/// Hooks into a running solve.
pub trait SolveObserver {
    /// Called after each augmentation with the subgraph before and after.
    fn augmented(&mut self, _g: &Graph, _trail: &Trail, _before: &KLimitedSubgraph, _after: &KLimitedSubgraph) {}

    fn trace(&mut self, _event: &TraceEvent<'_>) {}
}

/// Observer that does nothing.
pub struct Silent;

impl SolveObserver for Silent {}

/// Collects every applied trail.
#[derive(Debug, Default)]
pub struct TrailLog {
    pub trails: Vec<Trail>,
    pub sigmas: Vec<usize>,
}

impl SolveObserver for TrailLog {
    fn augmented(&mut self, _g: &Graph, trail: &Trail, before: &KLimitedSubgraph, after: &KLimitedSubgraph) {
        if self.sigmas.is_empty() {
            self.sigmas.push(before.sigma());
        }
        self.sigmas.push(after.sigma());
        self.trails.push(trail.clone());
    }
}

struct ObserverTrace<'a>(&'a mut dyn SolveObserver);

impl TraceSink for ObserverTrace<'_> {
    fn event(&mut self, event: &TraceEvent<'_>) {
        self.0.trace(event);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    /// Vertices whose member degree differs from `k`, with that degree.
    pub violations: Vec<(VertexId, usize)>,
}

impl FactorReport {
    pub fn is_factor(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every vertex has exactly `k` incident edges in `edges`.
pub fn verify_factor(g: &Graph, k: usize, edges: &[EdgeId]) -> Result<FactorReport, SolveError> {
    let mut deg = vec![0usize; g.vertex_count()];
    let mut seen = vec![false; g.edge_count()];
    for &e in edges {
        if e.0 >= g.edge_count() {
            return Err(SolveError::UnknownEdge(e));
        }
        if std::mem::replace(&mut seen[e.0], true) {
            continue;
        }
        let (a, b) = g.endpoints(e);
        deg[a.0] += 1;
        deg[b.0] += 1;
    }
    let violations = deg.iter().enumerate().filter(|&(_, &d)| d != k).map(|(v, &d)| (VertexId(v), d)).collect();
    Ok(FactorReport { violations })
}

pub fn compute_k_factor(g: &Graph, k: usize) -> Result<SolveOutcome, SolveError> {
    compute_k_factor_with(g, k, &mut Silent)
}

pub fn compute_k_factor_with(
    g: &Graph,
    k: usize,
    observer: &mut dyn SolveObserver,
) -> Result<SolveOutcome, SolveError> {
    run(g, k, observer, |g, m, stats, observer| find_augmenting_trail_with(g, m, stats, &mut ObserverTrace(observer)))
}

/// Bipartite variant: augmenting paths by breadth-first search. `sides`
/// gives each vertex's part; `None` computes a 2-coloring.
pub fn compute_bipartite_k_factor(g: &Graph, sides: Option<&[bool]>, k: usize) -> Result<SolveOutcome, SolveError> {
    compute_bipartite_k_factor_with(g, sides, k, &mut Silent)
}

pub fn compute_bipartite_k_factor_with(
    g: &Graph,
    sides: Option<&[bool]>,
    k: usize,
    observer: &mut dyn SolveObserver,
) -> Result<SolveOutcome, SolveError> {
    match sides {
        Some(s) => check_bipartition(g, s)?,
        None => {
            two_coloring(g).ok_or(SolveError::NotBipartite)?;
        }
    }
    run(g, k, observer, |g, m, stats, _| {
        stats.trails_examined += 1;
        find_augmenting_path(g, m)
    })
}

fn run<F>(g: &Graph, k: usize, observer: &mut dyn SolveObserver, mut search: F) -> Result<SolveOutcome, SolveError>
where
    F: FnMut(&Graph, &KLimitedSubgraph, &mut SearchStats, &mut dyn SolveObserver) -> Option<Trail>,
{
    if k == 0 {
        return Err(SolveError::ZeroK);
    }
    let clock = Instant::now();
    let mut stats = SolveStats::default();
    let infeasibility = feasibility_precheck(g, k);
    if !infeasibility.is_empty() {
        stats.elapsed = clock.elapsed();
        return Ok(SolveOutcome { status: SolveStatus::InfeasiblePrecheck, k, factor: None, infeasibility, stats });
    }

    let mut m = KLimitedSubgraph::empty(g, k).expect("k checked above");
    let mut search_stats = SearchStats::default();
    while !m.is_k_factor() {
        let Some(trail) = search(g, &m, &mut search_stats, observer) else {
            break;
        };
        let before = m.clone();
        if let Err(defect) = m.apply_trail(g, &trail) {
            panic!("search returned an invalid augmenting trail {trail}: {defect}");
        }
        assert_augmentation_ledger(g, &trail, &before, &m);
        stats.augmentations += 1;
        observer.augmented(g, &trail, &before, &m);
    }
    stats.absorb(&search_stats);

    let outcome = if m.is_k_factor() {
        let factor = m.member_edges();
        let report = verify_factor(g, k, &factor).expect("member edges belong to g");
        assert!(report.is_factor(), "factor_found with an invalid factor: {:?}", report.violations);
        assert_eq!(stats.augmentations as usize * 2, k * g.vertex_count());
        SolveOutcome { status: SolveStatus::FactorFound, k, factor: Some(factor), infeasibility, stats }
    } else {
        SolveOutcome { status: SolveStatus::NoFactor, k, factor: None, infeasibility, stats }
    };
    let mut outcome = outcome;
    outcome.stats.elapsed = clock.elapsed();
    Ok(outcome)
}

/// Sigma drops by exactly two, inner vertices keep their degree and the
/// endpoints gain one each (two for a closed trail).
fn assert_augmentation_ledger(g: &Graph, trail: &Trail, before: &KLimitedSubgraph, after: &KLimitedSubgraph) {
    assert_eq!(after.sigma() + 2, before.sigma(), "sigma must drop by exactly 2");
    let start = trail.start(g).expect("trail is non-empty");
    let end = trail.end(g).expect("trail is non-empty");
    for v in trail.vertices(g) {
        let gain = usize::from(v == start) + usize::from(v == end);
        assert_eq!(after.degree(v), before.degree(v) + gain, "degree ledger broken at {v}");
        assert!(after.degree(v) <= after.k());
    }
    debug_assert!(after.check_consistency(g));
}

/// Breadth-first 2-coloring; `None` if some component has an odd cycle.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    for root in g.vertices() {
        if color[root.0].is_some() {
            continue;
        }
        color[root.0] = Some(false);
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            let cx = color[x.0].expect("queued vertices are colored");
            for &d in g.out_darts(x) {
                let y = g.head(d);
                match color[y.0] {
                    None => {
                        color[y.0] = Some(!cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
}

fn check_bipartition(g: &Graph, sides: &[bool]) -> Result<(), SolveError> {
    if sides.len() != g.vertex_count() {
        return Err(SolveError::BipartitionSize { got: sides.len(), n: g.vertex_count() });
    }
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        if sides[a.0] == sides[b.0] {
            return Err(SolveError::InvalidBipartition { u: a.0, v: b.0 });
        }
    }
    Ok(())
}

/// Shortest alternating path from each unfilled start in turn. On a
/// bipartite graph every vertex is reached at a fixed parity, so marking
/// vertices once keeps the result a simple path.
fn find_augmenting_path(g: &Graph, m: &KLimitedSubgraph) -> Option<Trail> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<Dart>> = vec![None; n];
    let mut visited = vec![usize::MAX; n];
    let mut queue = VecDeque::new();

    for start in m.unfilled_vertices() {
        let stamp = start.0;
        visited[start.0] = stamp;
        queue.clear();
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &blue in g.out_darts(x) {
                if m.is_member(blue.edge()) {
                    continue;
                }
                let y = g.head(blue);
                if visited[y.0] == stamp {
                    continue;
                }
                visited[y.0] = stamp;
                parent[y.0] = Some(blue);
                if !m.is_filled(y) {
                    return Some(walk_back(g, &parent, start, y));
                }
                for &red in g.out_darts(y) {
                    if !m.is_member(red.edge()) {
                        continue;
                    }
                    let z = g.head(red);
                    if visited[z.0] == stamp || !m.is_filled(z) {
                        continue;
                    }
                    visited[z.0] = stamp;
                    parent[z.0] = Some(red);
                    queue.push_back(z);
                }
            }
        }
    }
    None
}

fn walk_back(g: &Graph, parent: &[Option<Dart>], start: VertexId, end: VertexId) -> Trail {
    let mut darts = Vec::new();
    let mut at = end;
    while at != start {
        let d = parent[at.0].expect("every reached vertex has a parent");
        darts.push(d);
        at = g.tail(d);
    }
    darts.reverse();
    Trail::from_darts(darts)
}
