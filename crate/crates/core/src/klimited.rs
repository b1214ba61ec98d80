//! k-limited spanning subgraphs, augmenting trails and the augmentation step.
//!
//! Member edges are "red", non-members "blue". A vertex is filled when its
//! member degree reaches `k`. The deficit total `sigma = Σ (k - deg(v))`
//! is cached and updated incrementally.

use std::fmt;

use thiserror::Error;

use crate::graph::{Dart, EdgeId, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgraphError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("edge {0} listed twice")]
    DuplicateEdge(EdgeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {vertex} would exceed degree {k}")]
    DegreeExceeded { vertex: VertexId, k: usize },
}

/// First clause of the augmenting-trail definition a dart sequence fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrailDefect {
    #[error("trail has no darts")]
    Empty,
    #[error("dart {0} does not belong to this graph")]
    ForeignDart(Dart),
    #[error("subgraph was built for a different graph")]
    GraphMismatch,
    #[error("darts {0} and {1} do not chain")]
    NotChained(usize, usize),
    #[error("trail length {0} is even")]
    EvenLength(usize),
    #[error("edge {edge} used twice (positions {first} and {second})")]
    RepeatedEdge { edge: EdgeId, first: usize, second: usize },
    #[error("dart at position {0} has the wrong color")]
    ColorMismatch(usize),
    #[error("inner vertex {vertex} (after position {position}) is unfilled")]
    InnerUnfilled { position: usize, vertex: VertexId },
    #[error("endpoint {0} is filled")]
    EndpointFilled(VertexId),
    #[error("closed trail at {vertex} needs degree below k - 1, has {degree}")]
    ClosedDeficitTooSmall { vertex: VertexId, degree: usize },
}

/// A dart sequence read as an undirected trail. Darts rather than vertices
/// so that vertex revisits stay unambiguous.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trail {
    darts: Vec<Dart>,
}

impl Trail {
    pub fn from_darts(darts: Vec<Dart>) -> Self {
        Trail { darts }
    }

    /// Builds a trail from a vertex walk; `None` if consecutive vertices are
    /// not adjacent.
    pub fn from_vertices(g: &Graph, walk: &[usize]) -> Option<Self> {
        let darts = walk
            .windows(2)
            .map(|w| {
                let e = g.find_edge(VertexId(w[0]), VertexId(w[1]))?;
                let forward = Dart::new(e, false);
                Some(if g.tail(forward).0 == w[0] { forward } else { forward.opposite() })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Trail { darts })
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn start(&self, g: &Graph) -> Option<VertexId> {
        self.darts.first().map(|&d| g.tail(d))
    }

    pub fn end(&self, g: &Graph) -> Option<VertexId> {
        self.darts.last().map(|&d| g.head(d))
    }

    pub fn is_closed(&self, g: &Graph) -> bool {
        !self.darts.is_empty() && self.start(g) == self.end(g)
    }

    /// `v0, v1, ..., v_len`.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.darts.len() + 1);
        if let Some(&first) = self.darts.first() {
            out.push(g.tail(first));
        }
        out.extend(self.darts.iter().map(|&d| g.head(d)));
        out
    }

    /// True when no vertex repeats, i.e. the trail is a path.
    pub fn is_vertex_simple(&self, g: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.vertices(g).into_iter().all(|v| seen.insert(v))
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.darts.iter().map(|d| d.edge())
    }
}

impl fmt::Display for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.darts.iter().map(|d| d.0.to_string()).collect();
        write!(f, "[{}]", ids.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLimitedSubgraph {
    k: usize,
    in_m: Vec<bool>,
    deg: Vec<usize>,
    members: usize,
    sigma: usize,
}

impl KLimitedSubgraph {
    /// The empty subgraph: every vertex at deficit `k`.
    pub fn empty(g: &Graph, k: usize) -> Result<Self, SubgraphError> {
        if k == 0 {
            return Err(SubgraphError::ZeroK);
        }
        Ok(KLimitedSubgraph {
            k,
            in_m: vec![false; g.edge_count()],
            deg: vec![0; g.vertex_count()],
            members: 0,
            sigma: k * g.vertex_count(),
        })
    }

    pub fn from_edges(g: &Graph, k: usize, edges: &[EdgeId]) -> Result<Self, SubgraphError> {
        let mut m = Self::empty(g, k)?;
        for &e in edges {
            if e.0 >= g.edge_count() {
                return Err(SubgraphError::UnknownEdge(e));
            }
            if m.in_m[e.0] {
                return Err(SubgraphError::DuplicateEdge(e));
            }
            let (a, b) = g.endpoints(e);
            for v in [a, b] {
                if m.deg[v.0] == k {
                    return Err(SubgraphError::DegreeExceeded { vertex: v, k });
                }
            }
            m.toggle(g, e);
        }
        Ok(m)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn is_member(&self, e: EdgeId) -> bool {
        self.in_m[e.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.deg[v.0]
    }

    pub fn is_filled(&self, v: VertexId) -> bool {
        self.deg[v.0] == self.k
    }

    pub fn is_k_factor(&self) -> bool {
        self.sigma == 0
    }

    pub fn member_count(&self) -> usize {
        self.members
    }

    pub fn member_edges(&self) -> Vec<EdgeId> {
        self.in_m.iter().enumerate().filter_map(|(e, &inside)| inside.then_some(EdgeId(e))).collect()
    }

    pub fn unfilled_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.deg.iter().enumerate().filter(|&(_, &d)| d < self.k).map(|(v, _)| VertexId(v))
    }

    /// Σ (k − deg(v)) from scratch.
    pub fn recompute_sigma(&self) -> usize {
        self.deg.iter().map(|&d| self.k - d).sum()
    }

    /// Full consistency check against `g`: degrees match membership, the
    /// cap holds and the cached sigma is exact.
    pub fn check_consistency(&self, g: &Graph) -> bool {
        if self.in_m.len() != g.edge_count() || self.deg.len() != g.vertex_count() {
            return false;
        }
        let mut deg = vec![0usize; g.vertex_count()];
        for e in g.edges().filter(|&e| self.in_m[e.0]) {
            let (a, b) = g.endpoints(e);
            deg[a.0] += 1;
            deg[b.0] += 1;
        }
        deg == self.deg
            && deg.iter().all(|&d| d <= self.k)
            && self.members == self.in_m.iter().filter(|&&x| x).count()
            && self.sigma == self.recompute_sigma()
            && self.sigma + 2 * self.members == self.k * g.vertex_count()
    }

    fn toggle(&mut self, g: &Graph, e: EdgeId) {
        let (a, b) = g.endpoints(e);
        if self.in_m[e.0] {
            self.in_m[e.0] = false;
            self.deg[a.0] -= 1;
            self.deg[b.0] -= 1;
            self.members -= 1;
            self.sigma += 2;
        } else {
            self.in_m[e.0] = true;
            self.deg[a.0] += 1;
            self.deg[b.0] += 1;
            self.members += 1;
            self.sigma -= 2;
        }
    }

    /// Checks every clause of the augmenting-trail definition, reporting the
    /// first one that fails.
    pub fn validate_augmenting_trail(&self, g: &Graph, p: &Trail) -> Result<(), TrailDefect> {
        if self.in_m.len() != g.edge_count() || self.deg.len() != g.vertex_count() {
            return Err(TrailDefect::GraphMismatch);
        }
        let darts = p.darts();
        if darts.is_empty() {
            return Err(TrailDefect::Empty);
        }
        if let Some(&d) = darts.iter().find(|d| !g.contains_dart(**d)) {
            return Err(TrailDefect::ForeignDart(d));
        }
        for (i, w) in darts.windows(2).enumerate() {
            if g.head(w[0]) != g.tail(w[1]) {
                return Err(TrailDefect::NotChained(i, i + 1));
            }
        }
        if darts.len().is_multiple_of(2) {
            return Err(TrailDefect::EvenLength(darts.len()));
        }
        let mut first_use = std::collections::HashMap::with_capacity(darts.len());
        for (i, d) in darts.iter().enumerate() {
            if let Some(&first) = first_use.get(&d.edge()) {
                return Err(TrailDefect::RepeatedEdge { edge: d.edge(), first, second: i });
            }
            first_use.insert(d.edge(), i);
        }
        for (i, d) in darts.iter().enumerate() {
            // blue at even positions, red at odd
            if self.is_member(d.edge()) != (i % 2 == 1) {
                return Err(TrailDefect::ColorMismatch(i));
            }
        }
        for (i, &d) in darts[..darts.len() - 1].iter().enumerate() {
            let v = g.head(d);
            if !self.is_filled(v) {
                return Err(TrailDefect::InnerUnfilled { position: i, vertex: v });
            }
        }
        let (v0, vend) = (g.tail(darts[0]), g.head(darts[darts.len() - 1]));
        for v in [v0, vend] {
            if self.is_filled(v) {
                return Err(TrailDefect::EndpointFilled(v));
            }
        }
        if v0 == vend && self.deg[v0.0] + 1 >= self.k {
            return Err(TrailDefect::ClosedDeficitTooSmall { vertex: v0, degree: self.deg[v0.0] });
        }
        Ok(())
    }

    /// `M ⊕ P` in place. Refuses (leaving `self` untouched) unless `p` is a
    /// valid augmenting trail; on success sigma drops by exactly 2.
    pub fn apply_trail(&mut self, g: &Graph, p: &Trail) -> Result<(), TrailDefect> {
        self.validate_augmenting_trail(g, p)?;
        let before = self.sigma;
        for e in p.edges() {
            self.toggle(g, e);
        }
        debug_assert!(self.check_consistency(g));
        debug_assert_eq!(self.sigma + 2, before);
        Ok(())
    }

    /// Non-mutating form of [`apply_trail`](Self::apply_trail).
    pub fn augmented(&self, g: &Graph, p: &Trail) -> Result<Self, TrailDefect> {
        let mut next = self.clone();
        next.apply_trail(g, p)?;
        Ok(next)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeSetError {
    #[error("line {line}: malformed edge line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: ({u}, {v}) is not an edge of the graph")]
    UnknownEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge ({u}, {v}) listed twice")]
    Duplicate { line: usize, u: usize, v: usize },
}

/// One `u v` line per edge, `u < v`, sorted.
pub fn write_edge_set(g: &Graph, edges: &[EdgeId]) -> String {
    let mut pairs: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            (a.0, b.0)
        })
        .collect();
    pairs.sort_unstable();
    pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}

/// Reads a factor file back into edge ids of `g`. `#` lines are skipped.
pub fn parse_edge_set(g: &Graph, text: &str) -> Result<Vec<EdgeId>, EdgeSetError> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut it = content.split_ascii_whitespace();
        let pair = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let (u, v) = pair.ok_or_else(|| EdgeSetError::Malformed { line, text: content.to_string() })?;
        let e = g.find_edge(VertexId(u), VertexId(v)).ok_or(EdgeSetError::UnknownEdge { line, u, v })?;
        if !seen.insert(e) {
            return Err(EdgeSetError::Duplicate { line, u, v });
        }
        out.push(e);
    }
    Ok(out)
}
