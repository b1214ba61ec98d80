//! Simple undirected graphs with dart (oriented half-edge) adjacency.
//!
//! Every edge `e` carries two darts: `2e` runs from the smaller endpoint to
//! the larger one and `2e + 1` runs back. Taking the opposite dart is a bit
//! flip, and dart ids are stable for the lifetime of the graph.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// An oriented copy of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn new(edge: EdgeId, reversed: bool) -> Self {
        Dart(2 * edge.0 + reversed as usize)
    }

    #[inline]
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }

    /// `false` for the dart running from the smaller endpoint to the larger.
    #[inline]
    pub fn is_reversed(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn opposite(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index}: loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("edge {index}: duplicate edge ({u}, {v})")]
    Duplicate { index: usize, u: usize, v: usize },
    #[error("edge {index}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("header declares {expected} edges but {found} were listed")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    endpoints: Vec<(VertexId, VertexId)>,
    // CSR layout: out-darts of `v` are `adj[offsets[v]..offsets[v + 1]]`, sorted by id.
    offsets: Vec<usize>,
    adj: Vec<Dart>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.endpoints.iter().map(|(u, v)| (u.0, v.0)).collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Endpoints are normalized to
    /// `(min, max)` and edge ids follow input order.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut endpoints = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (index, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { index, vertex: u });
            }
            let (a, b) = (u.min(v), u.max(v));
            if !seen.insert((a, b)) {
                return Err(GraphError::Duplicate { index, u: a, v: b });
            }
            endpoints.push((VertexId(a), VertexId(b)));
        }

        let mut offsets = vec![0usize; n + 1];
        for &(a, b) in &endpoints {
            offsets[a.0 + 1] += 1;
            offsets[b.0 + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut adj = vec![Dart(0); 2 * endpoints.len()];
        // Darts are visited in increasing id order, so each list ends up sorted.
        for (e, &(a, b)) in endpoints.iter().enumerate() {
            adj[fill[a.0]] = Dart::new(EdgeId(e), false);
            fill[a.0] += 1;
            adj[fill[b.0]] = Dart::new(EdgeId(e), true);
            fill[b.0] += 1;
        }

        Ok(Graph { n, endpoints, offsets, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.endpoints.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> {
        (0..self.endpoints.len()).map(EdgeId)
    }

    pub fn darts(&self) -> impl ExactSizeIterator<Item = Dart> {
        (0..2 * self.endpoints.len()).map(Dart)
    }

    /// Normalized `(min, max)` endpoints of `e`.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.endpoints[e.0]
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> VertexId {
        let (a, b) = self.endpoints[d.edge().0];
        if d.is_reversed() {
            b
        } else {
            a
        }
    }

    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.opposite())
    }

    /// Darts whose tail is `v`, sorted by dart id.
    #[inline]
    pub fn out_darts(&self, v: VertexId) -> &[Dart] {
        &self.adj[self.offsets[v.0]..self.offsets[v.0 + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v.0 + 1] - self.offsets[v.0]
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        d.0 < self.dart_count()
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u.0 >= self.n || v.0 >= self.n {
            return None;
        }
        let (from, to) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.out_darts(from).iter().find(|&&d| self.head(d) == to).map(|d| d.edge())
    }

    /// Serializes to the edge-list text format, edges in id order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for &(a, b) in &self.endpoints {
            out.push_str(&format!("{} {}\n", a.0, b.0));
        }
        out
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Graph::from_edges(a + b, &edges).expect("complete bipartite graph is simple")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::complete_bipartite(1, leaves)
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("Petersen graph is simple")
    }
}

/// Parses the edge-list format: optional `#` comment lines, a header
/// `n m`, then exactly `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        last_line = line;
        let fields = parse_pair(content)
            .ok_or_else(|| ParseError { line, kind: ParseErrorKind::Malformed(content.to_string()) })?;
        match header {
            None => header = Some(fields),
            Some((_, m)) => {
                if edges.len() == m {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::EdgeCountMismatch { expected: m, found: m + 1 },
                    });
                }
                edges.push(fields);
                edge_lines.push(line);
            }
        }
    }

    let (n, m) = header.ok_or(ParseError { line: last_line.max(1), kind: ParseErrorKind::MissingHeader })?;
    if edges.len() != m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::EdgeCountMismatch { expected: m, found: edges.len() },
        });
    }

    Graph::from_edges(n, &edges).map_err(|err| match err {
        GraphError::Loop { index, vertex } => {
            ParseError { line: edge_lines[index], kind: ParseErrorKind::Loop(vertex) }
        }
        GraphError::Duplicate { index, u, v } => {
            ParseError { line: edge_lines[index], kind: ParseErrorKind::Duplicate(u, v) }
        }
        GraphError::VertexOutOfRange { index, vertex, n } => {
            ParseError { line: edge_lines[index], kind: ParseErrorKind::VertexOutOfRange { vertex, n } }
        }
    })
}

fn parse_pair(content: &str) -> Option<(usize, usize)> {
    let mut it = content.split_ascii_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
    }

    #[test]
    fn parses_c4_with_comments() {
        let g = parse_graph("# a square\n4 4\n0 1\n1 2\n\n# middle\n2 3\n3 0\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        // (3, 0) is normalized
        assert_eq!(g.endpoints(EdgeId(3)), (VertexId(0), VertexId(3)));
    }

    #[test]
    fn rejects_loop_with_line() {
        let err = parse_graph("2 1\n0 0").unwrap_err();
        assert_eq!(err, ParseError { line: 2, kind: ParseErrorKind::Loop(0) });
    }

    #[test]
    fn rejects_duplicate_reversed() {
        let err = parse_graph("3 2\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.kind, ParseErrorKind::Duplicate(0, 1));
    }

    #[test]
    fn rejects_out_of_range_and_malformed() {
        let err = parse_graph("2 1\n0 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::VertexOutOfRange { vertex: 2, n: 2 });
        let err = parse_graph("3 1\n0 x\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::Malformed(_)));
        let err = parse_graph("3 1\n0 1 2\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Malformed(_)));
    }

    #[test]
    fn rejects_count_mismatch() {
        let err = parse_graph("3 2\n0 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EdgeCountMismatch { expected: 2, found: 1 });
        let err = parse_graph("3 1\n0 1\n1 2\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(parse_graph("# nothing\n").is_err());
    }

    #[test]
    fn opposite_is_bit_flip() {
        assert_eq!(Dart(0).opposite(), Dart(1));
        assert_eq!(Dart(7).opposite(), Dart(6));
        assert_eq!(Dart(4).opposite().opposite(), Dart(4));
    }

    #[test]
    fn head_and_tail() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!((g.tail(Dart(0)), g.head(Dart(0))), (VertexId(0), VertexId(1)));
        assert_eq!((g.tail(Dart(1)), g.head(Dart(1))), (VertexId(1), VertexId(0)));
        let g = Graph::petersen();
        for d in g.darts() {
            assert_eq!(g.head(d), g.tail(d.opposite()));
            assert_ne!(g.head(d), g.tail(d));
            assert_eq!(d.edge(), d.opposite().edge());
        }
    }

    #[test]
    fn adjacency_is_sorted_and_consistent() {
        let g = Graph::petersen();
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        for v in g.vertices() {
            let out = g.out_darts(v);
            assert!(out.windows(2).all(|w| w[0] < w[1]));
            assert!(out.iter().all(|&d| g.tail(d) == v));
        }
        assert_eq!(g.find_edge(VertexId(0), VertexId(5)), Some(EdgeId(1)));
        assert_eq!(g.find_edge(VertexId(0), VertexId(2)), None);
    }

    #[test]
    fn named_families() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(Graph::star(3).degree(VertexId(0)), 3);
        assert_eq!(Graph::path(4).edge_count(), 3);
        assert_eq!(Graph::cycle(5).min_degree(), Some(2));
    }
}
