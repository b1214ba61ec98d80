//! Brute-force helpers shared by the integration tests. None of them call
//! into prune, extraction or the search driver.

#![allow(dead_code)]

use kfactor::search::LayeredDartGraph;
use kfactor::{Dart, EdgeId, Graph, KLimitedSubgraph, VertexId};
use rand::Rng;

pub fn m_of(g: &Graph, k: usize, pairs: &[(usize, usize)]) -> KLimitedSubgraph {
    let edges: Vec<EdgeId> =
        pairs.iter().map(|&(u, v)| g.find_edge(VertexId(u), VertexId(v)).expect("edge in graph")).collect();
    KLimitedSubgraph::from_edges(g, k, &edges).expect("k-limited")
}

pub fn dart(g: &Graph, u: usize, v: usize) -> Dart {
    let e = g.find_edge(VertexId(u), VertexId(v)).expect("edge in graph");
    let d = Dart::new(e, false);
    if g.tail(d) == VertexId(u) {
        d
    } else {
        d.opposite()
    }
}

/// Every layered walk `d_0 .. d_L` with `d_i` in layer `i`, chained head to
/// tail, starting at the start vertex and (if set) ending at the target.
/// Darts may repeat.
pub fn layered_walks(g: &Graph, gv: &LayeredDartGraph) -> Vec<Vec<Dart>> {
    let layers = gv.layers();
    let mut out = Vec::new();
    if layers.is_empty() {
        return out;
    }
    let mut walk = Vec::new();
    walks_from(g, gv, 0, gv.start(), &mut walk, &mut out);
    out
}

fn walks_from(
    g: &Graph,
    gv: &LayeredDartGraph,
    i: usize,
    at: VertexId,
    walk: &mut Vec<Dart>,
    out: &mut Vec<Vec<Dart>>,
) {
    let layers = gv.layers();
    for &d in &layers[i] {
        if g.tail(d) != at {
            continue;
        }
        walk.push(d);
        if i + 1 == layers.len() {
            if gv.target().is_none_or(|t| g.head(d) == t) {
                out.push(walk.clone());
            }
        } else {
            walks_from(g, gv, i + 1, g.head(d), walk, out);
        }
        walk.pop();
    }
}

pub fn has_distinct_dart_walk(g: &Graph, gv: &LayeredDartGraph) -> bool {
    layered_walks(g, gv).iter().any(|w| {
        let mut s = w.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == w.len()
    })
}

/// Every (layer, dart) pair lying on at least one complete layered walk.
pub fn live_pairs(g: &Graph, gv: &LayeredDartGraph) -> Vec<(usize, Dart)> {
    let mut live: Vec<(usize, Dart)> =
        layered_walks(g, gv).into_iter().flat_map(|w| w.into_iter().enumerate().collect::<Vec<_>>()).collect();
    live.sort_unstable();
    live.dedup();
    live
}

pub fn all_pairs(gv: &LayeredDartGraph) -> Vec<(usize, Dart)> {
    gv.layers().iter().enumerate().flat_map(|(i, l)| l.iter().map(move |&d| (i, d))).collect()
}

/// Random layers over the darts of `g`: each dart joins each layer with
/// probability `p`. Layers may share darts.
pub fn random_layered(rng: &mut impl Rng, g: &Graph, start: usize, depth: usize, p: f64) -> LayeredDartGraph {
    let layers = (0..depth).map(|_| g.darts().filter(|_| rng.gen_bool(p)).collect()).collect();
    LayeredDartGraph::from_layers(VertexId(start), layers)
}

/// Every augmenting trail of `m`, as vertex sequences, by plain search over
/// alternating edge-distinct walks.
pub fn all_augmenting_trails(g: &Graph, m: &KLimitedSubgraph) -> Vec<Vec<usize>> {
    let k = m.k();
    let mut out = Vec::new();
    for s in g.vertices() {
        if m.is_filled(s) {
            continue;
        }
        let mut used = vec![false; g.edge_count()];
        let mut walk = vec![s.0];
        extend(g, m, k, s, s, false, &mut used, &mut walk, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    m: &KLimitedSubgraph,
    k: usize,
    start: VertexId,
    at: VertexId,
    want_red: bool,
    used: &mut [bool],
    walk: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for &d in g.out_darts(at) {
        let e = d.edge();
        if used[e.0] || m.is_member(e) != want_red {
            continue;
        }
        let y = g.head(d);
        used[e.0] = true;
        walk.push(y.0);
        if !want_red && !m.is_filled(y) && (y != start || m.degree(y) + 2 <= k) {
            out.push(walk.clone());
        }
        if m.is_filled(y) {
            extend(g, m, k, start, y, !want_red, used, walk, out);
        }
        walk.pop();
        used[e.0] = false;
    }
}

/// Random simple graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).expect("simple")
}

/// Random k-limited subgraph: each edge, in id order, is kept with
/// probability 0.6 if both endpoints still have room.
pub fn random_k_limited(rng: &mut impl Rng, g: &Graph, k: usize) -> KLimitedSubgraph {
    let mut deg = vec![0usize; g.vertex_count()];
    let mut chosen = Vec::new();
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        if rng.gen_bool(0.6) && deg[a.0] < k && deg[b.0] < k {
            deg[a.0] += 1;
            deg[b.0] += 1;
            chosen.push(e);
        }
    }
    KLimitedSubgraph::from_edges(g, k, &chosen).expect("degrees bounded by k")
}
