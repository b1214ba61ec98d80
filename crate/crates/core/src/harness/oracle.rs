//! Brute-force ground truth. Shares nothing with the solver beyond the
//! graph type.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};

pub const DEFAULT_EDGE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {m} edges, oracle cap is {cap}")]
    CapExceeded { m: usize, cap: usize },
}

/// Lexicographically first k-factor (as a sorted edge-id list), by
/// backtracking over edges in id order. Include-before-exclude yields the
/// lexicographic minimum.
pub fn brute_force_k_factor(g: &Graph, k: usize, cap: usize) -> Result<Option<Vec<EdgeId>>, OracleError> {
    if g.edge_count() > cap {
        return Err(OracleError::CapExceeded { m: g.edge_count(), cap });
    }
    let n = g.vertex_count();
    let mut need = vec![k; n];
    // incident edges not yet decided
    let mut open: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    if open.iter().any(|&d| d < k) {
        return Ok(None);
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|e| {
            let (a, b) = g.endpoints(e);
            (a.0, b.0)
        })
        .collect();
    let mut chosen = Vec::new();
    if descend(&edges, 0, &mut need, &mut open, &mut chosen) {
        Ok(Some(chosen.into_iter().map(EdgeId).collect()))
    } else {
        Ok(None)
    }
}

fn descend(
    edges: &[(usize, usize)],
    i: usize,
    need: &mut [usize],
    open: &mut [usize],
    chosen: &mut Vec<usize>,
) -> bool {
    if i == edges.len() {
        return need.iter().all(|&x| x == 0);
    }
    let (a, b) = edges[i];
    open[a] -= 1;
    open[b] -= 1;

    if need[a] > 0 && need[b] > 0 {
        need[a] -= 1;
        need[b] -= 1;
        chosen.push(i);
        if need[a] <= open[a] && need[b] <= open[b] && descend(edges, i + 1, need, open, chosen) {
            return true;
        }
        chosen.pop();
        need[a] += 1;
        need[b] += 1;
    }
    if need[a] <= open[a] && need[b] <= open[b] && descend(edges, i + 1, need, open, chosen) {
        return true;
    }

    open[a] += 1;
    open[b] += 1;
    false
}

/// Every k-regular spanning edge set, by plain subset enumeration. Only
/// usable for tiny graphs; exists to check the backtracking oracle.
pub fn enumerate_k_factors(g: &Graph, k: usize) -> Vec<Vec<EdgeId>> {
    let m = g.edge_count();
    assert!(m <= 20, "subset enumeration is limited to 20 edges");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let mut deg = vec![0usize; g.vertex_count()];
        for e in 0..m {
            if mask >> e & 1 == 1 {
                let (a, b) = g.endpoints(EdgeId(e));
                deg[a.0] += 1;
                deg[b.0] += 1;
            }
        }
        if deg.iter().all(|&d| d == k) {
            out.push((0..m).filter(|&e| mask >> e & 1 == 1).map(EdgeId).collect());
        }
    }
    out
}

/// Exhaustive search for an augmenting trail with respect to the edge set
/// `members` (degrees below `k` everywhere): an alternating trail with
/// distinct edges, blue first and last, unfilled endpoints, filled inner
/// vertices, and degree below `k - 1` at a repeated endpoint. Returns the
/// vertex sequence of the first one found.
pub fn brute_force_augmenting_trail(g: &Graph, k: usize, members: &[bool]) -> Option<Vec<usize>> {
    (0..g.vertex_count()).find_map(|s| brute_force_augmenting_trail_from(g, k, members, s))
}

/// As [`brute_force_augmenting_trail`], restricted to trails starting at `s`.
pub fn brute_force_augmenting_trail_from(g: &Graph, k: usize, members: &[bool], s: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut deg = vec![0usize; n];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        adj[a.0].push((b.0, e.0));
        adj[b.0].push((a.0, e.0));
        if members[e.0] {
            deg[a.0] += 1;
            deg[b.0] += 1;
        }
    }
    if deg[s] >= k {
        return None;
    }
    let mut used = vec![false; g.edge_count()];
    let mut walk = vec![s];
    trail_from(s, s, false, k, &deg, &adj, members, &mut used, &mut walk).then_some(walk)
}

#[allow(clippy::too_many_arguments)]
fn trail_from(
    start: usize,
    at: usize,
    want_red: bool,
    k: usize,
    deg: &[usize],
    adj: &[Vec<(usize, usize)>],
    members: &[bool],
    used: &mut [bool],
    walk: &mut Vec<usize>,
) -> bool {
    for &(y, e) in &adj[at] {
        if used[e] || members[e] != want_red {
            continue;
        }
        walk.push(y);
        if !want_red && deg[y] < k && (y != start || deg[y] + 2 <= k) {
            return true;
        }
        if deg[y] == k {
            used[e] = true;
            if trail_from(start, y, !want_red, k, deg, adj, members, used, walk) {
                return true;
            }
            used[e] = false;
        }
        walk.pop();
    }
    false
}

/// Degree check independent of the solver's own verifier.
pub fn is_k_factor(g: &Graph, k: usize, edges: &[EdgeId]) -> bool {
    let mut deg = vec![0usize; g.vertex_count()];
    let mut seen = std::collections::HashSet::new();
    for &e in edges {
        if e.0 >= g.edge_count() || !seen.insert(e) {
            return false;
        }
        let (a, b) = g.endpoints(e);
        deg[a.0] += 1;
        deg[b.0] += 1;
    }
    g.vertices().all(|v: VertexId| deg[v.0] == k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_unique_2_factor() {
        let g = Graph::cycle(5);
        let f = brute_force_k_factor(&g, 2, DEFAULT_EDGE_CAP).unwrap().unwrap();
        assert_eq!(f, g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn star_has_none() {
        assert_eq!(brute_force_k_factor(&Graph::star(3), 2, DEFAULT_EDGE_CAP), Ok(None));
    }

    #[test]
    fn k4_2_factors() {
        let g = Graph::complete(4);
        let all = enumerate_k_factors(&g, 2);
        assert_eq!(all.len(), 3);
        let first = brute_force_k_factor(&g, 2, DEFAULT_EDGE_CAP).unwrap().unwrap();
        assert_eq!(&first, all.iter().min().unwrap());
        // K4 edges: 01 02 03 12 13 23 -> first 4-cycle is 0-1-3-2-0
        assert_eq!(first, vec![EdgeId(0), EdgeId(1), EdgeId(4), EdgeId(5)]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::complete(8);
        assert_eq!(brute_force_k_factor(&g, 2, DEFAULT_EDGE_CAP), Err(OracleError::CapExceeded { m: 28, cap: 24 }));
    }

    #[test]
    fn augmenting_trail_enumeration() {
        let g = Graph::cycle(4);
        let mut members = vec![true; 4];
        members[3] = false;
        assert_eq!(brute_force_augmenting_trail(&g, 2, &members), Some(vec![0, 3]));
        // k = 1 on C5 with matching {01, 23}: 4 can never reach an unfilled vertex
        let g = Graph::cycle(5);
        let members = vec![true, false, true, false, false];
        assert_eq!(brute_force_augmenting_trail(&g, 1, &members), None);
    }
}
