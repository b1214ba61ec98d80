//! The layered dart graph: alternating dart layers grown from one unfilled
//! start vertex, pruned down to the darts that lie on complete layered
//! walks, and reduced by the blossom operation.

use std::collections::{HashMap, HashSet};

use crate::graph::{Dart, Graph, VertexId};
use crate::klimited::{KLimitedSubgraph, Trail};

use super::trace::{TraceEvent, TraceSink};
use super::SearchError;

/// `true` if `v` may end an augmenting trail that starts at `start`.
pub fn is_valid_target(m: &KLimitedSubgraph, start: VertexId, v: VertexId) -> bool {
    !m.is_filled(v) && (v != start || m.degree(v) + 2 <= m.k())
}

/// Layers `D_0..D_L`. Even layers hold blue (non-member) darts, odd layers
/// red (member) darts, and the tails of layer `i + 1` are heads of layer `i`.
/// Each layer is kept sorted by dart id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredDartGraph {
    start: VertexId,
    layers: Vec<Vec<Dart>>,
    target: Option<VertexId>,
}

/// A walk `d_0 .. d_L` with `d_i` taken from layer `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedTrail {
    darts: Vec<Dart>,
}

/// Positions `in_index < out_index` of a dart and its opposite in one trail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlossomViolation {
    pub in_index: usize,
    pub out_index: usize,
}

/// Which dart a blossom operation removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlossomOutcome {
    pub deleted: Dart,
    pub layer: usize,
    pub in_was_cut: bool,
}

impl DirectedTrail {
    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn is_edge_simple(&self) -> bool {
        find_blossom_violation(self).is_none()
    }

    /// The undirected trail on the same darts.
    pub fn into_trail(self) -> Trail {
        Trail::from_darts(self.darts)
    }
}

impl From<Vec<Dart>> for DirectedTrail {
    fn from(darts: Vec<Dart>) -> Self {
        DirectedTrail { darts }
    }
}

/// Earliest pair `(i, j)`, ordered by `i`, with `d_i` the opposite of `d_j`.
pub fn find_blossom_violation(p: &DirectedTrail) -> Option<BlossomViolation> {
    let mut first_at: HashMap<usize, usize> = HashMap::with_capacity(p.darts.len());
    let mut best: Option<BlossomViolation> = None;
    for (j, d) in p.darts.iter().enumerate() {
        match first_at.get(&d.edge().0) {
            Some(&i) if p.darts[i] == d.opposite() => {
                if best.is_none_or(|b| i < b.in_index) {
                    best = Some(BlossomViolation { in_index: i, out_index: j });
                }
            }
            Some(_) => {}
            None => {
                first_at.insert(d.edge().0, j);
            }
        }
    }
    best
}

impl LayeredDartGraph {
    /// Wraps arbitrary layers; each is sorted and deduplicated.
    pub fn from_layers(start: VertexId, mut layers: Vec<Vec<Dart>>) -> Self {
        for layer in &mut layers {
            layer.sort_unstable();
            layer.dedup();
        }
        LayeredDartGraph { start, layers, target: None }
    }

    /// Grows layers from `start` until the first blue layer whose heads
    /// include a valid target. A dart joins at most one layer, the earliest
    /// one that admits it. `Ok(None)` when the layers run dry or reach the
    /// `2m + 1` cap without a target.
    pub fn build(
        g: &Graph,
        m: &KLimitedSubgraph,
        start: VertexId,
        tracer: &mut dyn TraceSink,
    ) -> Result<Option<Self>, SearchError> {
        if m.is_filled(start) {
            return Err(SearchError::StartFilled(start));
        }
        let max_layers = g.dart_count() + 1;
        let mut placed = vec![false; g.dart_count()];
        let mut seen = vec![usize::MAX; g.vertex_count()];
        let mut frontier = vec![start];
        let mut layers: Vec<Vec<Dart>> = Vec::new();

        while layers.len() < max_layers {
            let i = layers.len();
            let blue = i.is_multiple_of(2);
            let mut layer = Vec::new();
            for &x in &frontier {
                for &d in g.out_darts(x) {
                    if !placed[d.0] && m.is_member(d.edge()) != blue {
                        placed[d.0] = true;
                        layer.push(d);
                    }
                }
            }
            if layer.is_empty() {
                return Ok(None);
            }
            layer.sort_unstable();
            tracer.event(&TraceEvent::LayerBuilt { start, layer: i, darts: &layer });

            let found = blue && layer.iter().any(|&d| is_valid_target(m, start, g.head(d)));
            frontier.clear();
            if !found {
                // only filled vertices may sit inside a trail
                for &d in &layer {
                    let h = g.head(d);
                    if m.is_filled(h) && seen[h.0] != i {
                        seen[h.0] = i;
                        frontier.push(h);
                    }
                }
            }
            layers.push(layer);
            if found {
                return Ok(Some(LayeredDartGraph { start, layers, target: None }));
            }
            if frontier.is_empty() {
                return Ok(None);
            }
        }
        Ok(None)
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn target(&self) -> Option<VertexId> {
        self.target
    }

    pub fn layers(&self) -> &[Vec<Dart>] {
        &self.layers
    }

    /// Number of layers, `L + 1`.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn dart_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// No complete layered walk survives.
    pub fn is_exhausted(&self) -> bool {
        self.layers.is_empty() || self.layers.iter().any(Vec::is_empty)
    }

    pub fn contains(&self, layer: usize, d: Dart) -> bool {
        self.layers.get(layer).is_some_and(|l| l.binary_search(&d).is_ok())
    }

    /// Indices of the layers holding `d`.
    pub fn layers_of(&self, d: Dart) -> Vec<usize> {
        (0..self.layers.len()).filter(|&i| self.contains(i, d)).collect()
    }

    pub fn remove(&mut self, layer: usize, d: Dart) -> bool {
        match self.layers.get_mut(layer).map(|l| l.binary_search(&d)) {
            Some(Ok(pos)) => {
                self.layers[layer].remove(pos);
                true
            }
            _ => false,
        }
    }

    /// Distinct heads of the terminal layer, ascending.
    pub fn terminal_heads(&self, g: &Graph) -> Vec<VertexId> {
        let mut heads: Vec<VertexId> =
            self.layers.last().map(|l| l.iter().map(|&d| g.head(d)).collect()).unwrap_or_default();
        heads.sort_unstable();
        heads.dedup();
        heads
    }

    /// Removes dead heads (backward sweep, terminal layer exempt) and then
    /// dead tails (forward sweep). Only ever deletes darts.
    pub fn prune(&mut self, g: &Graph) {
        let depth = self.layers.len();
        if depth == 0 {
            return;
        }
        let mut mark = vec![usize::MAX; g.vertex_count()];
        let mut stamp = 0usize;

        for i in (0..depth - 1).rev() {
            stamp += 1;
            for &d in &self.layers[i + 1] {
                mark[g.tail(d).0] = stamp;
            }
            self.layers[i].retain(|&d| mark[g.head(d).0] == stamp);
        }

        let start = self.start;
        self.layers[0].retain(|&d| g.tail(d) == start);
        for i in 1..depth {
            stamp += 1;
            for &d in &self.layers[i - 1] {
                mark[g.head(d).0] = stamp;
            }
            self.layers[i].retain(|&d| mark[g.tail(d).0] == stamp);
        }
    }

    /// Keeps only terminal darts ending at `v`, then prunes.
    pub fn restrict_to_target(&mut self, g: &Graph, v: VertexId) -> Result<(), SearchError> {
        let Some(last) = self.layers.last_mut() else {
            return Err(SearchError::NotATarget(v));
        };
        if !last.iter().any(|&d| g.head(d) == v) {
            return Err(SearchError::NotATarget(v));
        }
        last.retain(|&d| g.head(d) == v);
        self.target = Some(v);
        self.prune(g);
        Ok(())
    }

    /// Depth-first walk through the layers taking the lowest admissible dart
    /// id at each step, backtracking on dead ends. Darts stay pairwise
    /// distinct. When every dart sits in a single layer a failed
    /// `(layer, dart)` state cannot succeed later and is not retried.
    pub fn extract_trail(&self, g: &Graph) -> Option<DirectedTrail> {
        let depth = self.layers.len();
        if self.is_exhausted() {
            return None;
        }
        let mut seen: HashSet<Dart> = HashSet::new();
        let memo = self.layers.iter().flatten().all(|&d| seen.insert(d));
        let mut used: HashSet<Dart> = HashSet::new();
        let mut failed: HashSet<(usize, Dart)> = HashSet::new();
        let mut cursor = vec![0usize; depth];
        let mut path: Vec<Dart> = Vec::with_capacity(depth);
        let mut i = 0;
        let mut at = self.start;

        loop {
            let mut next = None;
            while cursor[i] < self.layers[i].len() {
                let d = self.layers[i][cursor[i]];
                cursor[i] += 1;
                if g.tail(d) != at || used.contains(&d) || failed.contains(&(i, d)) {
                    continue;
                }
                if i + 1 == depth && self.target.is_some_and(|t| g.head(d) != t) {
                    continue;
                }
                next = Some(d);
                break;
            }
            match next {
                Some(d) => {
                    path.push(d);
                    used.insert(d);
                    if i + 1 == depth {
                        return Some(DirectedTrail { darts: path });
                    }
                    i += 1;
                    cursor[i] = 0;
                    at = g.head(d);
                }
                None => {
                    if i == 0 {
                        return None;
                    }
                    let d = path.pop().expect("path tracks depth");
                    used.remove(&d);
                    if memo {
                        failed.insert((i - 1, d));
                    }
                    i -= 1;
                    at = path.last().map_or(self.start, |&p| g.head(p));
                }
            }
        }
    }

    /// Whether deleting `d` from `layer` and re-pruning leaves no complete
    /// walk from the start to the terminal layer. Does not modify `self`.
    pub fn is_cut_dart(&self, g: &Graph, layer: usize, d: Dart) -> Result<bool, SearchError> {
        let mut probe = self.clone();
        if !probe.remove(layer, d) {
            return Err(SearchError::DartAbsent { layer, dart: d });
        }
        probe.prune(g);
        Ok(probe.is_exhausted())
    }

    /// Deletes the in-dart of `bv` unless it is a cut-dart, otherwise the
    /// out-dart, then prunes.
    pub fn blossom_operation(
        &mut self,
        g: &Graph,
        trail: &DirectedTrail,
        bv: BlossomViolation,
    ) -> Result<BlossomOutcome, SearchError> {
        let (Some(&in_dart), Some(&out_dart)) = (trail.darts.get(bv.in_index), trail.darts.get(bv.out_index)) else {
            return Err(SearchError::ViolationOutOfRange);
        };
        let in_was_cut = self.is_cut_dart(g, bv.in_index, in_dart)?;
        let (layer, deleted) = if in_was_cut { (bv.out_index, out_dart) } else { (bv.in_index, in_dart) };
        if !self.remove(layer, deleted) {
            return Err(SearchError::DartAbsent { layer, dart: deleted });
        }
        self.prune(g);
        Ok(BlossomOutcome { deleted, layer, in_was_cut })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;
    use crate::search::trace::RecordingTracer;

    fn dart(g: &Graph, u: usize, v: usize) -> Dart {
        Trail::from_vertices(g, &[u, v]).unwrap().darts()[0]
    }

    fn m_of(g: &Graph, k: usize, pairs: &[(usize, usize)]) -> KLimitedSubgraph {
        let edges: Vec<EdgeId> = pairs.iter().map(|&(u, v)| g.find_edge(VertexId(u), VertexId(v)).unwrap()).collect();
        KLimitedSubgraph::from_edges(g, k, &edges).unwrap()
    }

    fn build(g: &Graph, m: &KLimitedSubgraph, start: usize) -> Option<LayeredDartGraph> {
        LayeredDartGraph::build(g, m, VertexId(start), &mut RecordingTracer::default()).unwrap()
    }

    #[test]
    fn c4_closing_edge_single_layer() {
        let g = Graph::cycle(4);
        let m = m_of(&g, 2, &[(0, 1), (1, 2), (2, 3)]);
        let l = build(&g, &m, 0).unwrap();
        assert_eq!(l.layers(), &[vec![dart(&g, 0, 3)]]);
        assert_eq!(l.terminal_heads(&g), vec![VertexId(3)]);
    }

    #[test]
    fn star_leaf_reaches_center() {
        let g = Graph::star(3);
        let m = KLimitedSubgraph::empty(&g, 2).unwrap();
        let l = build(&g, &m, 1).unwrap();
        assert_eq!(l.depth(), 1);
        assert_eq!(l.layers()[0], vec![dart(&g, 1, 0)]);
    }

    #[test]
    fn filled_start_is_an_error() {
        let g = Graph::path(2);
        let m = m_of(&g, 1, &[(0, 1)]);
        let err = LayeredDartGraph::build(&g, &m, VertexId(0), &mut RecordingTracer::default());
        assert_eq!(err, Err(SearchError::StartFilled(VertexId(0))));
    }

    #[test]
    fn c5_matching_exhausts_from_4() {
        // k = 1, M = {01, 23}: from 4 the alternating walk 4-3-2-1-0 ends on
        // a red dart into filled 0 and dies; 4-0-1-2-3 likewise. No target.
        let g = Graph::cycle(5);
        let m = m_of(&g, 1, &[(0, 1), (2, 3)]);
        assert!(build(&g, &m, 4).is_none());
    }

    #[test]
    fn layer_parity_and_chaining() {
        let g = Graph::petersen();
        let m = m_of(&g, 2, &[(0, 1), (1, 2), (2, 3), (5, 7), (7, 9)]);
        let l = build(&g, &m, 4).unwrap();
        for (i, layer) in l.layers().iter().enumerate() {
            for &d in layer {
                assert_eq!(m.is_member(d.edge()), i % 2 == 1);
                if i > 0 {
                    assert!(l.layers()[i - 1].iter().any(|&p| g.head(p) == g.tail(d)));
                }
            }
        }
        assert_eq!(l.depth() % 2, 1);
    }

    #[test]
    fn prune_removes_dead_branch() {
        // path 0-1-2-3 plus 1-4; layers: D0 = {0->1}, D1 = {1->2, 1->4}, D2 = {2->3}
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let layers = vec![vec![dart(&g, 0, 1)], vec![dart(&g, 1, 2), dart(&g, 1, 4)], vec![dart(&g, 2, 3)]];
        let mut l = LayeredDartGraph::from_layers(VertexId(0), layers);
        l.prune(&g);
        assert_eq!(l.layers()[1], vec![dart(&g, 1, 2)]);
        let once = l.clone();
        l.prune(&g);
        assert_eq!(l, once);
    }

    #[test]
    fn prune_cascades_to_layer_zero() {
        // D0 = {0->1, 0->4}, D1 = {1->2, 4->5}, D2 = {2->3}; 4->5 is dead, so
        // 0->4 goes too.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5)]).unwrap();
        let layers =
            vec![vec![dart(&g, 0, 1), dart(&g, 0, 4)], vec![dart(&g, 1, 2), dart(&g, 4, 5)], vec![dart(&g, 2, 3)]];
        let mut l = LayeredDartGraph::from_layers(VertexId(0), layers);
        l.prune(&g);
        assert_eq!(l.dart_count(), 3);
        assert_eq!(l.layers()[0], vec![dart(&g, 0, 1)]);
    }

    #[test]
    fn restrict_drops_other_targets() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let layers = vec![vec![dart(&g, 0, 1)], vec![dart(&g, 1, 2), dart(&g, 1, 3)], vec![dart(&g, 3, 4)]];
        let mut l = LayeredDartGraph::from_layers(VertexId(0), layers.clone());
        l.restrict_to_target(&g, VertexId(4)).unwrap();
        assert_eq!(l.target(), Some(VertexId(4)));
        assert_eq!(l.layers()[1], vec![dart(&g, 1, 3)]);
        let mut l = LayeredDartGraph::from_layers(VertexId(0), layers);
        assert_eq!(l.restrict_to_target(&g, VertexId(2)), Err(SearchError::NotATarget(VertexId(2))));
    }

    #[test]
    fn extract_single_trail_and_empty() {
        let g = Graph::path(4);
        let layers = vec![vec![dart(&g, 0, 1)], vec![dart(&g, 1, 2)], vec![dart(&g, 2, 3)]];
        let l = LayeredDartGraph::from_layers(VertexId(0), layers.clone());
        let t = l.extract_trail(&g).unwrap();
        assert_eq!(t.darts(), &[layers[0][0], layers[1][0], layers[2][0]]);
        let empty = LayeredDartGraph::from_layers(VertexId(0), vec![vec![], vec![], vec![]]);
        assert!(empty.extract_trail(&g).is_none());
    }

    #[test]
    fn extract_backtracks_over_reused_dart() {
        // a dart placed in two layers cannot be used twice
        let g = Graph::cycle(3);
        let a = dart(&g, 0, 1);
        let b = dart(&g, 1, 2);
        let c = dart(&g, 2, 0);
        let l = LayeredDartGraph::from_layers(VertexId(0), vec![vec![a], vec![b], vec![c], vec![a]]);
        assert!(l.extract_trail(&g).is_none());
    }

    #[test]
    fn blossom_violation_positions() {
        let simple = DirectedTrail::from(vec![Dart(0), Dart(2), Dart(4)]);
        assert_eq!(find_blossom_violation(&simple), None);
        let t = DirectedTrail::from(vec![Dart(0), Dart(2), Dart(4), Dart(6), Dart(8), Dart(10), Dart(5)]);
        assert_eq!(find_blossom_violation(&t), Some(BlossomViolation { in_index: 2, out_index: 6 }));
        // earliest by in-index
        let t = DirectedTrail::from(vec![Dart(0), Dart(2), Dart(3), Dart(1)]);
        assert_eq!(find_blossom_violation(&t), Some(BlossomViolation { in_index: 0, out_index: 3 }));
    }

    #[test]
    fn cut_dart_queries() {
        let g = Graph::path(4);
        let layers = vec![vec![dart(&g, 0, 1)], vec![dart(&g, 1, 2)], vec![dart(&g, 2, 3)]];
        let l = LayeredDartGraph::from_layers(VertexId(0), layers);
        assert_eq!(l.is_cut_dart(&g, 1, dart(&g, 1, 2)), Ok(true));
        assert!(l.is_cut_dart(&g, 0, dart(&g, 1, 2)).is_err());

        // two dart-disjoint routes 0-1-2-5 and 0-3-4-5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
        let layers = vec![
            vec![dart(&g, 0, 1), dart(&g, 0, 3)],
            vec![dart(&g, 1, 2), dart(&g, 3, 4)],
            vec![dart(&g, 2, 5), dart(&g, 4, 5)],
        ];
        let l = LayeredDartGraph::from_layers(VertexId(0), layers);
        let before = l.clone();
        assert_eq!(l.is_cut_dart(&g, 1, dart(&g, 1, 2)), Ok(false));
        assert_eq!(l, before);
    }
}
