//! Augmenting-trail search over the layered dart graph.
//!
//! For each unfilled start (ascending) the layers are grown until a blue
//! layer reaches a valid target. For each target (ascending, the start
//! itself last) the layered graph is restricted to that target and a trail
//! is extracted. A trail that uses both darts of some edge is resolved by
//! the blossom operation and extraction repeats; every blossom operation
//! removes a dart, so the loop terminates.

mod layered;
pub mod trace;

use thiserror::Error;

use crate::graph::{Dart, Graph, VertexId};
use crate::klimited::{KLimitedSubgraph, Trail};

pub use layered::{
    find_blossom_violation, is_valid_target, BlossomOutcome, BlossomViolation, DirectedTrail, LayeredDartGraph,
};
use trace::{TraceEvent, TraceSink};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("start vertex {0} is filled")]
    StartFilled(VertexId),
    #[error("vertex {0} is not a head of the terminal layer")]
    NotATarget(VertexId),
    #[error("dart {dart} is not in layer {layer}")]
    DartAbsent { layer: usize, dart: Dart },
    #[error("blossom violation indexes past the end of the trail")]
    ViolationOutOfRange,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub layered_graphs_built: u64,
    pub trails_examined: u64,
    pub blossom_operations: u64,
    pub abandoned_targets: u64,
}

/// Discards every event.
pub struct NoTrace;

impl TraceSink for NoTrace {
    fn event(&mut self, _: &TraceEvent<'_>) {}
}

pub fn find_augmenting_trail(g: &Graph, m: &KLimitedSubgraph) -> Option<Trail> {
    find_augmenting_trail_with(g, m, &mut SearchStats::default(), &mut NoTrace)
}

pub fn find_augmenting_trail_with(
    g: &Graph,
    m: &KLimitedSubgraph,
    stats: &mut SearchStats,
    tracer: &mut dyn TraceSink,
) -> Option<Trail> {
    let starts: Vec<VertexId> = m.unfilled_vertices().collect();
    for start in starts {
        let built = LayeredDartGraph::build(g, m, start, tracer).expect("start is unfilled");
        stats.layered_graphs_built += 1;
        let Some(full) = built else {
            continue;
        };

        let mut targets: Vec<VertexId> =
            full.terminal_heads(g).into_iter().filter(|&v| is_valid_target(m, start, v)).collect();
        // the closed-trail target goes last
        targets.sort_by_key(|&v| (v == start, v));

        for target in targets {
            if let Some(trail) = search_target(g, &full, target, stats, tracer) {
                tracer.event(&TraceEvent::Accepted { darts: trail.darts() });
                return Some(trail);
            }
            stats.abandoned_targets += 1;
            tracer.event(&TraceEvent::Abandoned { start, target });
        }
    }
    None
}

fn search_target(
    g: &Graph,
    full: &LayeredDartGraph,
    target: VertexId,
    stats: &mut SearchStats,
    tracer: &mut dyn TraceSink,
) -> Option<Trail> {
    let mut gv = full.clone();
    gv.restrict_to_target(g, target).expect("target taken from terminal heads");
    tracer.event(&TraceEvent::Restricted { start: gv.start(), target, remaining: gv.dart_count() });

    loop {
        let trail = gv.extract_trail(g)?;
        stats.trails_examined += 1;
        tracer.event(&TraceEvent::Extracted { darts: trail.darts() });
        let Some(bv) = find_blossom_violation(&trail) else {
            return Some(trail.into_trail());
        };
        let before = gv.dart_count();
        let outcome = gv.blossom_operation(g, &trail, bv).expect("violation lies on an extracted trail");
        debug_assert!(gv.dart_count() < before);
        stats.blossom_operations += 1;
        tracer.event(&TraceEvent::Blossom {
            in_dart: trail.darts()[bv.in_index],
            out_dart: trail.darts()[bv.out_index],
            deleted: outcome.deleted,
            in_was_cut: outcome.in_was_cut,
        });
        tracer.event(&TraceEvent::Pruned { start: gv.start(), remaining: gv.dart_count() });
    }
}
