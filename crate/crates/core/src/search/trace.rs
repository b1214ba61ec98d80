//! Search trace events, one tab-separated line each.

use std::fmt;
use std::io::Write;

use crate::graph::{Dart, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent<'a> {
    LayerBuilt { start: VertexId, layer: usize, darts: &'a [Dart] },
    Pruned { start: VertexId, remaining: usize },
    Restricted { start: VertexId, target: VertexId, remaining: usize },
    Extracted { darts: &'a [Dart] },
    Blossom { in_dart: Dart, out_dart: Dart, deleted: Dart, in_was_cut: bool },
    Abandoned { start: VertexId, target: VertexId },
    Accepted { darts: &'a [Dart] },
}

struct Darts<'a>(&'a [Dart]);

impl fmt::Display for Darts<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", d.0)?;
        }
        Ok(())
    }
}

impl fmt::Display for TraceEvent<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::LayerBuilt { start, layer, darts } => {
                write!(f, "layer-built\t{start}\t{layer}\t{}", Darts(darts))
            }
            TraceEvent::Pruned { start, remaining } => write!(f, "pruned\t{start}\t{remaining}"),
            TraceEvent::Restricted { start, target, remaining } => {
                write!(f, "restricted\t{start}\t{target}\t{remaining}")
            }
            TraceEvent::Extracted { darts } => write!(f, "extracted\t{}", Darts(darts)),
            TraceEvent::Blossom { in_dart, out_dart, deleted, in_was_cut } => write!(
                f,
                "blossom\t{in_dart}\t{out_dart}\t{deleted}\t{}",
                if *in_was_cut { "in-cut" } else { "in-free" }
            ),
            TraceEvent::Abandoned { start, target } => write!(f, "abandoned\t{start}\t{target}"),
            TraceEvent::Accepted { darts } => write!(f, "accepted\t{}", Darts(darts)),
        }
    }
}

pub trait TraceSink {
    fn event(&mut self, event: &TraceEvent<'_>);
}

/// Writes each event as a line; I/O errors are dropped.
pub struct LineTracer<W: Write>(pub W);

impl<W: Write> TraceSink for LineTracer<W> {
    fn event(&mut self, event: &TraceEvent<'_>) {
        let _ = writeln!(self.0, "{event}");
    }
}

/// Collects rendered lines; handy in tests.
#[derive(Debug, Default)]
pub struct RecordingTracer {
    pub lines: Vec<String>,
}

impl TraceSink for RecordingTracer {
    fn event(&mut self, event: &TraceEvent<'_>) {
        self.lines.push(event.to_string());
    }
}
