//! Ground truth and experiments: brute-force oracle, graph generators,
//! differential testing and the timing ladder.

pub mod bench;
pub mod difftest;
pub mod generate;
pub mod oracle;
