//! Criterion benchmarks for the mechanism pipeline; see benches/.
