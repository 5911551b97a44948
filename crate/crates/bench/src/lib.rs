//! Criterion benchmarks for packsc; see `benches/`.
