//! Criterion benchmarks for the core engine; see `benches/`.
