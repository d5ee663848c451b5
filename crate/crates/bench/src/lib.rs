//! Criterion benchmarks for kummerlab live under `benches/`.
