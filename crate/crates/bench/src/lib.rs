//! Criterion benchmarks for the `qpart-core` kernels live in `benches/`.
