//! Criterion benchmarks for the numerical kernels, under `benches/`.
