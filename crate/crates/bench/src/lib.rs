//! Benchmark crate; the actual benchmarks live in `benches/`.
