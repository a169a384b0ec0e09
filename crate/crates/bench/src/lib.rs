//! Benchmarks for design-forge live under `benches/`.
