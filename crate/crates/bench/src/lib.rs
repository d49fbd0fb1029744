//! Criterion benchmarks for irrot-core live in `benches/`.
