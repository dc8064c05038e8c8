//! Criterion benchmarks for the cipher and the chaotic maps; see `benches/`.
