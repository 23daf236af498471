//! Criterion benchmarks for `oddquant-core`; see `benches/`.
