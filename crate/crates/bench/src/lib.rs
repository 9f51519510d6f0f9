//! Benchmark-only crate; see `benches/curves.rs`.
