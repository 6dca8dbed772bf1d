//! Benchmark-only crate; see `benches/decisions.rs`.
