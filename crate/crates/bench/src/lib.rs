//! Benchmark-only crate; see `benches/automorph.rs`.
