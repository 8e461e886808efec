//! Benchmark-only crate; see `benches/lahbell.rs`.
