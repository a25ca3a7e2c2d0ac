//! Benchmark-only crate; the measurements live in `benches/solvers.rs`.
//!
//! Run with `cargo bench -p vofrac-bench`.
