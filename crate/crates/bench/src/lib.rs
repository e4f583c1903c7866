//! Criterion benchmarks for `phasemask-core` live in `benches/`.
//!
//! Run with `cargo bench -p phasemask-bench`.
