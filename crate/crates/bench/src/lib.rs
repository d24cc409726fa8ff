//! Benchmark workloads; see `benches/core_ops.rs`.
