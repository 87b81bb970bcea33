//! Criterion benchmarks for the mining, filtering and simplification stages.
//! Run with `cargo bench -p qci-bench`.
