//! Benchmarks for the bidisk engine live in `benches/`; run them with
//! `cargo bench -p bidisk-bench`.
