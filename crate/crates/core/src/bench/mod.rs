//! Problem generators and the benchmark runner.

pub mod catalog;
pub mod generators;
pub mod runner;

pub use runner::{run_bench, BenchReport, Family, FamilySpec, Suite};
