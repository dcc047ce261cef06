//! Permutation-group backtrack search over stacks of labelled digraphs.

pub mod approx;
pub mod bench;
pub mod canon;
pub mod chain;
pub mod cli;
pub mod digraph;
pub mod equitable;
pub mod error;
pub mod io;
pub mod label;
pub mod laws;
pub mod oracle;
pub mod perm;
pub mod refiner;
pub mod rng;
pub mod search;
