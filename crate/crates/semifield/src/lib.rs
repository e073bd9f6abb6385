//! Command-line front end, corpus files and benchmarks for `semifield-core`.

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod record;
