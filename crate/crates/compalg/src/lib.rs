//! Text front end for `compalg-core`: the workspace DSL, JSON assignment
//! files, parallel sampling and the `compalg` command line.

pub mod assignment_file;
pub mod cli;
pub mod dsl;
pub mod sampling;
