//! File formats, reproducible reports, and parallel evaluation drivers for
//! the `morfeval` command-line tool. The algorithms themselves live in
//! `morfeval-core`.

pub mod formats;
pub mod manifest;
pub mod parallel;
pub mod report;
