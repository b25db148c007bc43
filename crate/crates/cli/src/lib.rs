//! Command-line harness around `mtsp-core`: seeded benchmark runs,
//! CSV/JSON reporting, manifest handling, and SVG tour rendering.

pub mod benchmark;
pub mod cutoff;
pub mod manifest;
pub mod records;
pub mod report;
pub mod solve;
pub mod svg;
