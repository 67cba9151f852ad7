//! File-level front end for `strtherm-core`: loading inputs, running the
//! analysis, and rendering reports, histograms and model curves.

pub mod batch;
pub mod corpus;
pub mod emit;
pub mod pipeline;

pub use pipeline::{analyze_files, AnalyzeOptions, FileReport, Outcome, REPORT_VERSION};
