//! Experiments on extended promotion: poset generators, file I/O,
//! verification suites, conjecture scans and reports.

pub mod bubble;
pub mod catalog;
pub mod error;
pub mod experiments;
pub mod generate;
pub mod io;
pub mod report;

pub use error::{LabError, Result};
pub use report::{Check, ExperimentReport, Status, Witness};
