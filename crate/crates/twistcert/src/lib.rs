//! File formats, reports and the reproduction suite for `twistcert-core`.
//!
//! The `twistcert` binary is a thin layer over this library.

pub mod format;
pub mod report;
pub mod suite;

pub use format::{parse_instance, write_instance, FormatError};
