//! Std companion to `qmat-core`: serialization, golden fixtures, an on-disk
//! normal-form cache, verification reports, and the `qmat` command line.

pub mod cache;
pub mod fixtures;
pub mod format;
pub mod report;
pub mod verify;
