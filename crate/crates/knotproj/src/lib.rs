//! File formats, reports and command-line plumbing around `knotproj-core`.

pub mod analysis;
pub mod dataset;
pub mod dot;
pub mod verify;
