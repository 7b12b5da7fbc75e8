//! Reports, SVG/CSV output and the command line for `kernelflow-core`.

pub mod cli;
pub mod json;
pub mod report;
pub mod svg;
pub mod trace;
pub mod verify;
