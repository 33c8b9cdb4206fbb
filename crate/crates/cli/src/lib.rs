//! Command-line front end pieces: descriptor grammar, zero-list files,
//! layered run configuration, report serialization, command orchestration,
//! and the self-verification suites. The `growthlab` binary is a thin
//! argument parser over these modules.

pub mod commands;
pub mod config;
pub mod descriptor;
pub mod report;
pub mod verify;
pub mod zeros_io;
