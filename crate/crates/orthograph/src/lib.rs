//! IO, command line, oracles and verification suites on top of
//! `orthograph-core`.

pub use orthograph_core as core;

pub mod oracle;
pub mod fixtures;
pub mod format;
pub mod tables;
pub mod scan;
pub mod verify;
