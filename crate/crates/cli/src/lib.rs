//! Verification drivers and fixture data for the `kohnert` CLI.

pub mod checks;
pub mod fixtures;
