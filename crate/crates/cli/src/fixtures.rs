//! Versioned worked-example data, embedded so verification can run offline.

use serde::Deserialize;

use kohnert::diagrams::Diagram;
use kohnert::words::Word;

pub const ROTHE: &str = include_str!("../fixtures/rothe_152869347.json");
pub const SUPER_YAMANOUCHI: &str = include_str!("../fixtures/super_yamanouchi_152869347.json");
pub const COMPATIBLE: &str = include_str!("../fixtures/compatible_152869347.json");
pub const BIJECTION: &str = include_str!("../fixtures/bijection_152869347.json");
pub const MATCHING: &str = include_str!("../fixtures/matching_152869347.json");

#[derive(Deserialize)]
pub struct RotheFixture {
    pub w: String,
    pub cells: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
pub struct SuperYamanouchiFixture {
    pub w: String,
    pub pi: Word,
}

#[derive(Deserialize)]
pub struct CompatibleFixture {
    pub rho: Word,
    pub alphas: Vec<Word>,
}

#[derive(Deserialize)]
pub struct BijectionFixture {
    pub w: String,
    pub rho: Word,
    pub alpha: Word,
    pub diagram: Diagram,
}

#[derive(Deserialize)]
pub struct MatchingFixture {
    pub w: String,
    pub rho: Word,
    pub pi: Word,
    pub pairs: Vec<usize>,
}

pub fn rothe() -> RotheFixture {
    serde_json::from_str(ROTHE).expect("embedded fixture parses")
}

pub fn super_yamanouchi() -> SuperYamanouchiFixture {
    serde_json::from_str(SUPER_YAMANOUCHI).expect("embedded fixture parses")
}

pub fn compatible() -> CompatibleFixture {
    serde_json::from_str(COMPATIBLE).expect("embedded fixture parses")
}

pub fn bijection() -> BijectionFixture {
    serde_json::from_str(BIJECTION).expect("embedded fixture parses")
}

pub fn matching() -> MatchingFixture {
    serde_json::from_str(MATCHING).expect("embedded fixture parses")
}
