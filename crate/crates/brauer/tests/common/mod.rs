#![allow(dead_code)]

use std::path::PathBuf;

use brauer::ribbon::parse_graph;
use brauer::BrauerGraph;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load(name: &str) -> BrauerGraph {
    let path = fixture_dir().join(format!("{name}.bg"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_graph(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Tilting-discrete corpus, each with its multiplicity-3 variant.
pub const CORPUS: &[&str] = &[
    "g1", "line2", "line3", "star2", "star3", "loop", "loop_pendant", "triangle",
];

pub fn with_variants() -> Vec<String> {
    CORPUS
        .iter()
        .flat_map(|n| [n.to_string(), format!("{n}_m3")])
        .collect()
}

pub const ALL: &[&str] = &[
    "g1", "g1_m3", "line2", "line2_m3", "line3", "line3_m3", "star2", "star2_m3", "star3",
    "star3_m3", "loop", "loop_m3", "loop_pendant", "loop_pendant_m3", "triangle", "triangle_m3",
    "tri_pendant", "tri_pendant_m3", "digon", "two_loop", "triple_edge", "six_edge",
];
