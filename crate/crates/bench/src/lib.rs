//! Fixture loading shared by the benchmarks in `benches/`.

use altknot_core::diagram::{parse_pd_entry, PdEntry};
use altknot_core::Triangulation;
use std::path::PathBuf;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn triangulation(name: &str) -> Triangulation {
    let path = fixtures_dir().join("triangulations").join(format!("{name}.tri"));
    Triangulation::parse(&std::fs::read_to_string(path).expect("fixture exists")).expect("fixture parses")
}

pub fn pd_corpus() -> Vec<PdEntry> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir().join("pd"))
        .expect("corpus exists")
        .map(|e| e.expect("readable entry").path())
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| parse_pd_entry(&std::fs::read_to_string(p).expect("readable")).expect("valid PD"))
        .collect()
}
