#![allow(dead_code)]

use altknot_core::diagram::{parse_pd_entry, PdEntry};
use altknot_core::Triangulation;
use std::path::PathBuf;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> Triangulation {
    let path = fixtures_dir().join("triangulations").join(format!("{name}.tri"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Triangulation::parse(&text).unwrap()
}

/// Every bundled triangulation, by file stem, in name order.
pub fn all_fixtures() -> Vec<(String, Triangulation)> {
    let dir = fixtures_dir().join("triangulations");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tri"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

pub fn pd(name: &str) -> PdEntry {
    let path = fixtures_dir().join("pd").join(format!("{name}.pd"));
    parse_pd_entry(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn all_pd() -> Vec<(String, PdEntry)> {
    let dir = fixtures_dir().join("pd");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "pd"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), pd(&n))).collect()
}

/// Homology class of a normal curve with corner arc counts `y` on a torus
/// triangulated by one pair of triangles, in the basis where the edges
/// opposite the corners have vectors (1,0), (0,1) and (1,1).
///
/// A class `(p, q)` crosses those edges `|q|`, `|p|` and `|p - q|` times, and
/// the edge opposite corner `k` carries the arcs of the other two corners.
pub fn curve_class(y: [u64; 3]) -> (i64, i64) {
    let w = [y[1] + y[2], y[0] + y[2], y[0] + y[1]].map(|v| v as i64);
    for sp in [1, -1] {
        for sq in [1, -1] {
            let (p, q) = (sp * w[1], sq * w[0]);
            if (p - q).abs() == w[2] {
                return (p, q);
            }
        }
    }
    panic!("arc counts {y:?} do not describe a curve")
}

/// Geometric intersection number of two essential simple closed curves.
pub fn curve_intersection(a: [u64; 3], b: [u64; 3]) -> u64 {
    let (p, q) = curve_class(a);
    let (r, s) = curve_class(b);
    (p * s - q * r).unsigned_abs()
}
