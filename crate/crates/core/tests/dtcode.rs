mod common;

use altknot_core::decider::{decide_alternating, DeciderOptions};
use altknot_core::diagram::dt_code;
use altknot_core::dtcode::{extract_dt_code, realize_intersection, IntersectionArc, RealizedPair, Segment};
use altknot_core::normal::Disk;
use altknot_core::triangulation::normalize_boundary;
use altknot_core::{DtCode, DtOutcome, Error, Layout};
use common::{fixture, pd};

fn realize_witness(name: &str) -> (RealizedPair, u64) {
    let tri = fixture(name);
    let m = tri.meridian().unwrap().clone();
    let w = decide_alternating(&tri, &m, &DeciderOptions::default()).unwrap().witness.unwrap();
    let norm = normalize_boundary(&tri, &m).unwrap();
    let layout = Layout::new(&norm).unwrap();
    (realize_intersection(&norm, &layout, &w.a, &w.b).unwrap(), w.intersection)
}

#[test]
fn witness_arcs_match_the_boundary_crossings() {
    for (name, arcs) in [("trefoil", 3), ("figure8", 4)] {
        let (r, i) = realize_witness(name);
        assert!(r.loops.is_empty(), "{name}");
        assert_eq!(r.boundary_points as u64, i, "{name}");
        assert_eq!(r.arcs.len(), arcs, "{name}");
        assert_eq!(2 * r.arcs.len(), r.boundary_points, "{name}");
        let mut labels: Vec<usize> = r.arcs.iter().flat_map(|a| a.labels).collect();
        labels.sort();
        assert_eq!(labels, (1..=r.boundary_points).collect::<Vec<_>>(), "{name}");
        assert!(r.arcs.iter().all(|a| !a.segments.is_empty()));
    }
}

#[test]
fn witness_codes_match_the_diagrams() {
    for (name, knot) in [("trefoil", "3_1"), ("figure8", "4_1")] {
        let (r, _) = realize_witness(name);
        let DtOutcome::Code(code) = extract_dt_code(&r).unwrap() else { panic!("{name}: loops") };
        let from_diagram = dt_code(&pd(knot).diagram).unwrap();
        assert_eq!(code.canonical(), from_diagram.canonical(), "{name}");
    }
}

fn arc(a: usize, b: usize) -> IntersectionArc {
    IntersectionArc { labels: [a, b], segments: Vec::new() }
}

#[test]
fn loops_are_reported_instead_of_a_code() {
    let seg = Segment {
        tet: 0,
        disk_a: Disk { tet: 0, kind: 0, index: 0 },
        disk_b: Disk { tet: 0, kind: 1, index: 0 },
    };
    let r = RealizedPair { arcs: vec![arc(1, 4), arc(3, 6), arc(5, 2)], loops: vec![vec![seg]], boundary_points: 6, attempt: 0 };
    assert_eq!(extract_dt_code(&r).unwrap(), DtOutcome::LoopsPresent);
}

#[test]
fn arcs_between_labels_of_equal_parity_are_rejected() {
    let r = RealizedPair { arcs: vec![arc(1, 3), arc(2, 4)], loops: vec![], boundary_points: 4, attempt: 0 };
    assert!(matches!(extract_dt_code(&r), Err(Error::ParallelArc(1, 3))));
}

#[test]
fn arc_count_must_match_the_crossings() {
    let r = RealizedPair { arcs: vec![arc(1, 4)], loops: vec![], boundary_points: 6, attempt: 0 };
    assert!(matches!(extract_dt_code(&r), Err(Error::Realization(_))));
}

#[test]
fn codes_parse_and_print() {
    let c: DtCode = "4, 6, -2".parse().unwrap();
    assert_eq!(c, DtCode(vec![4, 6, 2]));
    assert_eq!(c.to_string(), "4 6 2");
    assert!(c.is_valid());
    assert!(!DtCode(vec![4, 4, 2]).is_valid());
}
