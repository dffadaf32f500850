mod common;

use altknot_core::enumeration::{enumerate_fundamental_surfaces, enumerate_vertex_surfaces};
use altknot_core::normal::{
    boundary_coords, classify_spanning, euler_characteristic, haken_sum, intersection_number, is_admissible,
    is_connected, quad_type, Family, Layout, MatchingSystem, NormalCoordinates, SpanningSurfaceRecord,
};
use altknot_core::triangulation::normalize_boundary;
use altknot_core::{EnumOptions, Error};
use common::{all_fixtures, fixture};

#[test]
fn matching_system_sizes() {
    let t2 = fixture("solidtorus_t2");
    let ms = MatchingSystem::new(&t2, &Layout::new(&t2).unwrap());
    assert_eq!((ms.rows.len(), ms.cols), (9, 14));
    // One interior face class with three arc types.
    let t1 = fixture("solidtorus");
    assert_eq!(MatchingSystem::new(&t1, &Layout::new(&t1).unwrap()).rows.len(), 3);
}

fn vertex_link(layout: &Layout) -> Vec<u64> {
    let mut x = vec![0; layout.len()];
    for tet in 0..layout.tet_count() {
        for v in 0..4 {
            x[layout.tri(tet, v)] = 1;
        }
    }
    x
}

#[test]
fn vertex_link_is_a_disk_with_trivial_boundary() {
    for (name, tri) in all_fixtures() {
        let layout = Layout::new(&tri).unwrap();
        let x = vertex_link(&layout);
        assert!(MatchingSystem::new(&tri, &layout).is_satisfied(&x), "{name}");
        assert_eq!(euler_characteristic(&tri, &layout, &x).unwrap(), 1, "{name}");
        assert!(is_connected(&tri, &layout, &x).unwrap(), "{name}");
        assert!(boundary_coords(&layout, &x).iter().all(|&y| y > 0), "{name}");
    }
}

#[test]
fn admissibility() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    assert!(is_admissible(&layout, &vec![0; layout.len()]));
    let mut x = vec![0; layout.len()];
    x[layout.quad(2, 0)] = 1;
    x[layout.quad(2, 1)] = 1;
    assert!(!is_admissible(&layout, &x));
    let mut y = vec![0; layout.len()];
    for tet in 0..layout.tet_count() {
        y[layout.quad(tet, 1)] = 3;
    }
    assert!(is_admissible(&layout, &y));
}

#[test]
fn boundary_coordinates_add_triangles_and_quads_at_the_frame() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let b = layout.boundary();
    let (pt, f) = b.phi();
    let mut x = vec![0; layout.len()];
    x[layout.tri(pt, b.corners[0])] = 2;
    x[layout.quad(pt, quad_type(b.corners[0], f))] = 1;
    assert_eq!(boundary_coords(&layout, &x), [3, 0, 0]);
}

#[test]
fn closed_surfaces_have_empty_boundary() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let verts = enumerate_vertex_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
    let closed: Vec<_> = verts.surfaces.iter().filter(|s| s.is_closed()).collect();
    assert!(!closed.is_empty());
    for s in closed {
        assert_eq!(boundary_coords(&layout, &s.coords), [0, 0, 0]);
    }
}

#[test]
fn doubling_doubles_chi_and_disconnects_two_sided_bounded_surfaces() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let verts = enumerate_vertex_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
    for s in &verts.surfaces {
        let double = s.coords.scaled(2);
        assert_eq!(euler_characteristic(&tri, &layout, &double).unwrap(), 2 * s.euler);
        // The double of a one-sided surface is the boundary of its
        // I-bundle, which stays connected.
        if s.connected && !s.is_closed() {
            assert_eq!(is_connected(&tri, &layout, &double).unwrap(), !s.two_sided);
        }
    }
}

#[test]
fn boundary_parallel_torus_has_chi_zero() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let torus = altknot_core::normal::boundary_collar_torus(&tri, &layout).expect("collar torus is normal");
    assert_eq!(euler_characteristic(&tri, &layout, &torus).unwrap(), 0);
    assert!(is_connected(&tri, &layout, &torus).unwrap());
}

#[test]
fn trefoil_fundamental_surfaces_are_connected() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let fund = enumerate_fundamental_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
    assert!(fund.surfaces.iter().all(|s| s.connected));
}

#[test]
fn haken_sum_with_zero_and_conflicting_quads() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let x = vertex_link(&layout);
    let zero = vec![0; layout.len()];
    assert_eq!(haken_sum(&layout, &x, &zero).unwrap(), NormalCoordinates(x.clone()));
    let (mut a, mut b) = (zero.clone(), zero);
    a[layout.quad(1, 1)] = 1;
    b[layout.quad(1, 2)] = 1;
    assert!(matches!(haken_sum(&layout, &a, &b), Err(Error::IncompatibleQuads { tet: 1 })));
}

#[test]
fn spanning_classification_reads_the_boundary() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let fund = enumerate_fundamental_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
    let mut families = Vec::new();
    for s in &fund.surfaces {
        let y = boundary_coords(&layout, &s.coords);
        let rec = classify_spanning(&tri, &layout, &s.coords).unwrap();
        match (y[1], y[2]) {
            (1, 0) | (0, 1) => {
                let rec = rec.expect("meets the meridian once");
                let want = if y[1] == 1 { Family::OneZero } else { Family::ZeroOne };
                assert_eq!((rec.family, rec.y, rec.euler), (want, y[0], s.euler));
                families.push(rec.family);
                // Two parallel copies meet the meridian twice.
                let double = s.coords.scaled(2);
                assert!(classify_spanning(&tri, &layout, &double).unwrap().is_none());
            }
            _ => assert!(rec.is_none(), "{y:?}"),
        }
    }
    assert!(families.contains(&Family::OneZero) && families.contains(&Family::ZeroOne));
    let closed = fund.surfaces.iter().find(|s| s.is_closed()).unwrap();
    assert!(classify_spanning(&tri, &layout, &closed.coords).unwrap().is_none());
}

#[test]
fn classification_needs_a_normalized_boundary() {
    let tri = fixture("solidtorus_t3");
    let layout = Layout::new(&tri).unwrap();
    let x = NormalCoordinates(vertex_link(&layout));
    assert!(matches!(classify_spanning(&tri, &layout, &x), Err(Error::InvalidMarking(_))));
    let m = tri.meridian().unwrap().clone();
    let norm = normalize_boundary(&tri, &m).unwrap();
    let layout = Layout::new(&norm).unwrap();
    assert!(layout.boundary().is_normalized());
}

fn record(family: Family, y: u64) -> SpanningSurfaceRecord {
    SpanningSurfaceRecord { coords: NormalCoordinates(vec![]), euler: 0, connected: true, family, y }
}

#[test]
fn intersection_number_cases() {
    assert_eq!(intersection_number(&record(Family::OneZero, 3), &record(Family::ZeroOne, 2)), 6);
    assert_eq!(intersection_number(&record(Family::OneZero, 5), &record(Family::OneZero, 5)), 0);
    assert_eq!(intersection_number(&record(Family::OneZero, 7), &record(Family::OneZero, 3)), 4);
}
