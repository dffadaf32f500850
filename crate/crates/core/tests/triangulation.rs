mod common;

use altknot_core::triangulation::{
    farey_distance, filled_homology, first_homology, layer_tetrahedron, meridian_homology_check,
    normalize_boundary,
};
use altknot_core::{BoundaryTriangulation, Error, Layout, MeridianMarking, Triangulation};
use common::{all_fixtures, curve_class, fixture};

#[test]
fn one_tetrahedron_solid_torus() {
    let tri = fixture("solidtorus");
    assert_eq!(tri.size(), 1);
    assert_eq!(tri.boundary_faces().len(), 2);
    assert!(tri.validate().ok());
}

#[test]
fn two_tetrahedra_give_fourteen_coordinates() {
    let tri = fixture("solidtorus_t2");
    assert_eq!(Layout::new(&tri).unwrap().len(), 14);
}

#[test]
fn serialization_round_trips() {
    for (name, tri) in all_fixtures() {
        let text = tri.serialize();
        let again = Triangulation::parse(&text).unwrap();
        assert_eq!(again.serialize(), text, "{name}");
        assert_eq!(again.content_hash(), tri.content_hash(), "{name}");
    }
}

#[test]
fn face_glued_without_partner_is_rejected() {
    // Face 0 is glued to face 1, which claims to be boundary.
    assert!(Triangulation::parse("tets 1\ntet 0: 0:1230 b b b\n").is_err());
}

#[test]
fn two_disjoint_tetrahedra_are_disconnected() {
    let tri = Triangulation::parse("tets 2\ntet 0: 0:1230 0:3012 b b\ntet 1: 1:1230 1:3012 b b\n").unwrap();
    let report = tri.validate();
    assert!(!report.connected);
    assert!(matches!(tri.require_knot_manifold(), Err(Error::InvalidTriangulation(_))));
}

#[test]
fn closed_triangulation_has_no_boundary_torus() {
    // The solid torus with its two boundary faces glued to each other.
    let tri = Triangulation::parse("tets 1\ntet 0: 0:1230 0:3012 0:1032 0:1032\n").unwrap();
    let report = tri.validate();
    assert_eq!(report.boundary_faces, 0);
    assert!(!report.boundary_torus);
}

#[test]
fn fixtures_are_knot_manifolds_with_three_boundary_edges() {
    for (name, tri) in all_fixtures() {
        tri.require_knot_manifold().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(tri.boundary_edges().len(), 3, "{name}");
        let b = BoundaryTriangulation::new(&tri).unwrap();
        let mut edges = b.edges.to_vec();
        edges.sort();
        edges.dedup();
        assert_eq!(edges.len(), 3, "{name}");
    }
}

#[test]
fn knot_exteriors_have_infinite_cyclic_homology() {
    for (name, tri) in all_fixtures() {
        let h = first_homology(&tri).unwrap();
        assert_eq!((h.rank, h.torsion.len()), (1, 0), "{name}: {h}");
    }
}

#[test]
fn layering_adds_a_tetrahedron_and_keeps_homology() {
    let tri = fixture("solidtorus_t2");
    let before = first_homology(&tri).unwrap();
    let e = BoundaryTriangulation::new(&tri).unwrap().edges;
    let once = layer_tetrahedron(&tri, e[1]).unwrap();
    assert_eq!(once.size(), 3);
    once.require_knot_manifold().unwrap();
    assert_eq!(BoundaryTriangulation::new(&once).unwrap().phi().0, 2);
    let e2 = BoundaryTriangulation::new(&once).unwrap().edges;
    let twice = layer_tetrahedron(&once, e2[2]).unwrap();
    assert_eq!(twice.size(), 4);
    assert_eq!(first_homology(&twice).unwrap(), before);
}

#[test]
fn layering_on_an_interior_edge_fails() {
    let tri = fixture("trefoil");
    let interior = (0..tri.edge_count()).find(|&e| !tri.is_boundary_edge(e)).unwrap();
    assert!(matches!(layer_tetrahedron(&tri, interior), Err(Error::NotBoundaryEdge(_))));
}

#[test]
fn normalized_fixture_is_a_fixed_point() {
    let tri = fixture("trefoil");
    let m = tri.meridian().unwrap().clone();
    assert_eq!(farey_distance(&tri, &m).unwrap(), 0);
    assert_eq!(normalize_boundary(&tri, &m).unwrap().serialize(), tri.serialize());
}

/// Fewest layers, over every choice of edges, after which the meridian is an edge.
fn fewest_layers(tri: &Triangulation, depth: usize) -> Option<usize> {
    if BoundaryTriangulation::new(tri).unwrap().is_normalized() {
        return Some(0);
    }
    if depth == 0 {
        return None;
    }
    tri.boundary_edges()
        .into_iter()
        .filter_map(|e| fewest_layers(&layer_tetrahedron(tri, e).unwrap(), depth - 1))
        .min()
        .map(|k| k + 1)
}

#[test]
fn normalization_uses_the_fewest_layers() {
    for name in ["solidtorus_t2", "solidtorus_t3"] {
        let tri = fixture(name);
        let m = tri.meridian().unwrap().clone();
        let best = fewest_layers(&tri, 4).unwrap();
        let norm = normalize_boundary(&tri, &m).unwrap();
        assert_eq!(norm.size() - tri.size(), best, "{name}");
        assert_eq!(farey_distance(&tri, &m).unwrap(), best, "{name}");
        assert!(BoundaryTriangulation::new(&norm).unwrap().is_normalized());
    }
}

#[test]
fn trivial_curve_marking_is_rejected() {
    let tri = fixture("trefoil");
    let m = MeridianMarking::Curve([1, 1, 1]);
    assert!(matches!(m.homology(&tri), Err(Error::InvalidMarking(_))));
    assert!(normalize_boundary(&tri, &m).is_err());
}

#[test]
fn bundled_meridians_fill_to_homology_spheres() {
    for (name, tri) in all_fixtures() {
        assert!(meridian_homology_check(&tri, tri.meridian().unwrap()), "{name}");
    }
}

/// Curves meeting the meridian once are `k·μ + λ`, and filling along one
/// gives `Z/|k|` (with `Z` for the longitude, `k = 0`). In the flat model `k`
/// is affine in the slope position with unit step, so the orders are `|c ± s|`.
#[test]
fn fillings_along_spanning_slopes_follow_the_longitude() {
    let tri = fixture("trefoil");
    let mut orders = Vec::new();
    for y in 0..8u64 {
        for curve in [[y, 1, 0], [y, 0, 1]] {
            let m = MeridianMarking::Curve(curve);
            let h = m.homology(&tri).unwrap();
            let g = filled_homology(&tri, h).unwrap();
            let order: i64 = if g.rank == 1 {
                0
            } else {
                g.torsion.iter().map(|d| i64::try_from(d.clone()).unwrap()).product()
            };
            assert!(g.rank + g.torsion.len() <= 1, "filling along {curve:?} gives {g}");
            // Position along the line of slopes meeting the meridian once.
            let (p, q) = curve_class(curve);
            orders.push((p * q, order));
            assert_eq!(meridian_homology_check(&tri, &m), order == 1);
        }
    }
    let on_line = (-50..=50).any(|c| {
        [1, -1].iter().any(|sign| orders.iter().all(|&(s, o)| (c + sign * s).abs() == o))
    });
    assert!(on_line, "orders {orders:?}");
    assert!(orders.iter().any(|&(_, o)| o == 0), "no longitude among {orders:?}");
}
