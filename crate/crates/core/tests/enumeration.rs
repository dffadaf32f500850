mod common;

use altknot_core::enumeration::{
    brute_force_fundamental_oracle, enumerate_fundamental_surfaces, enumerate_vertex_surfaces, load_cached,
    store_cached, CacheKey,
};
use altknot_core::normal::{compatible, is_admissible, MatchingSystem};
use altknot_core::{EnumOptions, Error, Layout, NormalCoordinates, SurfaceKind};
use common::{all_fixtures, fixture};
use std::collections::BTreeSet;

fn proportional(a: &[u64], b: &[u64]) -> bool {
    let (i, j) = (0..a.len()).find_map(|k| (a[k] != 0).then_some((a[k], b[k]))).unwrap();
    a.iter().zip(b).all(|(&x, &y)| x as u128 * j as u128 == y as u128 * i as u128)
}

#[test]
fn vertex_surfaces_are_distinct_admissible_solutions_including_the_vertex_link() {
    for (name, tri) in all_fixtures().into_iter().filter(|(_, t)| t.size() <= 6) {
        let layout = Layout::new(&tri).unwrap();
        let ms = MatchingSystem::new(&tri, &layout);
        let verts = enumerate_vertex_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
        for s in &verts.surfaces {
            assert!(ms.is_satisfied(&s.coords) && is_admissible(&layout, &s.coords), "{name}");
        }
        for (k, a) in verts.surfaces.iter().enumerate() {
            for b in &verts.surfaces[k + 1..] {
                assert!(!proportional(&a.coords, &b.coords), "{name}: proportional rays");
            }
        }
        let link = verts
            .surfaces
            .iter()
            .find(|s| (0..layout.tet_count()).all(|t| (0..4).all(|v| s.coords[layout.tri(t, v)] == 1)) && s.coords.total() == 4 * tri.size() as u64)
            .unwrap_or_else(|| panic!("{name}: vertex link missing"));
        assert_eq!(link.euler, 1);
    }
}

#[test]
fn fundamental_surfaces_are_indecomposable_and_contain_the_vertices() {
    for name in ["solidtorus_t3", "trefoil", "torus_3_4"] {
        let tri = fixture(name);
        let layout = Layout::new(&tri).unwrap();
        let opts = EnumOptions::default();
        let verts = enumerate_vertex_surfaces(&tri, &layout, &opts).unwrap();
        let fund = enumerate_fundamental_surfaces(&tri, &layout, &opts).unwrap();
        let set: BTreeSet<&NormalCoordinates> = fund.coords().collect();
        assert!(verts.coords().all(|v| set.contains(v)), "{name}");
        let all: Vec<&NormalCoordinates> = fund.coords().collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i..] {
                if !compatible(&layout, a, b) {
                    continue;
                }
                let sum: Vec<u64> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                assert!(!set.contains(&NormalCoordinates(sum)), "{name}: a sum of two members is listed");
            }
        }
    }
}

#[test]
fn exhaustive_search_agrees_on_the_smallest_solid_torus() {
    let tri = fixture("solidtorus");
    let layout = Layout::new(&tri).unwrap();
    let fund = enumerate_fundamental_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
    let ours: Vec<NormalCoordinates> = fund.coords().filter(|c| c.total() <= 20).cloned().collect();
    let mut ours = ours;
    ours.sort();
    assert_eq!(ours, brute_force_fundamental_oracle(&tri, &layout, 20));
}

#[test]
fn exhaustive_search_edge_cases() {
    let tri = fixture("solidtorus_t2");
    let layout = Layout::new(&tri).unwrap();
    assert!(brute_force_fundamental_oracle(&tri, &layout, 0).is_empty());
    let found = brute_force_fundamental_oracle(&tri, &layout, 20);
    assert!(!found.is_empty());
    for x in &found {
        if x.total() <= 10 {
            assert!(!found.contains(&x.scaled(2)));
        }
    }
}

#[test]
fn ray_cap_is_reported() {
    let tri = fixture("trefoil");
    let layout = Layout::new(&tri).unwrap();
    let opts = EnumOptions { max_rays: 5, ..EnumOptions::default() };
    assert!(matches!(enumerate_vertex_surfaces(&tri, &layout, &opts), Err(Error::ResourceExhausted(_))));
}

#[test]
fn enumeration_does_not_depend_on_tetrahedron_order() {
    let tri = fixture("trefoil");
    let relabeled = tri.relabel(&[3, 0, 4, 1, 2]).unwrap();
    let profile = |t: &altknot_core::Triangulation| {
        let layout = Layout::new(t).unwrap();
        let set = enumerate_vertex_surfaces(t, &layout, &EnumOptions::default()).unwrap();
        let mut p: Vec<(i64, bool, bool, u64)> =
            set.surfaces.iter().map(|s| (s.euler, s.connected, s.two_sided, s.coords.total())).collect();
        p.sort();
        p
    };
    assert_eq!(profile(&tri), profile(&relabeled));
}

#[test]
fn cache_round_trip_and_hash_mismatch() {
    let tri = fixture("solidtorus_t2");
    let layout = Layout::new(&tri).unwrap();
    let verts = enumerate_vertex_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let key = CacheKey { hash: tri.content_hash(), kind: SurfaceKind::Vertex };
    assert!(load_cached(dir.path(), &key).unwrap().is_none());
    store_cached(dir.path(), &key, verts.coords()).unwrap();
    let back = load_cached(dir.path(), &key).unwrap().unwrap();
    assert_eq!(back, verts.coords().cloned().collect::<Vec<_>>());

    // A file carrying another triangulation's hash under this key is refused.
    let other = CacheKey { hash: "0".repeat(64), kind: SurfaceKind::Vertex };
    std::fs::copy(key.path(dir.path()), other.path(dir.path())).unwrap();
    assert!(matches!(load_cached(dir.path(), &other), Err(Error::Cache(_))));
}
