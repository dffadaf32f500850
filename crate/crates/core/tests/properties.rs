mod common;

use altknot_core::decider::{decide_alternating, DeciderOptions};
use altknot_core::diagram::{checkerboard_stats, dt_code, PlanarDiagram};
use altknot_core::enumeration::enumerate_vertex_surfaces;
use altknot_core::normal::{boundary_coords, boundary_intersection, compatible, haken_sum, Family, SurfaceStats};
use altknot_core::{DtCode, EnumOptions, Layout, NormalCoordinates, Triangulation};
use common::{all_pd, curve_intersection, fixture};
use proptest::prelude::*;
use std::sync::OnceLock;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::OneZero), Just(Family::ZeroOne)]
}

fn curve(f: Family, y: u64) -> [u64; 3] {
    match f {
        Family::OneZero => [y, 1, 0],
        Family::ZeroOne => [y, 0, 1],
    }
}

struct Trefoil {
    tri: Triangulation,
    layout: Layout,
    verts: Vec<NormalCoordinates>,
}

fn trefoil() -> &'static Trefoil {
    static CELL: OnceLock<Trefoil> = OnceLock::new();
    CELL.get_or_init(|| {
        let tri = fixture("trefoil");
        let layout = Layout::new(&tri).unwrap();
        let verts = enumerate_vertex_surfaces(&tri, &layout, &EnumOptions::default()).unwrap();
        Trefoil { verts: verts.coords().cloned().collect(), tri, layout }
    })
}

fn corpus_codes() -> &'static Vec<DtCode> {
    static CELL: OnceLock<Vec<DtCode>> = OnceLock::new();
    CELL.get_or_init(|| all_pd().iter().filter_map(|(_, e)| dt_code(&e.diagram).ok()).collect())
}

/// The code read from another starting label, optionally in reverse.
fn restart(code: &DtCode, shift: usize, reflect: bool) -> DtCode {
    let m = 2 * code.0.len();
    let mut partner = vec![0usize; m + 1];
    for (j, &e) in code.0.iter().enumerate() {
        partner[2 * j + 1] = e as usize;
        partner[e as usize] = 2 * j + 1;
    }
    let relabel = |l: usize| {
        let l = if reflect { (m + 1 - l) % m + 1 } else { l };
        (l - 1 + shift) % m + 1
    };
    let mut moved = vec![0usize; m + 1];
    for l in 1..=m {
        moved[relabel(l)] = relabel(partner[l]);
    }
    DtCode::from_pairing(&moved).unwrap()
}

proptest! {
    #[test]
    fn intersection_matches_homology(fa in family(), ya in 0u64..200, fb in family(), yb in 0u64..200) {
        let got = boundary_intersection(fa, ya, fb, yb);
        prop_assert_eq!(got, curve_intersection(curve(fa, ya), curve(fb, yb)));
        prop_assert_eq!(got, boundary_intersection(fb, yb, fa, ya));
    }

    #[test]
    fn haken_sums_are_additive(picks in prop::collection::vec((0usize..1000, 1u64..4), 2..6)) {
        let t = trefoil();
        // Greedily keep the picks compatible with everything before them.
        let mut x = vec![0u64; t.layout.len()];
        let mut w = vec![0u64; t.layout.len()];
        for (k, &(i, mult)) in picks.iter().enumerate() {
            let v = &t.verts[i % t.verts.len()];
            if compatible(&t.layout, v, &x) && compatible(&t.layout, v, &w) {
                let target = if k % 2 == 0 { &mut x } else { &mut w };
                for (a, b) in target.iter_mut().zip(v.iter()) {
                    *a += mult * b;
                }
            }
        }
        let sum = haken_sum(&t.layout, &x, &w).unwrap();
        let chi = |v: &[u64]| SurfaceStats::compute(&t.tri, &t.layout, v).unwrap().euler;
        prop_assert_eq!(chi(&sum), chi(&x) + chi(&w));
        let (bx, bw, bs) = (boundary_coords(&t.layout, &x), boundary_coords(&t.layout, &w), boundary_coords(&t.layout, &sum));
        prop_assert_eq!(bs, [bx[0] + bw[0], bx[1] + bw[1], bx[2] + bw[2]]);
    }

    #[test]
    fn canonical_dt_ignores_start_and_direction(k in 0usize..100, shift in 0usize..40, reflect in any::<bool>()) {
        let codes = corpus_codes();
        let code = &codes[k % codes.len()];
        let moved = restart(code, 2 * (shift % code.0.len()), reflect);
        prop_assert_eq!(moved.canonical(), code.canonical());
        let c = code.canonical();
        prop_assert_eq!(c.canonical(), c);
    }

    #[test]
    fn strand_labels_do_not_affect_the_diagram(k in 0usize..100, offset in 1u64..1000, scale in 1u64..8) {
        let entries = all_pd();
        let (_, e) = &entries[k % entries.len()];
        let crossings = e.diagram.crossings();
        let relabeled: Vec<[u64; 4]> = crossings.iter().map(|x| x.map(|l| l * scale + offset)).collect();
        let d = PlanarDiagram::new(relabeled).unwrap();
        prop_assert_eq!(d.face_count(), e.diagram.face_count());
        prop_assert_eq!(checkerboard_stats(&d).unwrap(), checkerboard_stats(&e.diagram).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn verdict_does_not_depend_on_tetrahedron_order(order in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let tri = fixture("trefoil");
        let relabeled = tri.relabel(&order).unwrap();
        let opts = DeciderOptions::default();
        let a = decide_alternating(&tri, tri.meridian().unwrap(), &opts).unwrap();
        let b = decide_alternating(&relabeled, relabeled.meridian().unwrap(), &opts).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.counts.vertex, b.counts.vertex);
        prop_assert_eq!(a.counts.fundamental, b.counts.fundamental);
        let (wa, wb) = (a.witness.unwrap(), b.witness.unwrap());
        prop_assert_eq!(wa.intersection, wb.intersection);
        prop_assert_eq!(wa.a.euler + wa.b.euler, wb.a.euler + wb.b.euler);
        prop_assert_eq!(wa.dt, wb.dt);
    }
}
