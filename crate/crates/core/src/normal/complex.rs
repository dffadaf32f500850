//! The cell complex of a normal surface: one 2-cell per normal disk, arcs in
//! the faces identified across gluings, points on the edges identified along
//! edge classes.
//!
//! Parallel disks are stacked in a fixed normal order. Triangles of type
//! `T_v` are numbered outward from `v`. Quadrilaterals of type `q` are
//! numbered from the side containing vertex 0. Along a face, the arcs at a
//! corner `v` are numbered outward from `v`; along an edge `uv` with `u < v`,
//! points are numbered from `u`.

use super::{quad_side0, quad_type, Layout};
use crate::error::Result;
use crate::perm::{edge_index, EDGE_VERTICES};
use crate::triangulation::{ParityDsu, Triangulation};

/// A normal disk: tetrahedron, type in uniform order (`0..4` triangles,
/// `4..7` quadrilaterals), and its index within the stack of that type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Disk {
    pub tet: usize,
    pub kind: usize,
    pub index: u64,
}

/// Disk counts per tetrahedron and the normal ordering of arcs and points.
pub struct NormalComplex {
    counts: Vec<[u64; 7]>,
    disk_base: Vec<[usize; 7]>,
    disk_total: usize,
}

impl NormalComplex {
    pub fn new(layout: &Layout, x: &[u64]) -> NormalComplex {
        let counts: Vec<[u64; 7]> = (0..layout.tet_count()).map(|i| layout.tet_counts(x, i)).collect();
        let mut disk_base = Vec::with_capacity(counts.len());
        let mut total = 0usize;
        for c in &counts {
            let mut b = [0usize; 7];
            for k in 0..7 {
                b[k] = total;
                total += c[k] as usize;
            }
            disk_base.push(b);
        }
        NormalComplex { counts, disk_base, disk_total: total }
    }

    pub fn counts(&self, tet: usize) -> [u64; 7] {
        self.counts[tet]
    }

    pub fn disk_count(&self) -> usize {
        self.disk_total
    }

    pub fn disk_id(&self, d: Disk) -> usize {
        self.disk_base[d.tet][d.kind] + d.index as usize
    }

    /// The single nonzero quadrilateral type of a tetrahedron, if any.
    pub fn quad_in(&self, tet: usize) -> Option<usize> {
        (0..3).find(|&q| self.counts[tet][4 + q] > 0)
    }

    /// Number of arcs at corner `v` of face `f`.
    pub fn arcs_at(&self, tet: usize, f: usize, v: usize) -> u64 {
        self.counts[tet][v] + self.counts[tet][4 + quad_type(v, f)]
    }

    /// The disk owning arc `k` (counted outward from `v`) at corner `v` of face `f`.
    pub fn arc_owner(&self, tet: usize, f: usize, v: usize, k: u64) -> Disk {
        let nt = self.counts[tet][v];
        if k < nt {
            return Disk { tet, kind: v, index: k };
        }
        let q = quad_type(v, f);
        let l = k - nt;
        let index = if quad_side0(q, v) { l } else { self.counts[tet][4 + q] - 1 - l };
        Disk { tet, kind: 4 + q, index }
    }

    /// Number of points on edge `e` of a tetrahedron.
    pub fn edge_weight(&self, tet: usize, e: usize) -> u64 {
        let [u, v] = EDGE_VERTICES[e];
        let c = &self.counts[tet];
        let crossing: u64 = (0..3).filter(|&q| q != quad_type(u, v)).map(|q| c[4 + q]).sum();
        c[u] + c[v] + crossing
    }

    /// The disk owning point `k` on edge `uv` (`u < v`), counted from `u`.
    pub fn point_owner(&self, tet: usize, e: usize, k: u64) -> Disk {
        let [u, v] = EDGE_VERTICES[e];
        let c = &self.counts[tet];
        if k < c[u] {
            return Disk { tet, kind: u, index: k };
        }
        let mut k = k - c[u];
        for q in (0..3).filter(|&q| q != quad_type(u, v)) {
            let n = c[4 + q];
            if k < n {
                let index = if quad_side0(q, u) { k } else { n - 1 - k };
                return Disk { tet, kind: 4 + q, index };
            }
            k -= n;
        }
        Disk { tet, kind: v, index: c[v] - 1 - k }
    }

    /// Position (from the lower vertex) of the point where arc `k` at corner
    /// `v` of a face crosses the edge from `v` to `a`.
    pub fn arc_endpoint(&self, tet: usize, v: usize, a: usize, k: u64) -> (usize, u64) {
        let e = edge_index(v, a);
        if v < a {
            (e, k)
        } else {
            (e, self.edge_weight(tet, e) - 1 - k)
        }
    }

    /// Whether the reference side of a disk (towards `v` for `T_v`, towards
    /// the vertex-0 side for quadrilaterals) faces corner `v` of the arc it
    /// cuts off there.
    pub fn side_faces_corner(d: Disk, v: usize) -> bool {
        d.kind < 4 || quad_side0(d.kind - 4, v)
    }
}

/// Topological data of a normal surface read off its cell complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceStats {
    pub euler: i64,
    pub components: usize,
    pub connected: bool,
    /// Every component is two-sided (equivalently orientable, in an
    /// orientable manifold).
    pub two_sided: bool,
}

impl SurfaceStats {
    pub fn compute(tri: &Triangulation, layout: &Layout, x: &[u64]) -> Result<SurfaceStats> {
        layout.check_len(x)?;
        let cx = NormalComplex::new(layout, x);
        let t = tri.size();

        // Point instances on every tetrahedron edge.
        let mut point_base = vec![[0usize; 6]; t];
        let mut npoints = 0usize;
        for i in 0..t {
            for e in 0..6 {
                point_base[i][e] = npoints;
                npoints += cx.edge_weight(i, e) as usize;
            }
        }
        // Arc instances at every corner of every face.
        let mut arc_base = vec![[[0usize; 4]; 4]; t];
        let mut narcs = 0usize;
        for i in 0..t {
            for f in 0..4 {
                for v in (0..4).filter(|&v| v != f) {
                    arc_base[i][f][v] = narcs;
                    narcs += cx.arcs_at(i, f, v) as usize;
                }
            }
        }

        let mut points = ParityDsu::new(npoints);
        let mut arcs = ParityDsu::new(narcs);
        let mut disks = ParityDsu::new(cx.disk_count());
        let mut two_sided = true;
        for i in 0..t {
            for f in 0..4 {
                let Some(g) = tri.gluing(i, f) else { continue };
                let (j, p) = (g.tet, g.perm);
                for v in (0..4).filter(|&v| v != f) {
                    let pv = p.apply(v);
                    let n = cx.arcs_at(i, f, v);
                    debug_assert_eq!(n, cx.arcs_at(j, p.apply(f), pv), "matching equations fail");
                    for k in 0..n {
                        arcs.union(
                            arc_base[i][f][v] + k as usize,
                            arc_base[j][p.apply(f)][pv] + k as usize,
                            false,
                        );
                        let d1 = cx.arc_owner(i, f, v, k);
                        let d2 = cx.arc_owner(j, p.apply(f), pv, k);
                        let odd = NormalComplex::side_faces_corner(d1, v)
                            ^ NormalComplex::side_faces_corner(d2, pv);
                        if !disks.union(cx.disk_id(d1), cx.disk_id(d2), odd) {
                            two_sided = false;
                        }
                    }
                    // Points on the edges of face f, counted from v along v→w.
                    for w in (0..4).filter(|&w| w != f && w > v) {
                        let (e1, e2) = (edge_index(v, w), edge_index(pv, p.apply(w)));
                        let n = cx.edge_weight(i, e1);
                        let flip = pv > p.apply(w);
                        for k in 0..n {
                            let k2 = if flip { n - 1 - k } else { k };
                            points.union(
                                point_base[i][e1] + k as usize,
                                point_base[j][e2] + k2 as usize,
                                false,
                            );
                        }
                    }
                }
            }
        }

        let count_roots = |dsu: &mut ParityDsu, n: usize| (0..n).filter(|&a| dsu.find(a).0 == a).count();
        let v = count_roots(&mut points, npoints) as i64;
        let e = count_roots(&mut arcs, narcs) as i64;
        let f = cx.disk_count() as i64;
        let components = count_roots(&mut disks, cx.disk_count());
        Ok(SurfaceStats {
            euler: v - e + f,
            components,
            connected: components == 1,
            two_sided,
        })
    }
}
