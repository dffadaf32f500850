//! The boundary torus: its flat model, normal curves, slopes and the meridian
//! marking.

use super::Triangulation;
use crate::error::{Error, Result};
use crate::linalg::gcd;
use crate::perm::{edge_index, face_vertices};
use serde::Serialize;
use std::fmt;

/// A slope `a·μ + b·λ`, normalised so that `b > 0`, or `b == 0` and `a == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Slope {
    pub a: i64,
    pub b: i64,
}

impl Slope {
    pub fn new(a: i64, b: i64) -> Slope {
        let g = gcd(a as i128, b as i128) as i64;
        let (mut a, mut b) = if g == 0 { (a, b) } else { (a / g, b / g) };
        if b < 0 || (b == 0 && a < 0) {
            a = -a;
            b = -b;
        }
        Slope { a, b }
    }

    pub const MERIDIAN: Slope = Slope { a: 1, b: 0 };

    /// Geometric intersection number of the two slopes.
    pub fn intersection(self, other: Slope) -> i64 {
        (self.a * other.b - self.b * other.a).abs()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "inf")
        } else if self.b == 1 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}", self.a, self.b)
        }
    }
}

/// A directed tetrahedron edge `tet:uv`, running from vertex `u` to `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    pub tet: usize,
    pub from: usize,
    pub to: usize,
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}{}", self.tet, self.from, self.to)
    }
}

/// The marked meridian as it appears in a triangulation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeridianMarking {
    /// Normal arc counts at the corners of `φ`, corners in increasing vertex order.
    Curve([u64; 3]),
    /// The class `a·[e1] + b·[e2]` of two directed boundary edges.
    Slope { a: i64, b: i64, basis: [DirectedEdge; 2] },
}

impl fmt::Display for MeridianMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeridianMarking::Curve(y) => write!(f, "meridian {} {} {}", y[0], y[1], y[2]),
            MeridianMarking::Slope { a, b, basis } => {
                write!(f, "meridian slope {a}/{b} basis {} {}", basis[0], basis[1])
            }
        }
    }
}

impl MeridianMarking {
    /// Homology class of the marked curve in the flat model of `tri`'s boundary.
    pub fn homology(&self, tri: &Triangulation) -> Result<[i64; 2]> {
        let flat = FlatBoundary::new(tri)?;
        let h = match self {
            MeridianMarking::Curve(y) => {
                if y.iter().all(|&c| c > 0) {
                    return Err(Error::InvalidMarking(
                        "all three arc counts are positive, so the curve has a trivial component"
                            .into(),
                    ));
                }
                flat.class_of_curve(*y)
            }
            MeridianMarking::Slope { a, b, basis } => {
                if basis[0] == basis[1] {
                    return Err(Error::InvalidMarking("basis edges coincide".into()));
                }
                let e1 = flat.directed_vector(tri, basis[0])?;
                let e2 = flat.directed_vector(tri, basis[1])?;
                if (e1[0] * e2[1] - e1[1] * e2[0]).abs() != 1 {
                    return Err(Error::InvalidMarking(
                        "basis edges lie in the same boundary edge class".into(),
                    ));
                }
                [a * e1[0] + b * e2[0], a * e1[1] + b * e2[1]]
            }
        };
        if h == [0, 0] {
            return Err(Error::InvalidMarking("the marked curve is empty".into()));
        }
        if gcd(h[0] as i128, h[1] as i128) != 1 {
            return Err(Error::InvalidMarking(
                "the marked curve has several parallel components".into(),
            ));
        }
        Ok(h)
    }

    /// The same curve, re-expressed on `new` whose tetrahedron `map(i)` is
    /// tetrahedron `i` of `old` (with vertices unchanged). The result is always
    /// in curve form.
    pub(crate) fn transport(
        &self,
        old: &Triangulation,
        new: &Triangulation,
        map: impl Fn(usize) -> usize,
        avoid_class: Option<usize>,
    ) -> Result<MeridianMarking> {
        let h = self.homology(old)?;
        let flat = FlatBoundary::new(old)?;
        let usable: Vec<usize> = (0..3)
            .filter(|&k| Some(flat.edges[k]) != avoid_class)
            .take(2)
            .collect();
        let (ka, kb) = (usable[0], usable[1]);
        let (va, vb) = (flat.instance_vector(ka), flat.instance_vector(kb));
        // Solve h = alpha·va + beta·vb; the determinant is ±1.
        let det = va[0] * vb[1] - va[1] * vb[0];
        let alpha = (h[0] * vb[1] - h[1] * vb[0]) / det;
        let beta = (va[0] * h[1] - va[1] * h[0]) / det;
        let ea = flat.instance_edge(ka);
        let eb = flat.instance_edge(kb);
        let moved = |e: DirectedEdge| DirectedEdge { tet: map(e.tet), ..e };
        let new_flat = FlatBoundary::new(new)?;
        let na = new_flat.directed_vector(new, moved(ea))?;
        let nb = new_flat.directed_vector(new, moved(eb))?;
        let nh = [alpha * na[0] + beta * nb[0], alpha * na[1] + beta * nb[1]];
        Ok(MeridianMarking::Curve(new_flat.curve_of_class(nh)))
    }

    pub(crate) fn relabel(&self, old: &Triangulation, order: &[usize]) -> Result<MeridianMarking> {
        let mut gl = vec![[None; 4]; old.size()];
        for (i, faces) in old.gluings().iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                gl[order[i]][f] = g.map(|g| super::Gluing { tet: order[g.tet], perm: g.perm });
            }
        }
        let new = Triangulation::new(gl)?;
        self.transport(old, &new, |i| order[i], None)
    }
}

/// Flat model of the boundary torus read off the designated face `φ`.
///
/// With corners `c0 < c1 < c2` of `φ`, the directed edges `c0→c1`, `c0→c2`,
/// `c1→c2` get the vectors `(1,0)`, `(0,1)`, `(-1,1)`. A curve in homology
/// class `h` crosses an edge with vector `v` exactly `|det(h, v)|` times in
/// normal position.
#[derive(Clone, Debug)]
pub struct FlatBoundary {
    pub phi: (usize, usize),
    pub corners: [usize; 3],
    /// `edges[k]` is the edge class opposite corner `corners[k]`.
    pub edges: [usize; 3],
    /// Whether the `φ` instance of `edges[k]` runs against its class.
    reversed: [bool; 3],
}

const CORNER_PAIRS: [(usize, usize); 3] = [(1, 2), (0, 2), (0, 1)];

impl FlatBoundary {
    pub fn new(tri: &Triangulation) -> Result<FlatBoundary> {
        let faces = tri.boundary_faces();
        if faces.len() != 2 {
            return Err(Error::InvalidTriangulation(format!(
                "boundary has {} faces, expected 2",
                faces.len()
            )));
        }
        let phi = faces[0];
        let corners = face_vertices(phi.1);
        let mut edges = [0; 3];
        let mut reversed = [false; 3];
        for k in 0..3 {
            let (a, b) = CORNER_PAIRS[k];
            let e = edge_index(corners[a], corners[b]);
            edges[k] = tri.edge_class(phi.0, e);
            reversed[k] = tri.edge_reversed(phi.0, e);
        }
        Ok(FlatBoundary { phi, corners, edges, reversed })
    }

    /// Vector of the `φ` instance of edge `k`, directed from lower to higher corner.
    fn instance_vector(&self, k: usize) -> [i64; 2] {
        match k {
            0 => [-1, 1],
            1 => [0, 1],
            _ => [1, 0],
        }
    }

    fn instance_edge(&self, k: usize) -> DirectedEdge {
        let (a, b) = CORNER_PAIRS[k];
        DirectedEdge { tet: self.phi.0, from: self.corners[a], to: self.corners[b] }
    }

    /// Vector of an edge class, directed along the class.
    pub fn class_vector(&self, class: usize) -> Option<[i64; 2]> {
        let k = self.edges.iter().position(|&c| c == class)?;
        let v = self.instance_vector(k);
        Some(if self.reversed[k] { [-v[0], -v[1]] } else { v })
    }

    /// Vector of a directed tetrahedron edge lying in a boundary edge class.
    pub fn directed_vector(&self, tri: &Triangulation, e: DirectedEdge) -> Result<[i64; 2]> {
        if e.tet >= tri.size() || e.from > 3 || e.to > 3 || e.from == e.to {
            return Err(Error::InvalidMarking(format!("no such edge {e}")));
        }
        let idx = edge_index(e.from, e.to);
        let class = tri.edge_class(e.tet, idx);
        let v = self.class_vector(class).ok_or(Error::NotBoundaryEdge(class))?;
        let against = tri.edge_reversed(e.tet, idx) ^ (e.from > e.to);
        Ok(if against { [-v[0], -v[1]] } else { v })
    }

    /// Number of times a curve of class `h` crosses edge `k`.
    pub fn weight(&self, h: [i64; 2], k: usize) -> u64 {
        let v = self.instance_vector(k);
        (h[0] * v[1] - h[1] * v[0]).unsigned_abs()
    }

    /// Arc counts at the corners of `φ` of the normal curve in class `h`.
    pub fn curve_of_class(&self, h: [i64; 2]) -> [u64; 3] {
        let w = [self.weight(h, 0), self.weight(h, 1), self.weight(h, 2)];
        // Arcs at corner k cross the two edges meeting at k.
        [
            (w[1] + w[2] - w[0]) / 2,
            (w[0] + w[2] - w[1]) / 2,
            (w[0] + w[1] - w[2]) / 2,
        ]
    }

    /// Homology class (up to sign) of the normal curve with the given arc counts.
    pub fn class_of_curve(&self, y: [u64; 3]) -> [i64; 2] {
        let w0 = (y[1] + y[2]) as i64;
        let hx = (y[0] + y[2]) as i64;
        let hy = (y[0] + y[1]) as i64;
        if w0 == hx + hy {
            [hx, hy]
        } else {
            [hx, -hy]
        }
    }
}

/// The boundary torus with its designated face and, once the meridian is an
/// edge, the slope of each boundary edge.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryTriangulation {
    /// `φ` first, then the other boundary face, as `(tet, face)`.
    pub faces: [(usize, usize); 2],
    /// Corners of `φ` in frame order: `corners[0]` is opposite the meridian
    /// edge when the meridian is an edge.
    pub corners: [usize; 3],
    /// `edges[k]` is the edge class opposite `corners[k]`.
    pub edges: [usize; 3],
    /// Slope of `edges[k]`, or `None` while the meridian is not an edge.
    pub slopes: [Option<Slope>; 3],
}

impl BoundaryTriangulation {
    pub fn new(tri: &Triangulation) -> Result<BoundaryTriangulation> {
        let flat = FlatBoundary::new(tri)?;
        let faces = [tri.boundary_faces()[0], tri.boundary_faces()[1]];
        let mut order = [0usize, 1, 2];
        let mut slopes = [None; 3];
        if let Some(m) = tri.meridian() {
            let h = m.homology(tri)?;
            let weights: Vec<u64> = (0..3).map(|k| flat.weight(h, k)).collect();
            if let Some(k) = weights.iter().position(|&w| w == 0) {
                order = match k {
                    0 => [0, 1, 2],
                    1 => [1, 0, 2],
                    _ => [2, 0, 1],
                };
                // Orient the other two edges to meet μ positively; they differ by ±μ.
                let orient = |j: usize| {
                    let v = flat.instance_vector(j);
                    if h[0] * v[1] - h[1] * v[0] < 0 {
                        [-v[0], -v[1]]
                    } else {
                        v
                    }
                };
                let (j1, j2) = (order[1], order[2]);
                let (u, w) = (orient(j1), orient(j2));
                let diff = [w[0] - u[0], w[1] - u[1]];
                let plus = diff == h;
                slopes[k] = Some(Slope::MERIDIAN);
                slopes[j1] = Some(if plus { Slope::new(0, 1) } else { Slope::new(1, 1) });
                slopes[j2] = Some(if plus { Slope::new(1, 1) } else { Slope::new(0, 1) });
            }
        }
        Ok(BoundaryTriangulation {
            faces,
            corners: order.map(|k| flat.corners[k]),
            edges: order.map(|k| flat.edges[k]),
            slopes: order.map(|k| slopes[k]),
        })
    }

    pub fn phi(&self) -> (usize, usize) {
        self.faces[0]
    }

    /// Whether the marked meridian is the boundary edge opposite `corners[0]`.
    pub fn is_normalized(&self) -> bool {
        self.slopes[0] == Some(Slope::MERIDIAN)
    }
}
