//! One-vertex triangulations of knot manifolds.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. A gluing
//! `(j, p)` on face `f` of tetrahedron `i` identifies vertex `v` of `i` with
//! vertex `p(v)` of `j`, and face `f` of `i` with face `p(f)` of `j`.

mod boundary;
mod homology;
mod io;
mod layering;

pub use boundary::{BoundaryTriangulation, FlatBoundary, MeridianMarking, Slope};
pub use homology::{filled_homology, first_homology, meridian_homology_check};
pub use layering::{farey_distance, layer_tetrahedron, normalize_boundary};

use crate::error::{Error, Result};
use crate::perm::{edge_index, face_vertices, Perm4, EDGE_VERTICES};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// An edge of a tetrahedron as it appears in an edge class, with its
/// direction (lower to higher local vertex) relative to the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub edge: usize,
    pub reversed: bool,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
    meridian: Option<MeridianMarking>,
    edge_class: Vec<[usize; 6]>,
    edge_reversed: Vec<[bool; 6]>,
    edges: Vec<Vec<EdgeEmbedding>>,
    self_reversed_edge: bool,
    vertex_class: Vec<[usize; 4]>,
    vertex_count: usize,
    boundary_faces: Vec<(usize, usize)>,
}

impl Triangulation {
    /// Builds a triangulation from explicit gluings. Structural errors
    /// (non-involutive gluings, faces glued to themselves, out-of-range
    /// indices) are rejected here; topological checks live in [`validate`].
    ///
    /// [`validate`]: Triangulation::validate
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Triangulation> {
        let t = gluings.len();
        if t == 0 {
            return Err(Error::InvalidTriangulation("no tetrahedra".into()));
        }
        for (i, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= t {
                    return Err(Error::InvalidTriangulation(format!(
                        "tetrahedron {i} face {f} glued to missing tetrahedron {}",
                        g.tet
                    )));
                }
                let back_face = g.perm.apply(f);
                if g.tet == i && back_face == f {
                    return Err(Error::InvalidTriangulation(format!(
                        "tetrahedron {i} face {f} glued to itself"
                    )));
                }
                let back = gluings[g.tet][back_face];
                if back != Some(Gluing { tet: i, perm: g.perm.inverse() }) {
                    return Err(Error::InvalidTriangulation(format!(
                        "gluing of tetrahedron {i} face {f} is not matched by tetrahedron {} face {back_face}",
                        g.tet
                    )));
                }
            }
        }
        let mut tri = Triangulation {
            gluings,
            meridian: None,
            edge_class: Vec::new(),
            edge_reversed: Vec::new(),
            edges: Vec::new(),
            self_reversed_edge: false,
            vertex_class: Vec::new(),
            vertex_count: 0,
            boundary_faces: Vec::new(),
        };
        tri.compute_skeleton();
        Ok(tri)
    }

    pub fn with_meridian(mut self, m: Option<MeridianMarking>) -> Triangulation {
        self.meridian = m;
        self
    }

    pub fn meridian(&self) -> Option<&MeridianMarking> {
        self.meridian.as_ref()
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_class(&self, tet: usize, edge: usize) -> usize {
        self.edge_class[tet][edge]
    }

    /// Whether the tetrahedron edge runs against the direction of its class.
    pub fn edge_reversed(&self, tet: usize, edge: usize) -> bool {
        self.edge_reversed[tet][edge]
    }

    pub fn edge_embeddings(&self, class: usize) -> &[EdgeEmbedding] {
        &self.edges[class]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertex_class(&self, tet: usize, v: usize) -> usize {
        self.vertex_class[tet][v]
    }

    /// Boundary faces as `(tet, face)`, in increasing order.
    pub fn boundary_faces(&self) -> &[(usize, usize)] {
        &self.boundary_faces
    }

    /// Interior face classes, each given once by its lower `(tet, face)` side.
    pub fn interior_faces(&self) -> impl Iterator<Item = (usize, usize, Gluing)> + '_ {
        self.gluings.iter().enumerate().flat_map(|(i, faces)| {
            faces.iter().enumerate().filter_map(move |(f, g)| {
                let g = (*g)?;
                ((i, f) < (g.tet, g.perm.apply(f))).then_some((i, f, g))
            })
        })
    }

    pub fn is_boundary_edge(&self, class: usize) -> bool {
        self.edges[class].iter().any(|e| {
            let [u, v] = EDGE_VERTICES[e.edge];
            (0..4)
                .filter(|&f| f != u && f != v)
                .any(|f| self.gluings[e.tet][f].is_none())
        })
    }

    /// Edge classes lying in the boundary surface, in increasing order.
    pub fn boundary_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&c| self.is_boundary_edge(c)).collect()
    }

    fn compute_skeleton(&mut self) {
        let t = self.size();
        // Edge classes: union-find over (tet, edge) with a direction parity.
        let mut dsu = ParityDsu::new(6 * t);
        for (i, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                for e in 0..6 {
                    let [u, v] = EDGE_VERTICES[e];
                    if u == f || v == f {
                        continue;
                    }
                    let (pu, pv) = (g.perm.apply(u), g.perm.apply(v));
                    let flip = pu > pv;
                    if !dsu.union(6 * i + e, 6 * g.tet + edge_index(pu, pv), flip) {
                        self.self_reversed_edge = true;
                    }
                }
            }
        }
        let mut class_of_root = vec![usize::MAX; 6 * t];
        self.edge_class = vec![[0; 6]; t];
        self.edge_reversed = vec![[false; 6]; t];
        self.edges.clear();
        for i in 0..t {
            for e in 0..6 {
                let (root, parity) = dsu.find(6 * i + e);
                if class_of_root[root] == usize::MAX {
                    class_of_root[root] = self.edges.len();
                    self.edges.push(Vec::new());
                }
                let c = class_of_root[root];
                self.edge_class[i][e] = c;
                self.edge_reversed[i][e] = parity;
                self.edges[c].push(EdgeEmbedding { tet: i, edge: e, reversed: parity });
            }
        }
        // Direction of each class follows its first embedding.
        for c in 0..self.edges.len() {
            if self.edges[c][0].reversed {
                for emb in self.edges[c].iter_mut() {
                    emb.reversed = !emb.reversed;
                    self.edge_reversed[emb.tet][emb.edge] = emb.reversed;
                }
            }
        }

        let mut vdsu = ParityDsu::new(4 * t);
        for (i, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                for v in (0..4).filter(|&v| v != f) {
                    vdsu.union(4 * i + v, 4 * g.tet + g.perm.apply(v), false);
                }
            }
        }
        let mut vclass_of_root = vec![usize::MAX; 4 * t];
        self.vertex_class = vec![[0; 4]; t];
        self.vertex_count = 0;
        for i in 0..t {
            for v in 0..4 {
                let root = vdsu.find(4 * i + v).0;
                if vclass_of_root[root] == usize::MAX {
                    vclass_of_root[root] = self.vertex_count;
                    self.vertex_count += 1;
                }
                self.vertex_class[i][v] = vclass_of_root[root];
            }
        }

        self.boundary_faces = (0..t)
            .flat_map(|i| (0..4).map(move |f| (i, f)))
            .filter(|&(i, f)| self.gluings[i][f].is_none())
            .collect();
    }

    /// Runs every knot-manifold check and reports each separately.
    pub fn validate(&self) -> ValidationReport {
        let t = self.size();
        let connected = {
            let mut dsu = ParityDsu::new(t);
            for (i, j) in self.interior_faces().map(|(i, _, g)| (i, g.tet)) {
                dsu.union(i, j, false);
            }
            (0..t).all(|i| dsu.find(i).0 == dsu.find(0).0)
        };
        let orientable = self.orientation().is_some();
        let nbf = self.boundary_faces.len();
        let boundary_edges = self.boundary_edges().len();
        let boundary_vertices = {
            let mut vs: Vec<usize> = self
                .boundary_faces
                .iter()
                .flat_map(|&(i, f)| face_vertices(f).map(|v| self.vertex_class[i][v]))
                .collect();
            vs.sort_unstable();
            vs.dedup();
            vs.len()
        };
        let boundary_torus = nbf == 2 && boundary_edges == 3 && boundary_vertices == 1;
        // Link of the vertex: one triangle per tetrahedron corner, one edge per
        // face corner (identified across gluings), two vertices per edge end.
        let link_faces = 4 * t as i64;
        let link_edges = 3 * (nbf + (4 * t - nbf) / 2) as i64;
        let link_vertices = 2 * self.edges.len() as i64;
        let vertex_link_disk = self.vertex_count == 1
            && !self.self_reversed_edge
            && nbf > 0
            && link_vertices - link_edges + link_faces == 1;
        ValidationReport {
            one_vertex: self.vertex_count == 1,
            edges_valid: !self.self_reversed_edge,
            vertex_link_disk,
            connected,
            orientable,
            boundary_torus,
            boundary_faces: nbf,
            boundary_edges,
            boundary_vertices,
        }
    }

    /// A consistent orientation (one sign per tetrahedron), if one exists.
    /// With equal signs on both sides a gluing must be an odd permutation.
    pub fn orientation(&self) -> Option<Vec<bool>> {
        let t = self.size();
        let mut dsu = ParityDsu::new(t);
        for (i, f, g) in self.interior_faces() {
            let _ = f;
            if !dsu.union(i, g.tet, g.perm.is_even()) {
                return None;
            }
        }
        Some((0..t).map(|i| dsu.find(i).1).collect())
    }

    /// Validates and returns an error naming the first failed check.
    pub fn require_knot_manifold(&self) -> Result<()> {
        let report = self.validate();
        match report.failures().first() {
            None => Ok(()),
            Some(msg) => Err(Error::InvalidTriangulation(msg.to_string())),
        }
    }

    /// Canonical text form; see [`Triangulation::parse`].
    pub fn serialize(&self) -> String {
        io::serialize(self)
    }

    pub fn parse(text: &str) -> Result<Triangulation> {
        io::parse(text)
    }

    /// SHA-256 of the canonical serialization, as lowercase hex.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.serialize().as_bytes()))
    }

    /// Renumbers tetrahedra: old tetrahedron `i` becomes `order[i]`.
    pub fn relabel(&self, order: &[usize]) -> Result<Triangulation> {
        let t = self.size();
        let mut gl = vec![[None; 4]; t];
        for (i, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                gl[order[i]][f] = g.map(|g| Gluing { tet: order[g.tet], perm: g.perm });
            }
        }
        let meridian = self.meridian.as_ref().map(|m| m.relabel(self, order)).transpose()?;
        Ok(Triangulation::new(gl)?.with_meridian(meridian))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub one_vertex: bool,
    pub edges_valid: bool,
    pub vertex_link_disk: bool,
    pub connected: bool,
    pub orientable: bool,
    pub boundary_torus: bool,
    pub boundary_faces: usize,
    pub boundary_edges: usize,
    pub boundary_vertices: usize,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.connected {
            out.push("triangulation is not connected");
        }
        if !self.one_vertex {
            out.push("triangulation has more than one vertex");
        }
        if !self.edges_valid {
            out.push("an edge is identified with itself in reverse");
        }
        if !self.vertex_link_disk {
            out.push("vertex link is not a disk");
        }
        if !self.orientable {
            out.push("triangulation is not orientable");
        }
        if !self.boundary_torus {
            out.push("boundary is not a one-vertex torus with two faces and three edges");
        }
        out
    }
}

/// Union-find where each element carries a parity relative to its root.
pub(crate) struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityDsu {
    pub(crate) fn new(n: usize) -> ParityDsu {
        ParityDsu { parent: (0..n).collect(), parity: vec![false; n] }
    }

    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // Walk back from the node nearest the root, accumulating parity.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = r;
        }
        (r, if x == r { false } else { self.parity[x] })
    }

    /// Records `parity(a) xor parity(b) == odd`; returns false on a contradiction.
    pub(crate) fn union(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == odd;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ odd;
        true
    }
}
