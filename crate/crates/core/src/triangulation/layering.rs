//! Layering tetrahedra onto the boundary torus.

use super::boundary::{FlatBoundary, MeridianMarking};
use super::{Gluing, Triangulation};
use crate::error::{Error, Result};
use crate::perm::{edge_index, face_vertices, Perm4};

/// Glues a new tetrahedron onto the two boundary faces along boundary edge
/// class `e`. The new tetrahedron has index `t`; its faces 3 and 2 cover the
/// old boundary faces with its edge `01` on `e`, and its edge `23` is the
/// flipped edge of the new boundary. A meridian marking is carried across.
pub fn layer_tetrahedron(tri: &Triangulation, e: usize) -> Result<Triangulation> {
    if e >= tri.edge_count() || !tri.is_boundary_edge(e) {
        return Err(Error::NotBoundaryEdge(e));
    }
    let faces = tri.boundary_faces();
    if faces.len() != 2 {
        return Err(Error::InvalidTriangulation("boundary must have exactly two faces".into()));
    }
    let n = tri.size();
    let mut images = [[0u8; 4]; 2];
    for (slot, &(tet, f)) in faces.iter().enumerate() {
        let corners = face_vertices(f);
        let (a, b) = find_edge(tri, tet, &corners, e)
            .ok_or_else(|| Error::InvalidTriangulation("boundary face misses an edge".into()))?;
        let c = corners.iter().copied().find(|&v| v != a && v != b).unwrap();
        images[slot] = if slot == 0 {
            [a as u8, b as u8, c as u8, f as u8]
        } else {
            [a as u8, b as u8, f as u8, c as u8]
        };
    }
    let p1 = Perm4::new(images[0]).expect("distinct vertices");
    let p2 = Perm4::new(images[1]).expect("distinct vertices");
    let mut gl = tri.gluings().to_vec();
    gl.push([None, None, Some(Gluing { tet: faces[1].0, perm: p2 }), Some(Gluing { tet: faces[0].0, perm: p1 })]);
    gl[faces[0].0][faces[0].1] = Some(Gluing { tet: n, perm: p1.inverse() });
    gl[faces[1].0][faces[1].1] = Some(Gluing { tet: n, perm: p2.inverse() });
    let layered = Triangulation::new(gl)?;
    let meridian = match tri.meridian() {
        Some(m) => Some(m.transport(tri, &layered, |i| i, Some(e))?),
        None => None,
    };
    Ok(layered.with_meridian(meridian))
}

/// Corners `(a, b)` of a boundary face spanning edge class `e`, ordered along
/// the direction of the class.
fn find_edge(tri: &Triangulation, tet: usize, corners: &[usize; 3], e: usize) -> Option<(usize, usize)> {
    for i in 0..3 {
        for j in i + 1..3 {
            let (u, v) = (corners[i], corners[j]);
            let idx = edge_index(u, v);
            if tri.edge_class(tet, idx) == e {
                return Some(if tri.edge_reversed(tet, idx) { (v, u) } else { (u, v) });
            }
        }
    }
    None
}

/// Layers tetrahedra until the marked meridian is a boundary edge. Each layer
/// flips the edge the meridian crosses most often, which walks the Farey
/// graph towards the meridian slope.
pub fn normalize_boundary(tri: &Triangulation, m: &MeridianMarking) -> Result<Triangulation> {
    let mut cur = tri.clone().with_meridian(Some(m.clone()));
    loop {
        let h = m_of(&cur)?.homology(&cur)?;
        let flat = FlatBoundary::new(&cur)?;
        let w: Vec<u64> = (0..3).map(|k| flat.weight(h, k)).collect();
        if w.contains(&0) {
            return Ok(cur);
        }
        let k = (0..3).max_by_key(|&k| w[k]).unwrap();
        log::debug!("layering on boundary edge {} (weights {:?})", flat.edges[k], w);
        cur = layer_tetrahedron(&cur, flat.edges[k])?;
    }
}

fn m_of(tri: &Triangulation) -> Result<&MeridianMarking> {
    tri.meridian()
        .ok_or_else(|| Error::InvalidMarking("triangulation carries no meridian".into()))
}

/// Number of flips separating the meridian from the current boundary edges,
/// i.e. the number of layers [`normalize_boundary`] adds.
pub fn farey_distance(tri: &Triangulation, m: &MeridianMarking) -> Result<usize> {
    let h = m.homology(tri)?;
    let flat = FlatBoundary::new(tri)?;
    let mut w: Vec<u64> = (0..3).map(|k| flat.weight(h, k)).collect();
    let mut steps = 0;
    while !w.contains(&0) {
        w.sort_unstable();
        w[2] = w[1] - w[0];
        steps += 1;
    }
    Ok(steps)
}
