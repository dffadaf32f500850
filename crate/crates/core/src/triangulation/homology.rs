//! First homology from the cellular chain complex.

use super::boundary::{FlatBoundary, MeridianMarking};
use super::Triangulation;
use crate::error::{Error, Result};
use crate::linalg::{abelian_group, AbelianGroup};
use crate::perm::{edge_index, face_vertices};

/// Boundary of every face class as an integer combination of edge classes.
fn face_boundaries(tri: &Triangulation) -> Vec<Vec<i64>> {
    let mut faces: Vec<(usize, usize)> = tri.interior_faces().map(|(i, f, _)| (i, f)).collect();
    faces.extend_from_slice(tri.boundary_faces());
    faces
        .into_iter()
        .map(|(i, f)| {
            let [a, b, c] = face_vertices(f);
            let mut rel = vec![0i64; tri.edge_count()];
            for (u, v, coeff) in [(b, c, 1), (a, c, -1), (a, b, 1)] {
                let e = edge_index(u, v);
                let sign = if tri.edge_reversed(i, e) { -1 } else { 1 };
                rel[tri.edge_class(i, e)] += coeff * sign;
            }
            rel
        })
        .collect()
}

fn require_one_vertex(tri: &Triangulation) -> Result<()> {
    if tri.vertex_count() != 1 {
        return Err(Error::InvalidTriangulation(
            "homology is computed for one-vertex triangulations only".into(),
        ));
    }
    Ok(())
}

/// `H_1` of the triangulated manifold.
pub fn first_homology(tri: &Triangulation) -> Result<AbelianGroup> {
    require_one_vertex(tri)?;
    Ok(abelian_group(tri.edge_count(), &face_boundaries(tri)))
}

/// `H_1` of the Dehn filling along the boundary curve in flat class `h`.
pub fn filled_homology(tri: &Triangulation, h: [i64; 2]) -> Result<AbelianGroup> {
    require_one_vertex(tri)?;
    let flat = FlatBoundary::new(tri)?;
    let mut rels = face_boundaries(tri);
    // (1,0) is the class of edges[2] and (0,1) that of edges[1], up to direction.
    let mut cycle = vec![0i64; tri.edge_count()];
    for (k, coeff) in [(2usize, h[0]), (1usize, h[1])] {
        let class = flat.edges[k];
        let v = flat.class_vector(class).expect("φ edge is a boundary edge");
        let sign = v[0] + v[1];
        cycle[class] += coeff * sign;
    }
    rels.push(cycle);
    Ok(abelian_group(tri.edge_count(), &rels))
}

/// Whether filling along the marked curve kills first homology, a necessary
/// condition for the curve to be the meridian of a knot in the 3-sphere.
pub fn meridian_homology_check(tri: &Triangulation, m: &MeridianMarking) -> bool {
    m.homology(tri)
        .and_then(|h| filled_homology(tri, h))
        .is_ok_and(|g| g.is_trivial())
}
