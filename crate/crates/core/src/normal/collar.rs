//! The frontier of a regular neighbourhood of the boundary.

use super::{quad_type, Layout, NormalCoordinates};
use crate::perm::{edge_index, face_vertices};
use crate::triangulation::Triangulation;

/// Normal coordinates of the frontier of a small regular neighbourhood of
/// `∂M`, when that frontier is normal.
///
/// Inside each tetrahedron the boundary meets the vertices, the edges in
/// boundary edge classes and the boundary faces. Each connected piece of that
/// subcomplex contributes one disk of the frontier: a triangle around an
/// isolated vertex, a quadrilateral around an isolated edge, or a triangle
/// parallel to a boundary face. Any other piece makes the frontier non-normal
/// and yields `None`. The surface returned is a torus parallel to `∂M`.
pub fn boundary_collar_torus(tri: &Triangulation, layout: &Layout) -> Option<NormalCoordinates> {
    let mut x = vec![0u64; layout.len()];
    for i in 0..tri.size() {
        let bedge = |u: usize, v: usize| tri.is_boundary_edge(tri.edge_class(i, edge_index(u, v)));
        let mut comp = [0usize, 1, 2, 3];
        for u in 0..4 {
            for v in u + 1..4 {
                if bedge(u, v) {
                    let (a, b) = (comp[u], comp[v]);
                    for c in comp.iter_mut() {
                        if *c == b {
                            *c = a;
                        }
                    }
                }
            }
        }
        for label in 0..4 {
            let members: Vec<usize> = (0..4).filter(|&v| comp[v] == label).collect();
            let complete = members
                .iter()
                .enumerate()
                .all(|(k, &u)| members[k + 1..].iter().all(|&v| bedge(u, v)));
            if !complete {
                return None;
            }
            match members.len() {
                0 => {}
                1 => x[layout.tri(i, members[0])] += 1,
                2 => x[layout.quad(i, quad_type(members[0], members[1]))] += 1,
                3 => {
                    let z = (0..4).find(|v| !members.contains(v)).unwrap();
                    if tri.gluing(i, z).is_some() {
                        return None;
                    }
                    debug_assert_eq!(face_vertices(z).to_vec(), members);
                    x[layout.tri(i, z)] += 1;
                }
                _ => return None,
            }
        }
    }
    Some(NormalCoordinates(x))
}
