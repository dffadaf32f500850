//! Realizing two spanning surfaces together and tracing their intersection.
//!
//! Every normal point sits at a fixed rational position on its edge class.
//! On interior edges the points of each surface are evenly spaced, with the
//! second surface nudged off the first. On the boundary torus the points sit
//! where a straight closed geodesic of the flat model crosses each edge, so
//! the two boundary curves cross exactly `|det(h_a, h_b)|` times.
//!
//! Normal arcs are straight chords of each face. Inside a tetrahedron, a disk
//! of one surface and a disk of the other whose boundary curves cross twice
//! on the tetrahedron's boundary meet in a single segment joining the two
//! crossings. Quadrilaterals of different types can cross four times; the
//! two segments then pair the crossings so that neither disk sees them
//! interleaved, which determines the pairing uniquely.

use super::{IntersectionArc, RealizedPair, Segment};
use crate::error::{Error, Result};
use crate::normal::{intersection_number, Disk, Layout, NormalComplex, SpanningSurfaceRecord};
use crate::perm::face_vertices;
use crate::triangulation::{FlatBoundary, ParityDsu, Triangulation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

type Q = BigRational;
type Xy = [Q; 2];

fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Phases tried for the second boundary curve, in order.
const PHASES: [(i64, i64); 6] = [(1, 3), (2, 7), (3, 5), (1, 5), (5, 7), (2, 9)];

/// Placement variants tried before giving up: boundary phase of `b` and the
/// direction in which interior points of `b` are nudged.
fn attempts() -> impl Iterator<Item = ((i64, i64), i64)> {
    PHASES.into_iter().flat_map(|p| [(p, 1), (p, -1)])
}

/// Positions of one surface's points along every edge class, increasing in
/// the class direction.
struct EdgePoints(Vec<Vec<Q>>);

impl EdgePoints {
    /// Position of point `idx` (counted from the lower vertex) on a tetrahedron edge.
    fn at(&self, tri: &Triangulation, tet: usize, e: usize, idx: u64) -> Q {
        let p = &self.0[tri.edge_class(tet, e)];
        if tri.edge_reversed(tet, e) {
            Q::one() - &p[p.len() - 1 - idx as usize]
        } else {
            p[idx as usize].clone()
        }
    }
}

fn class_weights(tri: &Triangulation, cx: &NormalComplex) -> Vec<usize> {
    (0..tri.edge_count())
        .map(|c| {
            let emb = tri.edge_embeddings(c)[0];
            cx.edge_weight(emb.tet, emb.edge) as usize
        })
        .collect()
}

/// Homology class of the boundary curve of a surface, from its arcs in `φ`.
fn boundary_class(flat: &FlatBoundary, cx: &NormalComplex) -> [i64; 2] {
    let (tet, f) = flat.phi;
    flat.class_of_curve(flat.corners.map(|v| cx.arcs_at(tet, f, v)))
}

/// Crossings of the closed geodesic `{x : det(x, h) ≡ δ}` with a boundary edge.
fn geodesic_points(v: [i64; 2], h: [i64; 2], delta: &Q) -> Vec<Q> {
    let d = v[0] * h[1] - v[1] * h[0];
    let w = d.abs();
    let phase = if d > 0 { delta.clone() } else { Q::one() - delta };
    (0..w).map(|k| (Q::from_integer(k.into()) + &phase) / Q::from_integer(w.into())).collect()
}

fn place(
    tri: &Triangulation,
    flat: &FlatBoundary,
    cx: [&NormalComplex; 2],
    phase_b: (i64, i64),
    nudge: i64,
) -> Result<Option<[EdgePoints; 2]>> {
    let w = [class_weights(tri, cx[0]), class_weights(tri, cx[1])];
    let h = [boundary_class(flat, cx[0]), boundary_class(flat, cx[1])];
    let delta = [q(1, 2), q(phase_b.0, phase_b.1)];
    let mut out = [Vec::new(), Vec::new()];
    for c in 0..tri.edge_count() {
        if let Some(v) = flat.class_vector(c) {
            for s in 0..2 {
                let pts = geodesic_points(v, h[s], &delta[s]);
                if pts.len() != w[s][c] {
                    return Err(Error::Realization(format!(
                        "boundary edge {c} carries {} points but the boundary curve crosses it {} times",
                        w[s][c],
                        pts.len()
                    )));
                }
                out[s].push(pts);
            }
            if out[0][c].iter().any(|p| out[1][c].contains(p)) {
                return Ok(None);
            }
        } else {
            let (na, nb) = (w[0][c] as i64 + 1, w[1][c] as i64 + 1);
            let eps = q(nudge, 4 * na * nb);
            out[0].push((1..na).map(|k| q(k, na)).collect());
            out[1].push((1..nb).map(|k| q(k, nb) + &eps).collect());
        }
    }
    let [a, b] = out;
    Ok(Some([EdgePoints(a), EdgePoints(b)]))
}

/// Face-local affine coordinates: the face's vertices, increasing, go to
/// `(0,0)`, `(1,0)`, `(0,1)`.
fn corner_xy(face: [usize; 3], v: usize) -> Xy {
    match face.iter().position(|&x| x == v) {
        Some(0) => [Q::zero(), Q::zero()],
        Some(1) => [Q::one(), Q::zero()],
        _ => [Q::zero(), Q::one()],
    }
}

/// Chord of arc `k` at corner `v` of face `f`, from its end on edge `v a` to
/// its end on edge `v b`, where `a < b` are the other corners.
fn chord(tri: &Triangulation, cx: &NormalComplex, pts: &EdgePoints, tet: usize, f: usize, v: usize, k: u64) -> [Xy; 2] {
    let face = face_vertices(f);
    let mut ends = face.iter().copied().filter(|&x| x != v).map(|x| {
        let (e, idx) = cx.arc_endpoint(tet, v, x, k);
        let s = pts.at(tri, tet, e, idx);
        let (lo, hi) = (corner_xy(face, v.min(x)), corner_xy(face, v.max(x)));
        let one_minus = Q::one() - &s;
        [&lo[0] * &one_minus + &hi[0] * &s, &lo[1] * &one_minus + &hi[1] * &s]
    });
    [ends.next().unwrap(), ends.next().unwrap()]
}

fn cross2(a: &Xy, b: &Xy) -> Q {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn sub(a: &Xy, b: &Xy) -> Xy {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

/// Parameter along `p` of its crossing with `r`, if the open chords cross.
fn crossing(p: &[Xy; 2], r: &[Xy; 2]) -> Result<Option<Q>> {
    let (d1, d2) = (sub(&p[1], &p[0]), sub(&r[1], &r[0]));
    let den = cross2(&d1, &d2);
    if den.is_zero() {
        return Ok(None);
    }
    let w = sub(&r[0], &p[0]);
    let t = cross2(&w, &d2) / &den;
    let u = cross2(&w, &d1) / &den;
    let inside = |x: &Q| x.is_positive() && *x < Q::one();
    if (t.is_zero() || t.is_one()) || (u.is_zero() || u.is_one()) {
        return Err(Error::Realization("normal arcs meet at an endpoint".into()));
    }
    Ok((inside(&t) && inside(&u)).then_some(t))
}

/// Faces met by the boundary of a quadrilateral, in cyclic order.
fn quad_face_cycle(q: usize) -> [usize; 4] {
    let (a, b) = (0, q + 1);
    let mut rest = (1..4).filter(|&v| v != b);
    let (c, d) = (rest.next().unwrap(), rest.next().unwrap());
    // Arcs run between consecutive points on edges ac, ad, bd, bc.
    [b, c, a, d]
}

/// Pairs four crossings, given by the faces they lie on, so that the pairs
/// are consecutive along both disk boundaries.
fn pair_four(kind_a: usize, kind_b: usize, faces: [usize; 4]) -> Option<[[usize; 2]; 2]> {
    if kind_a < 4 || kind_b < 4 {
        return None;
    }
    let (ca, cb) = (quad_face_cycle(kind_a - 4), quad_face_cycle(kind_b - 4));
    let adjacent = |cyc: [usize; 4], x: usize, y: usize| {
        let i = cyc.iter().position(|&f| f == x).unwrap();
        let j = cyc.iter().position(|&f| f == y).unwrap();
        (i + 1) % 4 == j || (j + 1) % 4 == i
    };
    let mut found = None;
    for partner in 1..4 {
        let rest: Vec<usize> = (1..4).filter(|&k| k != partner).collect();
        let pairs = [[0, partner], [rest[0], rest[1]]];
        let ok = pairs.iter().all(|&[x, y]| {
            adjacent(ca, faces[x], faces[y]) && adjacent(cb, faces[x], faces[y])
        });
        if ok {
            if found.is_some() {
                return None;
            }
            found = Some(pairs);
        }
    }
    found
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CrossingKey {
    tet: usize,
    face: usize,
    a: (usize, u64),
    b: (usize, u64),
}

/// Places both surfaces and traces their intersection arcs and loops.
///
/// Placements are tried in a fixed order; the first one without loops is
/// returned, else the first consistent one.
pub fn realize_intersection(
    tri: &Triangulation,
    layout: &Layout,
    a: &SpanningSurfaceRecord,
    b: &SpanningSurfaceRecord,
) -> Result<RealizedPair> {
    layout.check_len(&a.coords)?;
    layout.check_len(&b.coords)?;
    let flat = FlatBoundary::new(tri)?;
    let cx = [NormalComplex::new(layout, &a.coords), NormalComplex::new(layout, &b.coords)];
    let expected = intersection_number(a, b) as usize;
    let mut fallback = None;
    let mut last_err = None;
    for (attempt, (phase, nudge)) in attempts().enumerate() {
        let Some(pts) = place(tri, &flat, [&cx[0], &cx[1]], phase, nudge)? else {
            continue;
        };
        match trace(tri, &cx, &pts, attempt) {
            Ok(r) => {
                if r.boundary_points != expected {
                    return Err(Error::Realization(format!(
                        "{} boundary intersection points, expected {expected}",
                        r.boundary_points
                    )));
                }
                if r.loops.is_empty() {
                    return Ok(r);
                }
                log::debug!("placement {attempt}: {} loops of intersection", r.loops.len());
                fallback.get_or_insert(r);
            }
            Err(Error::Realization(msg)) => {
                log::debug!("placement {attempt} rejected: {msg}");
                last_err = Some(Error::Realization(msg));
            }
            Err(e) => return Err(e),
        }
    }
    fallback.ok_or_else(|| last_err.unwrap_or_else(|| Error::Realization("no generic placement found".into())))
}

fn trace(tri: &Triangulation, cx: &[NormalComplex; 2], pts: &[EdgePoints; 2], attempt: usize) -> Result<RealizedPair> {
    let mut ids: HashMap<CrossingKey, usize> = HashMap::new();
    let mut keys: Vec<CrossingKey> = Vec::new();
    let mut along: Vec<Q> = Vec::new();
    // Crossings grouped by the pair of disks they belong to, per tetrahedron.
    let mut groups: BTreeMap<(usize, Disk, Disk), Vec<(usize, usize)>> = BTreeMap::new();

    for tet in 0..tri.size() {
        for f in 0..4 {
            let corners = face_vertices(f);
            let arcs = |s: usize| {
                let mut v = Vec::new();
                for &c in &corners {
                    for k in 0..cx[s].arcs_at(tet, f, c) {
                        v.push(((c, k), chord(tri, &cx[s], &pts[s], tet, f, c, k)));
                    }
                }
                v
            };
            let (arcs_a, arcs_b) = (arcs(0), arcs(1));
            for (ra, ca) in &arcs_a {
                for (rb, cb) in &arcs_b {
                    let Some(t) = crossing(ca, cb)? else { continue };
                    let key = CrossingKey { tet, face: f, a: *ra, b: *rb };
                    let id = keys.len();
                    ids.insert(key, id);
                    keys.push(key);
                    along.push(t);
                    let da = cx[0].arc_owner(tet, f, ra.0, ra.1);
                    let db = cx[1].arc_owner(tet, f, rb.0, rb.1);
                    groups.entry((tet, da, db)).or_default().push((f, id));
                }
            }
        }
    }

    let mut dsu = ParityDsu::new(keys.len());
    for key in &keys {
        let Some(g) = tri.gluing(key.tet, key.face) else { continue };
        let p = g.perm;
        let partner = CrossingKey {
            tet: g.tet,
            face: p.apply(key.face),
            a: (p.apply(key.a.0), key.a.1),
            b: (p.apply(key.b.0), key.b.1),
        };
        let other = *ids
            .get(&partner)
            .ok_or_else(|| Error::Realization("crossing has no partner across a face gluing".into()))?;
        dsu.union(ids[key], other, false);
    }
    let mut root = |id: usize| dsu.find(id).0;

    let mut segments: Vec<Segment> = Vec::new();
    let mut ends: Vec<[usize; 2]> = Vec::new();
    for (&(tet, da, db), members) in &groups {
        let seg = |pair: [usize; 2]| (Segment { tet, disk_a: da, disk_b: db }, pair);
        let found: Vec<(Segment, [usize; 2])> = match members.len() {
            2 => vec![seg([members[0].1, members[1].1])],
            4 => {
                let faces = [members[0].0, members[1].0, members[2].0, members[3].0];
                let pairs = pair_four(da.kind, db.kind, faces)
                    .ok_or_else(|| Error::Realization("ambiguous pairing of four crossings".into()))?;
                pairs.iter().map(|&[x, y]| seg([members[x].1, members[y].1])).collect()
            }
            n => {
                return Err(Error::Realization(format!(
                    "two normal disks in tetrahedron {tet} cross {n} times"
                )))
            }
        };
        for (s, [x, y]) in found {
            segments.push(s);
            ends.push([root(x), root(y)]);
        }
    }

    // Adjacency of crossing classes through segments.
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &[x, y]) in ends.iter().enumerate() {
        adj.entry(x).or_default().push(k);
        adj.entry(y).or_default().push(k);
    }
    let boundary_ids: Vec<usize> = (0..keys.len())
        .filter(|&id| tri.gluing(keys[id].tet, keys[id].face).is_none())
        .collect();
    for (&node, segs) in &adj {
        let on_boundary = tri.gluing(keys[node].tet, keys[node].face).is_none();
        if segs.len() != if on_boundary { 1 } else { 2 } {
            return Err(Error::Realization(format!(
                "intersection point meets {} segments",
                segs.len()
            )));
        }
    }
    if boundary_ids.iter().any(|id| !adj.contains_key(id)) {
        return Err(Error::Realization("boundary crossing without a segment".into()));
    }

    let labels = boundary_order(tri, cx, &keys, &along, &boundary_ids)?;
    let label_of: HashMap<usize, usize> = labels.iter().enumerate().map(|(k, &id)| (id, k + 1)).collect();

    let mut used = vec![false; segments.len()];
    let walk = |start: usize, used: &mut Vec<bool>| -> (usize, Vec<Segment>) {
        let mut chain = Vec::new();
        let mut node = start;
        while let Some(&s) = adj[&node].iter().find(|&&s| !used[s]) {
            used[s] = true;
            chain.push(segments[s]);
            node = if ends[s][0] == node { ends[s][1] } else { ends[s][0] };
        }
        (node, chain)
    };
    let mut arcs = Vec::new();
    for &b in &labels {
        if adj[&b].iter().all(|&s| used[s]) {
            continue;
        }
        let (end, chain) = walk(b, &mut used);
        let labels = [label_of[&b], *label_of.get(&end).ok_or_else(|| {
            Error::Realization("intersection arc ends in the interior".into())
        })?];
        arcs.push(IntersectionArc { labels, segments: chain });
    }
    let mut loops = Vec::new();
    let nodes: Vec<usize> = adj.keys().copied().collect();
    for node in nodes {
        if adj[&node].iter().any(|&s| !used[s]) {
            loops.push(walk(node, &mut used).1);
        }
    }
    Ok(RealizedPair { arcs, loops, boundary_points: labels.len(), attempt })
}

/// A point of an edge class: the class and the position along it.
type ClassPoint = (usize, u64);

/// A boundary arc: tetrahedron, face, corner and index within the corner.
type ArcId = (usize, usize, usize, u64);

/// Boundary crossings in the order met along the boundary curve of the first surface.
fn boundary_order(
    tri: &Triangulation,
    cx: &[NormalComplex; 2],
    keys: &[CrossingKey],
    along: &[Q],
    boundary_ids: &[usize],
) -> Result<Vec<usize>> {
    // Boundary arcs of the first surface with their endpoints as points of edge classes.
    let mut arcs: Vec<(ArcId, [ClassPoint; 2])> = Vec::new();
    for &(tet, f) in tri.boundary_faces() {
        for v in face_vertices(f) {
            for k in 0..cx[0].arcs_at(tet, f, v) {
                let mut ends = face_vertices(f).into_iter().filter(|&x| x != v).map(|x| {
                    let (e, idx) = cx[0].arc_endpoint(tet, v, x, k);
                    let w = cx[0].edge_weight(tet, e);
                    let class = tri.edge_class(tet, e);
                    (class, if tri.edge_reversed(tet, e) { w - 1 - idx } else { idx })
                });
                arcs.push(((tet, f, v, k), [ends.next().unwrap(), ends.next().unwrap()]));
            }
        }
    }
    let mut at_point: HashMap<ClassPoint, Vec<(usize, usize)>> = HashMap::new();
    for (i, (_, ends)) in arcs.iter().enumerate() {
        for (side, p) in ends.iter().enumerate() {
            at_point.entry(*p).or_default().push((i, side));
        }
    }
    let mut on_arc: HashMap<ArcId, Vec<usize>> = HashMap::new();
    for &id in boundary_ids {
        let k = keys[id];
        on_arc.entry((k.tet, k.face, k.a.0, k.a.1)).or_default().push(id);
    }

    let mut order = Vec::new();
    let mut seen = vec![false; arcs.len()];
    let (mut cur, mut entry) = (0usize, 0usize);
    while !arcs.is_empty() && !seen[cur] {
        seen[cur] = true;
        let (key, ends) = &arcs[cur];
        let mut here = on_arc.get(key).cloned().unwrap_or_default();
        here.sort_by(|&x, &y| along[x].cmp(&along[y]));
        if entry == 1 {
            here.reverse();
        }
        order.extend(here);
        let exit = ends[1 - entry];
        let &(next, side) = at_point[&exit]
            .iter()
            .find(|&&(i, s)| (i, s) != (cur, 1 - entry))
            .ok_or_else(|| Error::Realization("boundary curve ends at a point".into()))?;
        cur = next;
        entry = side;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Realization("boundary of the first surface is not a single curve".into()));
    }
    if order.len() != boundary_ids.len() {
        return Err(Error::Realization("boundary crossings missed by the traversal".into()));
    }
    Ok(order)
}
