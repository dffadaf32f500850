//! Normal surfaces in standard coordinates: four triangle and three
//! quadrilateral counts per tetrahedron.
//!
//! Quadrilateral type `q` separates the vertex pair `{0, q+1}` from the other
//! two vertices. Every tetrahedron uses the column order
//! `T0 T1 T2 T3 Q0 Q1 Q2`, except the one containing `φ`, whose columns are
//! `T_{v1} T_{v2} T_{v3} T_f Q_{v1 f} Q_{v2 f} Q_{v3 f}` for the frame
//! corners `v1 v2 v3` of `φ = face f`. Columns `i` and `i+4` of that
//! tetrahedron are the two disk types meeting `φ` in arcs at corner `v_i`.

mod collar;
mod complex;

pub use collar::boundary_collar_torus;
pub use complex::{Disk, NormalComplex, SurfaceStats};

use crate::error::{Error, Result};
use crate::triangulation::{BoundaryTriangulation, Triangulation};
use serde::Serialize;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

/// Quadrilateral type separating `a` and `b` from the other two vertices.
pub fn quad_type(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    match (a.min(b), a.max(b)) {
        (0, m) => m - 1,
        (_, _) => {
            // The complementary pair contains 0.
            let other = (1..4).find(|&v| v != a && v != b).unwrap();
            other - 1
        }
    }
}

/// Whether vertex `v` lies on the side of quadrilateral type `q` containing vertex 0.
pub fn quad_side0(q: usize, v: usize) -> bool {
    v == 0 || v == q + 1
}

/// Column positions of every disk type.
#[derive(Clone, Debug)]
pub struct Layout {
    tri_cols: Vec<[usize; 4]>,
    quad_cols: Vec<[usize; 3]>,
    boundary: BoundaryTriangulation,
}

impl Layout {
    pub fn new(tri: &Triangulation) -> Result<Layout> {
        let boundary = BoundaryTriangulation::new(tri)?;
        let t = tri.size();
        let mut tri_cols: Vec<[usize; 4]> = (0..t).map(|i| [7 * i, 7 * i + 1, 7 * i + 2, 7 * i + 3]).collect();
        let mut quad_cols: Vec<[usize; 3]> = (0..t).map(|i| [7 * i + 4, 7 * i + 5, 7 * i + 6]).collect();
        let (pt, f) = boundary.phi();
        let base = 7 * pt;
        for (k, &v) in boundary.corners.iter().enumerate() {
            tri_cols[pt][v] = base + k;
            quad_cols[pt][quad_type(v, f)] = base + 4 + k;
        }
        tri_cols[pt][f] = base + 3;
        Ok(Layout { tri_cols, quad_cols, boundary })
    }

    pub fn tet_count(&self) -> usize {
        self.tri_cols.len()
    }

    pub fn len(&self) -> usize {
        7 * self.tet_count()
    }

    pub fn is_empty(&self) -> bool {
        self.tri_cols.is_empty()
    }

    #[inline]
    pub fn tri(&self, tet: usize, v: usize) -> usize {
        self.tri_cols[tet][v]
    }

    #[inline]
    pub fn quad(&self, tet: usize, q: usize) -> usize {
        self.quad_cols[tet][q]
    }

    pub fn boundary(&self) -> &BoundaryTriangulation {
        &self.boundary
    }

    /// Quadrilateral columns grouped by tetrahedron.
    pub fn quad_columns(&self) -> &[[usize; 3]] {
        &self.quad_cols
    }

    /// Disk counts of one tetrahedron in uniform order `T0..T3 Q0..Q2`.
    pub fn tet_counts(&self, x: &[u64], tet: usize) -> [u64; 7] {
        let mut out = [0; 7];
        for v in 0..4 {
            out[v] = x[self.tri(tet, v)];
        }
        for q in 0..3 {
            out[4 + q] = x[self.quad(tet, q)];
        }
        out
    }

    /// Rewrites `x` in uniform order for every tetrahedron.
    pub fn to_uniform(&self, x: &[u64]) -> Vec<u64> {
        (0..self.tet_count()).flat_map(|i| self.tet_counts(x, i)).collect()
    }

    /// Inverse of [`Layout::to_uniform`].
    pub fn from_uniform(&self, u: &[u64]) -> Vec<u64> {
        let mut x = vec![0; self.len()];
        for i in 0..self.tet_count() {
            for v in 0..4 {
                x[self.tri(i, v)] = u[7 * i + v];
            }
            for q in 0..3 {
                x[self.quad(i, q)] = u[7 * i + 4 + q];
            }
        }
        x
    }

    pub fn check_len(&self, x: &[u64]) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::CoordinateLength { got: x.len(), expected: self.len() });
        }
        Ok(())
    }
}

/// A vector of `7t` disk counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct NormalCoordinates(pub Vec<u64>);

impl Deref for NormalCoordinates {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for NormalCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x7t:")?;
        for v in &self.0 {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for NormalCoordinates {
    type Err = Error;
    fn from_str(s: &str) -> Result<NormalCoordinates> {
        let rest = s
            .trim()
            .strip_prefix("x7t:")
            .ok_or_else(|| Error::Parse { line: 0, msg: "coordinates must start with `x7t:`".into() })?;
        let v = rest
            .split_whitespace()
            .map(|w| w.parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse { line: 0, msg: format!("bad coordinate: {e}") })?;
        Ok(NormalCoordinates(v))
    }
}

impl NormalCoordinates {
    pub fn zero(len: usize) -> NormalCoordinates {
        NormalCoordinates(vec![0; len])
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, k: u64) -> NormalCoordinates {
        NormalCoordinates(self.0.iter().map(|v| v * k).collect())
    }
}

/// The matching equations, one row per arc type of each interior face class.
#[derive(Clone, Debug)]
pub struct MatchingSystem {
    pub rows: Vec<Vec<i64>>,
    pub cols: usize,
}

impl MatchingSystem {
    pub fn new(tri: &Triangulation, layout: &Layout) -> MatchingSystem {
        let cols = layout.len();
        let mut rows = Vec::new();
        for (i, f, g) in tri.interior_faces() {
            let (j, p) = (g.tet, g.perm);
            let pf = p.apply(f);
            for v in (0..4).filter(|&v| v != f) {
                let pv = p.apply(v);
                let mut row = vec![0i64; cols];
                row[layout.tri(i, v)] += 1;
                row[layout.quad(i, quad_type(v, f))] += 1;
                row[layout.tri(j, pv)] -= 1;
                row[layout.quad(j, quad_type(pv, pf))] -= 1;
                rows.push(row);
            }
        }
        MatchingSystem { rows, cols }
    }

    pub fn is_satisfied(&self, x: &[u64]) -> bool {
        x.len() == self.cols
            && self
                .rows
                .iter()
                .all(|r| r.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>() == 0)
    }
}

/// At most one quadrilateral type per tetrahedron.
pub fn is_admissible(layout: &Layout, x: &[u64]) -> bool {
    layout
        .quad_columns()
        .iter()
        .all(|qs| qs.iter().filter(|&&c| x[c] != 0).count() <= 1)
}

/// Whether two admissible vectors use no conflicting quadrilateral types.
pub fn compatible(layout: &Layout, x: &[u64], w: &[u64]) -> bool {
    layout.quad_columns().iter().all(|qs| {
        let a = qs.iter().position(|&c| x[c] != 0);
        let b = qs.iter().position(|&c| w[c] != 0);
        matches!((a, b), (None, _) | (_, None)) || a == b
    })
}

/// Componentwise sum of compatible surfaces.
pub fn haken_sum(layout: &Layout, x: &[u64], w: &[u64]) -> Result<NormalCoordinates> {
    layout.check_len(x)?;
    layout.check_len(w)?;
    for (tet, qs) in layout.quad_columns().iter().enumerate() {
        let a = qs.iter().position(|&c| x[c] != 0);
        let b = qs.iter().position(|&c| w[c] != 0);
        if let (Some(a), Some(b)) = (a, b) {
            if a != b {
                return Err(Error::IncompatibleQuads { tet });
            }
        }
    }
    Ok(NormalCoordinates(x.iter().zip(w).map(|(a, b)| a + b).collect()))
}

/// Arc counts `(y1, y2, y3)` of the boundary curve at the frame corners of `φ`.
pub fn boundary_coords(layout: &Layout, x: &[u64]) -> [u64; 3] {
    let (pt, f) = layout.boundary().phi();
    let corners = layout.boundary().corners;
    corners.map(|v| x[layout.tri(pt, v)] + x[layout.quad(pt, quad_type(v, f))])
}

/// Which boundary pattern a spanning surface has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// Boundary `(y, 1, 0)`.
    #[serde(rename = "ONE_ZERO")]
    OneZero,
    /// Boundary `(y, 0, 1)`.
    #[serde(rename = "ZERO_ONE")]
    ZeroOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningSurfaceRecord {
    pub coords: NormalCoordinates,
    pub euler: i64,
    pub connected: bool,
    pub family: Family,
    pub y: u64,
}

/// Recognises spanning surfaces by their boundary once the meridian is the
/// edge opposite the first frame corner.
pub fn classify_spanning(
    tri: &Triangulation,
    layout: &Layout,
    x: &NormalCoordinates,
) -> Result<Option<SpanningSurfaceRecord>> {
    if !layout.boundary().is_normalized() {
        return Err(Error::InvalidMarking(
            "spanning surfaces are recognised only once the meridian is a boundary edge".into(),
        ));
    }
    let y = boundary_coords(layout, x);
    let family = match (y[1], y[2]) {
        (1, 0) => Family::OneZero,
        (0, 1) => Family::ZeroOne,
        _ => return Ok(None),
    };
    // A curve meeting the meridian once is a single essential curve.
    debug_assert!(y.contains(&0));
    let stats = SurfaceStats::compute(tri, layout, x)?;
    Ok(Some(SpanningSurfaceRecord {
        coords: x.clone(),
        euler: stats.euler,
        connected: stats.connected,
        family,
        y: y[0],
    }))
}

/// `i(∂a, ∂b)` for two spanning boundaries on the normalised boundary torus.
pub fn intersection_number(a: &SpanningSurfaceRecord, b: &SpanningSurfaceRecord) -> u64 {
    boundary_intersection(a.family, a.y, b.family, b.y)
}

pub fn boundary_intersection(fa: Family, ya: u64, fb: Family, yb: u64) -> u64 {
    if fa == fb {
        ya.abs_diff(yb)
    } else {
        ya + yb + 1
    }
}

/// Euler characteristic of the surface carried by `x`.
pub fn euler_characteristic(tri: &Triangulation, layout: &Layout, x: &[u64]) -> Result<i64> {
    Ok(SurfaceStats::compute(tri, layout, x)?.euler)
}

pub fn is_connected(tri: &Triangulation, layout: &Layout, x: &[u64]) -> Result<bool> {
    Ok(SurfaceStats::compute(tri, layout, x)?.connected)
}
