//! Vertex and fundamental normal surfaces.

mod cache;
mod dd;
mod hilbert;
mod oracle;

pub use cache::{load_cached, store_cached, CacheKey};
pub use oracle::brute_force_fundamental_oracle;

use crate::error::{Error, Result};
use crate::normal::{boundary_coords, compatible, Layout, MatchingSystem, NormalCoordinates, SurfaceStats};
use crate::triangulation::Triangulation;
use dd::{Bits, QuadMasks};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceKind {
    #[serde(rename = "VERTEX")]
    Vertex,
    #[serde(rename = "FUNDAMENTAL")]
    Fundamental,
}

impl SurfaceKind {
    pub fn tag(self) -> &'static str {
        match self {
            SurfaceKind::Vertex => "vertex",
            SurfaceKind::Fundamental => "fundamental",
        }
    }
}

/// Resource caps for enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    /// Intermediate rays allowed during double description.
    pub max_rays: usize,
    /// Lattice points examined per admissible cone during Hilbert basis search.
    pub max_candidates: usize,
}

impl Default for EnumOptions {
    fn default() -> EnumOptions {
        EnumOptions { max_rays: 1_000_000, max_candidates: 5_000_000 }
    }
}

/// A surface together with the statistics the decider needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceEntry {
    pub coords: NormalCoordinates,
    pub euler: i64,
    pub connected: bool,
    pub two_sided: bool,
    pub boundary: [u64; 3],
}

impl SurfaceEntry {
    pub fn new(tri: &Triangulation, layout: &Layout, coords: NormalCoordinates) -> Result<SurfaceEntry> {
        let stats = SurfaceStats::compute(tri, layout, &coords)?;
        Ok(SurfaceEntry {
            boundary: boundary_coords(layout, &coords),
            euler: stats.euler,
            connected: stats.connected,
            two_sided: stats.two_sided,
            coords,
        })
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == [0, 0, 0]
    }
}

/// Surfaces in lexicographic order of their coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct SurfaceSet {
    pub kind: SurfaceKind,
    pub surfaces: Vec<SurfaceEntry>,
}

impl SurfaceSet {
    pub fn from_coords(
        tri: &Triangulation,
        layout: &Layout,
        kind: SurfaceKind,
        mut coords: Vec<NormalCoordinates>,
    ) -> Result<SurfaceSet> {
        coords.sort();
        coords.dedup();
        let surfaces = coords
            .into_par_iter()
            .map(|c| SurfaceEntry::new(tri, layout, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(SurfaceSet { kind, surfaces })
    }

    pub fn len(&self) -> usize {
        self.surfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surfaces.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = &NormalCoordinates> {
        self.surfaces.iter().map(|s| &s.coords)
    }
}

fn quad_masks(layout: &Layout) -> QuadMasks {
    QuadMasks(
        layout
            .quad_columns()
            .iter()
            .map(|qs| {
                let mut b = Bits::default();
                for &c in qs {
                    b.insert(c);
                }
                b
            })
            .collect(),
    )
}

fn to_coords(v: &[i128]) -> Result<NormalCoordinates> {
    v.iter()
        .map(|&x| {
            if (0..i64::MAX as i128).contains(&x) {
                Ok(x as u64)
            } else {
                Err(Error::ResourceExhausted("coordinate exceeds 2^63".into()))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(NormalCoordinates)
}

fn vertex_rays(tri: &Triangulation, layout: &Layout, opts: &EnumOptions) -> Result<Vec<Vec<i128>>> {
    let ms = MatchingSystem::new(tri, layout);
    dd::admissible_extreme_rays(&ms.rows, layout.len(), &quad_masks(layout), opts.max_rays)
}

/// Vertex surfaces: primitive integer points on the admissible extreme rays.
pub fn enumerate_vertex_surfaces(tri: &Triangulation, layout: &Layout, opts: &EnumOptions) -> Result<SurfaceSet> {
    let rays = vertex_rays(tri, layout, opts)?;
    let coords = rays.iter().map(|r| to_coords(r)).collect::<Result<Vec<_>>>()?;
    let set = SurfaceSet::from_coords(tri, layout, SurfaceKind::Vertex, coords)?;
    assert!(!set.is_empty(), "the vertex link is always a vertex surface");
    Ok(set)
}

/// Fundamental surfaces: the union of the Hilbert bases of the admissible cones.
pub fn enumerate_fundamental_surfaces(
    tri: &Triangulation,
    layout: &Layout,
    opts: &EnumOptions,
) -> Result<SurfaceSet> {
    let rays = vertex_rays(tri, layout, opts)?;
    let coords = rays.iter().map(|r| to_coords(r)).collect::<Result<Vec<_>>>()?;
    fundamental_from_rays(tri, layout, &coords, opts)
}

/// Fundamental surfaces from an already enumerated vertex set.
pub fn fundamental_from_vertices(
    tri: &Triangulation,
    layout: &Layout,
    vertices: &SurfaceSet,
    opts: &EnumOptions,
) -> Result<SurfaceSet> {
    let coords: Vec<NormalCoordinates> = vertices.coords().cloned().collect();
    fundamental_from_rays(tri, layout, &coords, opts)
}

fn fundamental_from_rays(
    tri: &Triangulation,
    layout: &Layout,
    ray_coords: &[NormalCoordinates],
    opts: &EnumOptions,
) -> Result<SurfaceSet> {
    let rays: Vec<Vec<i128>> = ray_coords.iter().map(|c| c.iter().map(|&x| x as i128).collect()).collect();
    let adj: Vec<Vec<bool>> = ray_coords
        .iter()
        .map(|a| ray_coords.iter().map(|b| compatible(layout, a, b)).collect())
        .collect();
    let cliques = hilbert::maximal_cliques(&adj);
    log::debug!("{} vertex rays, {} admissible cones", rays.len(), cliques.len());
    let bases: Vec<Vec<Vec<i128>>> = cliques
        .par_iter()
        .map(|clique| {
            let cone: Vec<Vec<i128>> = clique.iter().map(|&i| rays[i].clone()).collect();
            hilbert::cone_hilbert_basis(&cone, opts.max_candidates)
        })
        .collect::<Result<_>>()?;
    let coords = bases
        .iter()
        .flatten()
        .map(|v| to_coords(v))
        .collect::<Result<Vec<_>>>()?;
    SurfaceSet::from_coords(tri, layout, SurfaceKind::Fundamental, coords)
}
