//! Planar diagrams given by PD codes, their checkerboard surfaces, and
//! alternation.
//!
//! A crossing `X(a,b,c,d)` lists its four strand labels counterclockwise,
//! starting from the incoming under-strand, so `a → c` passes under and
//! `b, d` pass over.

use crate::dtcode::DtCode;
use crate::error::{Error, Result};
use crate::triangulation::ParityDsu;
use serde::Serialize;
use std::collections::HashMap;

/// A position around a crossing: `(crossing, slot)` with slots `0..4` counterclockwise.
type Slot = (usize, usize);

#[derive(Clone, Debug)]
pub struct PlanarDiagram {
    crossings: Vec<[u64; 4]>,
    /// The other end of the strand leaving each slot.
    across: Vec<[Slot; 4]>,
    /// Face containing the corner between slots `k` and `k+1` of each crossing.
    corner_face: Vec<[usize; 4]>,
    faces: usize,
}

impl PlanarDiagram {
    pub fn crossings(&self) -> &[[u64; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces
    }

    /// Face on the side of the strand leaving `s` that the tracing keeps on its left.
    fn face_of_slot(&self, (c, p): Slot) -> usize {
        self.corner_face[c][(p + 3) % 4]
    }
}

/// A corpus entry: the diagram with its metadata lines.
#[derive(Clone, Debug)]
pub struct PdEntry {
    pub name: Option<String>,
    pub crossing_number: Option<usize>,
    pub alternating: Option<bool>,
    pub diagram: PlanarDiagram,
}

/// Parses `X(a,b,c,d)` tuples; metadata lines and a leading `PD:` are ignored.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram> {
    let mut crossings = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find("X(").or_else(|| rest.find("X[")) {
        let body = &rest[start + 2..];
        let end = body
            .find([')', ']'])
            .ok_or_else(|| Error::Diagram("unterminated crossing".into()))?;
        let labels = body[..end]
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Diagram(format!("bad strand label {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        let labels: [u64; 4] = labels
            .try_into()
            .map_err(|v: Vec<u64>| Error::Diagram(format!("crossing with {} labels", v.len())))?;
        crossings.push(labels);
        rest = &body[end + 1..];
    }
    PlanarDiagram::new(crossings)
}

pub fn parse_pd_entry(text: &str) -> Result<PdEntry> {
    let mut name = None;
    let mut crossing_number = None;
    let mut alternating = None;
    for line in text.lines() {
        let Some((key, value)) = line.split_once(':') else { continue };
        let value = value.trim();
        match key.trim() {
            "name" => name = Some(value.to_string()),
            "crossings" => {
                crossing_number = Some(value.parse().map_err(|_| Error::Diagram(format!("bad crossing count {value:?}")))?)
            }
            "alternating" => {
                alternating = Some(match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(Error::Diagram(format!("bad alternating flag {value:?}"))),
                })
            }
            _ => {}
        }
    }
    let diagram = parse_pd(text)?;
    if let Some(n) = crossing_number {
        if n != diagram.crossing_count() {
            return Err(Error::Diagram(format!(
                "metadata says {n} crossings, code has {}",
                diagram.crossing_count()
            )));
        }
    }
    Ok(PdEntry { name, crossing_number, alternating, diagram })
}

impl PlanarDiagram {
    pub fn new(crossings: Vec<[u64; 4]>) -> Result<PlanarDiagram> {
        let n = crossings.len();
        let mut ends: HashMap<u64, Vec<Slot>> = HashMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (p, &l) in x.iter().enumerate() {
                ends.entry(l).or_default().push((c, p));
            }
        }
        let mut across = vec![[(0, 0); 4]; n];
        let mut labels: Vec<_> = ends.into_iter().collect();
        labels.sort();
        for (l, slots) in &labels {
            let [s, t] = slots[..] else {
                return Err(Error::Diagram(format!("strand {l} appears {} times", slots.len())));
            };
            across[s.0][s.1] = t;
            across[t.0][t.1] = s;
        }
        let mut dsu = ParityDsu::new(n);
        for (c, row) in across.iter().enumerate() {
            for &(d, _) in row {
                dsu.union(c, d, false);
            }
        }
        if (0..n).any(|c| dsu.find(c).0 != dsu.find(0).0) {
            return Err(Error::Diagram("diagram is not connected".into()));
        }

        // Follow a strand to the next crossing and turn to the next slot
        // counterclockwise; the orbits are the faces.
        let mut corner_face = vec![[usize::MAX; 4]; n];
        let mut faces = 0;
        for c in 0..n {
            for k in 0..4 {
                if corner_face[c][k] != usize::MAX {
                    continue;
                }
                let (mut d, mut q) = (c, (k + 1) % 4);
                loop {
                    let corner = (q + 3) % 4;
                    if corner_face[d][corner] != usize::MAX {
                        if corner_face[d][corner] != faces || (d, corner) != (c, k) {
                            return Err(Error::Diagram("face trace is inconsistent".into()));
                        }
                        break;
                    }
                    corner_face[d][corner] = faces;
                    let (e, r) = across[d][q];
                    (d, q) = (e, (r + 1) % 4);
                }
                faces += 1;
            }
        }
        if n > 0 && faces != n + 2 {
            return Err(Error::Diagram(format!(
                "{faces} faces for {n} crossings; the code is not planar"
            )));
        }
        Ok(PlanarDiagram { crossings, across, corner_face, faces: if n == 0 { 2 } else { faces } })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckerboardStats {
    pub chi_black: i64,
    pub chi_white: i64,
    pub n: usize,
    /// Boundary intersection of the two checkerboard surfaces, `2n`.
    pub i_diagrammatic: u64,
}

/// Euler characteristics of the two checkerboard surfaces: each is a disk
/// per region of its color joined by one half-twisted band per crossing.
pub fn checkerboard_stats(d: &PlanarDiagram) -> Result<CheckerboardStats> {
    let n = d.crossing_count();
    if n == 0 {
        return Ok(CheckerboardStats { chi_black: 1, chi_white: 1, n: 0, i_diagrammatic: 0 });
    }
    let mut color = ParityDsu::new(d.faces);
    for c in 0..n {
        for p in 0..4 {
            // The two sides of a strand get different colors.
            let (s, t) = ((c, p), d.across[c][p]);
            if !color.union(d.face_of_slot(s), d.face_of_slot(t), true) {
                return Err(Error::Diagram("regions admit no checkerboard coloring".into()));
            }
        }
    }
    // Black is the color of face 0.
    let p0 = color.find(0).1;
    let black = (0..d.faces).filter(|&f| color.find(f).1 == p0).count() as i64;
    let white = d.faces as i64 - black;
    let stats = CheckerboardStats {
        chi_black: black - n as i64,
        chi_white: white - n as i64,
        n,
        i_diagrammatic: 2 * n as u64,
    };
    assert_eq!(stats.chi_black + stats.chi_white + n as i64, 2);
    Ok(stats)
}

/// Passages through crossings in traversal order, as `(crossing, entry slot)`,
/// one list per component.
fn components(d: &PlanarDiagram) -> Vec<Vec<Slot>> {
    let n = d.crossing_count();
    let mut seen = vec![[false; 4]; n];
    let mut out = Vec::new();
    for c in 0..n {
        for p in [0, 1] {
            if seen[c][p] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut e, mut q) = (c, p);
            while !seen[e][q] {
                seen[e][q] = true;
                seen[e][(q + 2) % 4] = true;
                walk.push((e, q));
                (e, q) = d.across[e][(q + 2) % 4];
            }
            out.push(walk);
        }
    }
    out
}

/// Whether every component passes over and under in turn. A diagram without
/// crossings does not count as alternating.
pub fn verify_alternating_diagram(d: &PlanarDiagram) -> bool {
    if d.crossing_count() == 0 {
        return false;
    }
    components(d).iter().all(|walk| {
        (0..walk.len()).all(|k| {
            let over = |s: Slot| s.1 % 2 == 1;
            over(walk[k]) != over(walk[(k + 1) % walk.len()])
        })
    })
}

/// Crossings whose opposite corners lie in the same region.
pub fn nugatory_crossings(d: &PlanarDiagram) -> Vec<usize> {
    (0..d.crossing_count())
        .filter(|&c| {
            let f = d.corner_face[c];
            f[0] == f[2] || f[1] == f[3]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCheck {
    pub holds: bool,
    pub nugatory: Vec<usize>,
}

/// The criterion for the two checkerboard surfaces, with `i = 2n`. Nugatory
/// crossings are reported alongside.
pub fn verify_star_diagrammatic(d: &PlanarDiagram) -> Result<StarCheck> {
    let s = checkerboard_stats(d)?;
    let nugatory = nugatory_crossings(d);
    if !nugatory.is_empty() {
        log::warn!("diagram is not reduced: nugatory crossings {nugatory:?}");
    }
    Ok(StarCheck {
        holds: crate::decider::check_star(s.chi_black, s.chi_white, s.i_diagrammatic),
        nugatory,
    })
}

/// Unsigned DT code of a knot diagram, read along the traversal starting at
/// the first crossing's incoming under-strand.
pub fn dt_code(d: &PlanarDiagram) -> Result<DtCode> {
    let comps = components(d);
    if comps.len() != 1 {
        return Err(Error::Diagram(format!("{} components; DT codes need a knot", comps.len())));
    }
    let walk = &comps[0];
    let mut first_visit: HashMap<usize, usize> = HashMap::new();
    let mut partner = vec![0usize; walk.len() + 1];
    for (k, &(c, _)) in walk.iter().enumerate() {
        let label = k + 1;
        if let Some(&other) = first_visit.get(&c) {
            partner[label] = other;
            partner[other] = label;
        } else {
            first_visit.insert(c, label);
        }
    }
    DtCode::from_pairing(&partner)
}
