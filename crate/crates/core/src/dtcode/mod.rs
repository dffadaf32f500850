//! Dowker–Thistlethwaite codes from the intersection of two spanning surfaces.

mod realize;

pub use realize::realize_intersection;

use crate::error::{Error, Result};
use crate::normal::Disk;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Piece of an intersection curve inside one tetrahedron, where a disk of the
/// first surface meets a disk of the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub tet: usize,
    pub disk_a: Disk,
    pub disk_b: Disk,
}

/// An arc of intersection; `labels` are the positions of its two endpoints
/// along the boundary curve of the first surface, counted from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionArc {
    pub labels: [usize; 2],
    pub segments: Vec<Segment>,
}

#[derive(Clone, Debug)]
pub struct RealizedPair {
    pub arcs: Vec<IntersectionArc>,
    pub loops: Vec<Vec<Segment>>,
    /// Points where the two boundary curves cross.
    pub boundary_points: usize,
    /// Index of the placement variant that produced this realization.
    pub attempt: usize,
}

/// Unsigned DT code: entry `j` is the even label paired with odd label `2j+1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DtCode(pub Vec<u64>);

impl DtCode {
    /// Code of a perfect matching of `1..=2n` given as `partner[label]`
    /// (index 0 unused). Fails when some label is paired with one of equal parity.
    pub fn from_pairing(partner: &[usize]) -> Result<DtCode> {
        let m = partner.len().saturating_sub(1);
        let mut code = Vec::with_capacity(m / 2);
        for odd in (1..=m).step_by(2) {
            let p = partner[odd];
            if p % 2 == 1 {
                return Err(Error::ParallelArc(odd, p));
            }
            code.push(p as u64);
        }
        Ok(DtCode(code))
    }

    pub fn crossings(&self) -> usize {
        self.0.len()
    }

    fn pairing(&self) -> Vec<usize> {
        let m = 2 * self.0.len();
        let mut partner = vec![0usize; m + 1];
        for (j, &e) in self.0.iter().enumerate() {
            partner[2 * j + 1] = e as usize;
            partner[e as usize] = 2 * j + 1;
        }
        partner
    }

    /// Lexicographically least code over every starting point and both
    /// traversal directions. Unsigned codes of mirror images coincide, so this
    /// also identifies a diagram with its mirror.
    pub fn canonical(&self) -> DtCode {
        let m = 2 * self.0.len();
        if m == 0 {
            return self.clone();
        }
        let partner = self.pairing();
        let mut best: Option<DtCode> = None;
        for shift in 0..m {
            for reflect in [false, true] {
                let relabel = |l: usize| {
                    let base = if reflect { m - l } else { l - 1 };
                    (base + shift) % m + 1
                };
                let mut p = vec![0usize; m + 1];
                for l in 1..=m {
                    p[relabel(l)] = relabel(partner[l]);
                }
                let code = DtCode::from_pairing(&p).expect("relabeling preserves parity pairing");
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap()
    }

    /// Whether the code is a perfect matching of odd with even labels.
    pub fn is_valid(&self) -> bool {
        let m = 2 * self.0.len() as u64;
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&e| {
            let ok = e % 2 == 0 && e >= 2 && e <= m && !seen[(e / 2 - 1) as usize];
            if ok {
                seen[(e / 2 - 1) as usize] = true;
            }
            ok
        })
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for DtCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<DtCode> {
        let code = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim_start_matches('-')
                    .parse::<u64>()
                    .map_err(|_| Error::Diagram(format!("bad DT entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DtCode)?;
        if !code.is_valid() {
            return Err(Error::Diagram(format!("{s:?} is not a DT code")));
        }
        Ok(code)
    }
}

/// What the intersection of a witness pair yields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DtOutcome {
    Code(DtCode),
    /// Closed curves of intersection survived placement; no code is read off.
    LoopsPresent,
}

impl fmt::Display for DtOutcome {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            DtOutcome::Code(c) => c.fmt(f),
            DtOutcome::LoopsPresent => f.write_str("LOOPS_PRESENT"),
        }
    }
}

impl Serialize for DtOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reads the DT code off the arcs: label the boundary crossings along the
/// first surface's boundary, pair the two ends of each arc, and list the even
/// partner of every odd label. The result is not canonicalized.
pub fn extract_dt_code(r: &RealizedPair) -> Result<DtOutcome> {
    if !r.loops.is_empty() {
        return Ok(DtOutcome::LoopsPresent);
    }
    let m = r.boundary_points;
    if r.arcs.len() * 2 != m {
        return Err(Error::Realization(format!("{} arcs for {m} boundary points", r.arcs.len())));
    }
    let mut partner = vec![0usize; m + 1];
    for arc in &r.arcs {
        let [x, y] = arc.labels;
        if partner[x] != 0 || partner[y] != 0 || x == y {
            return Err(Error::Realization(format!("label {x} or {y} ends two arcs")));
        }
        partner[x] = y;
        partner[y] = x;
    }
    DtCode::from_pairing(&partner).map(DtOutcome::Code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_of_small_knots() {
        assert_eq!(DtCode(vec![4, 6, 2]).canonical(), DtCode(vec![4, 6, 2]));
        // The figure-8 code read from the second crossing.
        assert_eq!(DtCode(vec![6, 8, 2, 4]).canonical(), DtCode(vec![4, 6, 8, 2]));
    }

    #[test]
    fn equal_parity_pair_is_rejected() {
        let partner = vec![0, 3, 4, 1, 2];
        assert!(matches!(DtCode::from_pairing(&partner), Err(Error::ParallelArc(1, 3))));
    }

    #[test]
    fn parse_accepts_signed_entries() {
        let c: DtCode = "4 -6 2".parse().unwrap();
        assert_eq!(c, DtCode(vec![4, 6, 2]));
        assert!("4 4 2".parse::<DtCode>().is_err());
    }
}
