//! Text format.
//!
//! ```text
//! # comment
//! tets 1
//! meridian 0 1 0
//! tet 0: 0:1230 0:3012 b b
//! ```
//!
//! Each face record is `b` for a boundary face or `j:pqrs` for a gluing to
//! tetrahedron `j` with vertex images `p q r s`. The meridian line is either
//! three arc counts at `φ` or `meridian slope a/b basis t:uv t:uv`.

use super::boundary::{DirectedEdge, MeridianMarking};
use super::{Gluing, Triangulation};
use crate::error::{Error, Result};
use crate::perm::Perm4;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub(super) fn parse(text: &str) -> Result<Triangulation> {
    let mut count: Option<usize> = None;
    let mut meridian = None;
    let mut tets: Vec<(usize, usize, [Option<Gluing>; 4])> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("tets") => {
                if count.is_some() {
                    return Err(err(line_no, "repeated `tets` header"));
                }
                let c = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|&c| c > 0)
                    .ok_or_else(|| err(line_no, "expected a positive tetrahedron count"))?;
                if words.next().is_some() {
                    return Err(err(line_no, "trailing text after tetrahedron count"));
                }
                count = Some(c);
            }
            Some("meridian") => {
                if meridian.is_some() {
                    return Err(err(line_no, "repeated `meridian` line"));
                }
                let rest: Vec<&str> = words.collect();
                meridian = Some(parse_meridian(&rest, line_no)?);
            }
            Some("tet") => {
                let rest = line["tet".len()..].trim();
                let (idx, faces) = rest
                    .split_once(':')
                    .ok_or_else(|| err(line_no, "expected `tet <i>: <f0> <f1> <f2> <f3>`"))?;
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| err(line_no, "bad tetrahedron index"))?;
                let fields: Vec<&str> = faces.split_whitespace().collect();
                if fields.len() != 4 {
                    return Err(err(line_no, format!("expected 4 face records, found {}", fields.len())));
                }
                let mut rec = [None; 4];
                for (f, field) in fields.iter().enumerate() {
                    rec[f] = parse_face(field, line_no)?;
                }
                tets.push((line_no, idx, rec));
            }
            Some(other) => return Err(err(line_no, format!("unknown record `{other}`"))),
            None => {}
        }
    }
    let t = count.ok_or_else(|| err(0, "missing `tets` header"))?;
    let mut gluings: Vec<Option<[Option<Gluing>; 4]>> = vec![None; t];
    for (line_no, idx, rec) in tets {
        if idx >= t {
            return Err(err(line_no, format!("tetrahedron {idx} out of range")));
        }
        if gluings[idx].is_some() {
            return Err(err(line_no, format!("tetrahedron {idx} listed twice")));
        }
        gluings[idx] = Some(rec);
    }
    let gluings = gluings
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.ok_or_else(|| err(0, format!("tetrahedron {i} is missing"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Triangulation::new(gluings)?.with_meridian(meridian))
}

fn parse_face(field: &str, line_no: usize) -> Result<Option<Gluing>> {
    if field == "b" {
        return Ok(None);
    }
    let (tet, perm) = field
        .split_once(':')
        .ok_or_else(|| err(line_no, format!("bad face record `{field}`")))?;
    let tet: usize = tet
        .parse()
        .map_err(|_| err(line_no, format!("bad target tetrahedron in `{field}`")))?;
    let digits: Vec<u8> = perm
        .bytes()
        .map(|b| b.wrapping_sub(b'0'))
        .collect();
    if digits.len() != 4 {
        return Err(err(line_no, format!("permutation `{perm}` must have 4 digits")));
    }
    let perm = Perm4::new([digits[0], digits[1], digits[2], digits[3]])
        .ok_or_else(|| err(line_no, format!("`{perm}` is not a permutation of 0123")))?;
    Ok(Some(Gluing { tet, perm }))
}

fn parse_meridian(words: &[&str], line_no: usize) -> Result<MeridianMarking> {
    if words.first() == Some(&"slope") {
        if words.len() != 5 || words[2] != "basis" {
            return Err(err(line_no, "expected `meridian slope <a>/<b> basis <e1> <e2>`"));
        }
        let (a, b) = words[1]
            .split_once('/')
            .ok_or_else(|| err(line_no, "slope must be written `a/b`"))?;
        let a: i64 = a.parse().map_err(|_| err(line_no, "bad slope numerator"))?;
        let b: i64 = b.parse().map_err(|_| err(line_no, "bad slope denominator"))?;
        let e1 = parse_directed_edge(words[3], line_no)?;
        let e2 = parse_directed_edge(words[4], line_no)?;
        return Ok(MeridianMarking::Slope { a, b, basis: [e1, e2] });
    }
    if words.len() != 3 {
        return Err(err(line_no, "expected `meridian <y1> <y2> <y3>`"));
    }
    let mut y = [0u64; 3];
    for (k, w) in words.iter().enumerate() {
        y[k] = w.parse().map_err(|_| err(line_no, format!("bad arc count `{w}`")))?;
    }
    Ok(MeridianMarking::Curve(y))
}

fn parse_directed_edge(word: &str, line_no: usize) -> Result<DirectedEdge> {
    let bad = || err(line_no, format!("bad edge `{word}`, expected `tet:uv`"));
    let (tet, uv) = word.split_once(':').ok_or_else(bad)?;
    let tet: usize = tet.parse().map_err(|_| bad())?;
    let uv: Vec<usize> = uv.bytes().map(|b| b.wrapping_sub(b'0') as usize).collect();
    if uv.len() != 2 || uv[0] > 3 || uv[1] > 3 || uv[0] == uv[1] {
        return Err(bad());
    }
    Ok(DirectedEdge { tet, from: uv[0], to: uv[1] })
}

pub(super) fn serialize(tri: &Triangulation) -> String {
    let mut out = format!("tets {}\n", tri.size());
    if let Some(m) = tri.meridian() {
        out.push_str(&format!("{m}\n"));
    }
    for (i, faces) in tri.gluings().iter().enumerate() {
        out.push_str(&format!("tet {i}:"));
        for g in faces {
            match g {
                None => out.push_str(" b"),
                Some(g) => out.push_str(&format!(" {}:{}", g.tet, g.perm)),
            }
        }
        out.push('\n');
    }
    out
}
