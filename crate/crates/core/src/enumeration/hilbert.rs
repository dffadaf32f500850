//! Hilbert bases of the admissible cones.
//!
//! Each maximal set of pairwise compatible vertex rays spans the cone of
//! solutions using one fixed choice of quadrilateral types. That cone is
//! covered by simplicial cones on its rays (a pulling triangulation), every
//! lattice point of a simplicial cone is a lattice point of its half-open
//! fundamental parallelepiped plus a non-negative integer combination of the
//! rays, and the irreducible candidates are the Hilbert basis.

use super::dd::Bits;
use crate::error::{Error, Result};
use crate::linalg::{det_adjugate, hermite_diagonal, integer_kernel, mat_vec, rank};
use std::collections::BTreeSet;

/// Maximal cliques of the compatibility graph, each sorted, in lexicographic order.
pub(crate) fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    bron_kerbosch(adj, Vec::new(), (0..n).collect(), Vec::new(), &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| v != u && adj[u][v]).count())
        .unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| v == pivot || !adj[pivot][v]).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Hilbert basis of the cone spanned by `rays` (primitive, non-negative,
/// all extreme). The cone must be the set of non-negative vectors in a linear
/// subspace, as every admissible face of the solution cone is, so that
/// componentwise dominance decides reducibility. Returned vectors have the
/// full length of the input rays.
pub(crate) fn cone_hilbert_basis(rays: &[Vec<i128>], max_candidates: usize) -> Result<Vec<Vec<i128>>> {
    let n = rays[0].len();
    let support: Vec<usize> = (0..n).filter(|&j| rays.iter().any(|r| r[j] != 0)).collect();
    let restricted: Vec<Vec<i128>> = rays.iter().map(|r| support.iter().map(|&j| r[j]).collect()).collect();
    let m = support.len();

    // Lattice of integer points in the span of the rays.
    let orth = integer_kernel(&restricted, m)?.basis;
    let lattice = integer_kernel(&orth, m)?;
    let d = lattice.basis.len();
    debug_assert_eq!(d, rank(&restricted)?);
    let coords: Vec<Vec<i128>> = restricted
        .iter()
        .map(|r| mat_vec(&lattice.coords, r))
        .collect::<Result<_>>()?;

    let zero_sets: Vec<Bits> = restricted
        .iter()
        .map(|r| {
            let mut b = Bits::default();
            for (j, &x) in r.iter().enumerate() {
                if x == 0 {
                    b.insert(j);
                }
            }
            b
        })
        .collect();
    let all: Vec<usize> = (0..rays.len()).collect();
    let mut simplices = Vec::new();
    triangulate(&all, d, &coords, &zero_sets, m, &mut simplices)?;

    let mut candidates: BTreeSet<Vec<i128>> = restricted.iter().cloned().collect();
    for simplex in &simplices {
        parallelepiped_points(simplex, &coords, &restricted, &mut candidates, max_candidates)?;
    }

    let mut by_total: Vec<Vec<i128>> = candidates.into_iter().collect();
    by_total.sort_by_key(|v| v.iter().sum::<i128>());
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for x in &by_total {
        // Irreducible iff no smaller Hilbert basis element fits under it.
        let reducible = basis.iter().any(|h| h.iter().zip(x).all(|(a, b)| a <= b));
        if !reducible {
            basis.push(x.clone());
        }
    }
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut full = vec![0i128; n];
            for (k, &j) in support.iter().enumerate() {
                full[j] = v[k];
            }
            full
        })
        .collect())
}

/// Pulling triangulation: cone off from the first ray every facet that misses it.
fn triangulate(
    rays: &[usize],
    dim: usize,
    coords: &[Vec<i128>],
    zero_sets: &[Bits],
    m: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if rays.len() == dim {
        out.push(rays.to_vec());
        return Ok(());
    }
    if dim == 1 {
        // Extreme rays of a ray: just one.
        out.push(vec![rays[0]]);
        return Ok(());
    }
    let apex = rays[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for j in 0..m {
        let face: Vec<usize> = rays.iter().copied().filter(|&r| zero_sets[r].contains(j)).collect();
        if face.is_empty() || face.len() == rays.len() || face.contains(&apex) || facets.contains(&face) {
            continue;
        }
        let vecs: Vec<Vec<i128>> = face.iter().map(|&r| coords[r].clone()).collect();
        if rank(&vecs)? == dim - 1 {
            facets.insert(face);
        }
    }
    for facet in facets {
        let mut sub = Vec::new();
        triangulate(&facet, dim - 1, coords, zero_sets, m, &mut sub)?;
        for mut s in sub {
            s.push(apex);
            out.push(s);
        }
    }
    Ok(())
}

/// Adds the nonzero lattice points `Σ λ_i v_i`, `0 ≤ λ_i < 1`, of one simplicial cone.
fn parallelepiped_points(
    simplex: &[usize],
    coords: &[Vec<i128>],
    rays: &[Vec<i128>],
    out: &mut BTreeSet<Vec<i128>>,
    max_candidates: usize,
) -> Result<()> {
    let d = simplex.len();
    // Columns of `a` are the lattice coordinates of the simplex rays.
    let a: Vec<Vec<i128>> = (0..d).map(|i| simplex.iter().map(|&r| coords[r][i]).collect()).collect();
    let (det, adj) = det_adjugate(&a)?
        .ok_or_else(|| Error::Realization("degenerate simplex in cone triangulation".into()))?;
    let vol = det.abs();
    if vol == 1 {
        return Ok(());
    }
    if out.len() as i128 + vol > max_candidates as i128 {
        return Err(Error::ResourceExhausted(format!(
            "Hilbert basis candidates exceed {max_candidates} (simplex volume {vol})"
        )));
    }
    let diag = hermite_diagonal(&a)?;
    let m = rays[0].len();
    let mut z = vec![0i128; d];
    loop {
        // λ = A^{-1} z = adj · z / det, reduced mod 1.
        let mu = mat_vec(&adj, &z)?;
        let lambda: Vec<i128> = mu.iter().map(|&x| (x * det.signum()).rem_euclid(vol)).collect();
        if lambda.iter().any(|&l| l != 0) {
            let mut p = vec![0i128; m];
            for (k, &r) in simplex.iter().enumerate() {
                if lambda[k] == 0 {
                    continue;
                }
                for j in 0..m {
                    p[j] = lambda[k]
                        .checked_mul(rays[r][j])
                        .and_then(|s| s.checked_add(p[j]))
                        .ok_or_else(|| Error::overflow("parallelepiped point"))?;
                }
            }
            for v in p.iter_mut() {
                debug_assert_eq!(*v % vol, 0);
                *v /= vol;
            }
            out.insert(p);
        }
        // Next residue in the box ∏ [0, diag_i).
        let mut k = 0;
        loop {
            if k == d {
                return Ok(());
            }
            z[k] += 1;
            if z[k] < diag[k] {
                break;
            }
            z[k] = 0;
            k += 1;
        }
    }
}
