//! Exhaustive search for small fundamental surfaces, used to cross-check the
//! Hilbert basis computation.

use crate::normal::{is_admissible, Layout, MatchingSystem, NormalCoordinates};
use crate::triangulation::Triangulation;

/// All admissible matching solutions with coordinate sum at most `bound` that
/// are not a sum of two nonzero such solutions, in lexicographic order.
///
/// Solutions are parametrised by the free columns of the reduced row echelon
/// form of the matching equations; every assignment of the free columns with
/// sum at most `bound` is tried.
pub fn brute_force_fundamental_oracle(tri: &Triangulation, layout: &Layout, bound: u64) -> Vec<NormalCoordinates> {
    let ms = MatchingSystem::new(tri, layout);
    let n = ms.cols;
    let (rref, pivots) = rref(&ms.rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut assign = vec![0u64; free.len()];
    search(&rref, &pivots, &free, n, bound, 0, 0, &mut assign, layout, &mut solutions);

    solutions.sort_by_key(|v| v.iter().sum::<u64>());
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    for x in solutions {
        if x.iter().all(|&v| v == 0) {
            continue;
        }
        if !minimal.iter().any(|m| m.iter().zip(&x).all(|(a, b)| a <= b)) {
            minimal.push(x);
        }
    }
    let mut out: Vec<NormalCoordinates> = minimal.into_iter().map(NormalCoordinates).collect();
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    rref: &[Vec<i128>],
    pivots: &[usize],
    free: &[usize],
    n: usize,
    bound: u64,
    depth: usize,
    used: u64,
    assign: &mut Vec<u64>,
    layout: &Layout,
    out: &mut Vec<Vec<u64>>,
) {
    if depth == free.len() {
        let mut x = vec![0u64; n];
        for (k, &c) in free.iter().enumerate() {
            x[c] = assign[k];
        }
        let mut total = used;
        for (r, &p) in pivots.iter().enumerate() {
            // rref[r][p] * x_p + Σ rref[r][f] x_f = 0
            let s: i128 = free.iter().enumerate().map(|(k, &c)| rref[r][c] * assign[k] as i128).sum();
            let d = rref[r][p];
            if s % d != 0 {
                return;
            }
            let v = -s / d;
            if v < 0 {
                return;
            }
            total += v as u64;
            if total > bound {
                return;
            }
            x[p] = v as u64;
        }
        if is_admissible(layout, &x) {
            out.push(x);
        }
        return;
    }
    for v in 0..=bound - used {
        assign[depth] = v;
        search(rref, pivots, free, n, bound, depth + 1, used + v, assign, layout, out);
    }
    assign[depth] = 0;
}

/// Fraction-free reduced row echelon form: each pivot column is zero outside
/// its pivot row.
fn rref(rows: &[Vec<i64>], n: usize) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i == r || m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            for k in 0..n {
                m[i][k] = m[i][k] * a - m[r][k] * b;
            }
            crate::linalg::primitive(&mut m[i]);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}
