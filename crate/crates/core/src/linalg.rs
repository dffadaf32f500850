//! Exact integer linear algebra: checked `i128` elimination for the enumeration
//! kernels and arbitrary-precision Smith normal form for homology.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Divides `v` by the gcd of its entries. Zero vectors are left alone.
pub(crate) fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(|| Error::overflow("integer elimination"))
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or_else(|| Error::overflow("integer elimination"))
}

/// Rank of an integer matrix given by rows.
pub(crate) fn rank(rows: &[Vec<i128>]) -> Result<usize> {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            let g = gcd(a, b);
            let (fa, fb) = (a / g, b / g);
            for k in c..ncols {
                m[i][k] = sub(mul(m[i][k], fa)?, mul(m[r][k], fb)?)?;
            }
            primitive(&mut m[i]);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    Ok(r)
}

/// A basis of the lattice `{x ∈ Z^n : rows · x = 0}` together with the map
/// sending a lattice vector to its coordinates in that basis.
pub(crate) struct KernelLattice {
    /// Basis vectors, each of length `n`.
    pub basis: Vec<Vec<i128>>,
    /// `coords[k] · x` is the k-th basis coordinate of a lattice vector `x`.
    pub coords: Vec<Vec<i128>>,
}

/// Integer kernel by unimodular column reduction, tracking the inverse transform.
pub(crate) fn integer_kernel(rows: &[Vec<i128>], n: usize) -> Result<KernelLattice> {
    let mut w: Vec<Vec<i128>> = rows.to_vec();
    // u holds the column transform, uinv its inverse (as rows).
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| unit(n, i)).collect();
    let mut uinv: Vec<Vec<i128>> = (0..n).map(|i| unit(n, i)).collect();
    let mut pivot_col = 0;
    for r in 0..w.len() {
        if pivot_col == n {
            break;
        }
        loop {
            // Bring the smallest nonzero entry of row r (from pivot_col on) to pivot_col.
            let best = (pivot_col..n)
                .filter(|&c| w[r][c] != 0)
                .min_by_key(|&c| w[r][c].abs());
            let Some(b) = best else { break };
            swap_cols(&mut w, &mut u, &mut uinv, pivot_col, b);
            let mut done = true;
            for c in pivot_col + 1..n {
                if w[r][c] == 0 {
                    continue;
                }
                let q = Integer::div_floor(&w[r][c], &w[r][pivot_col]);
                add_col(&mut w, &mut u, &mut uinv, c, pivot_col, -q)?;
                if w[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<i128>> = (pivot_col..n).map(|c| (0..n).map(|i| u[i][c]).collect()).collect();
    let coords = uinv[pivot_col..].to_vec();
    Ok(KernelLattice { basis, coords })
}

fn unit(n: usize, i: usize) -> Vec<i128> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn swap_cols(w: &mut [Vec<i128>], u: &mut [Vec<i128>], uinv: &mut [Vec<i128>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in w.iter_mut().chain(u.iter_mut()) {
        row.swap(a, b);
    }
    uinv.swap(a, b);
}

/// Column `dst += k * column src`, applied to `w` and `u`; the inverse row
/// operation `row src -= k * row dst` is applied to `uinv`.
fn add_col(
    w: &mut [Vec<i128>],
    u: &mut [Vec<i128>],
    uinv: &mut [Vec<i128>],
    dst: usize,
    src: usize,
    k: i128,
) -> Result<()> {
    for row in w.iter_mut().chain(u.iter_mut()) {
        row[dst] = row[dst]
            .checked_add(mul(k, row[src])?)
            .ok_or_else(|| Error::overflow("lattice basis"))?;
    }
    let n = uinv[0].len();
    for j in 0..n {
        uinv[src][j] = sub(uinv[src][j], mul(k, uinv[dst][j])?)?;
    }
    Ok(())
}

/// Determinant by Bareiss elimination; zero for a singular matrix.
pub(crate) fn determinant(a: &[Vec<i128>]) -> Result<i128> {
    let d = a.len();
    let mut m = a.to_vec();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..d {
        let Some(p) = (k..d).find(|&i| m[i][k] != 0) else {
            return Ok(0);
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                m[i][j] = sub(mul(m[k][k], m[i][j])?, mul(m[i][k], m[k][j])?)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[d - 1][d - 1])
}

/// Determinant and adjugate of a square matrix. Returns `None` for a singular
/// matrix.
pub(crate) fn det_adjugate(a: &[Vec<i128>]) -> Result<Option<(i128, Vec<Vec<i128>>)>> {
    let d = a.len();
    let det = determinant(a)?;
    if det == 0 {
        return Ok(None);
    }
    // Gauss-Jordan on [A | I] with primitive rows; row i ends as (c e_i | r)
    // with r / c the i-th row of the inverse.
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(d, i));
            r
        })
        .collect();
    for k in 0..d {
        let p = (k..d)
            .find(|&i| m[i][k] != 0)
            .expect("nonsingular matrix has a pivot");
        m.swap(p, k);
        for i in 0..d {
            if i == k || m[i][k] == 0 {
                continue;
            }
            let g = gcd(m[k][k], m[i][k]);
            let (fk, fi) = (m[k][k] / g, m[i][k] / g);
            for j in 0..2 * d {
                m[i][j] = sub(mul(m[i][j], fk)?, mul(m[k][j], fi)?)?;
            }
            primitive(&mut m[i]);
        }
    }
    let mut adj = vec![vec![0i128; d]; d];
    for i in 0..d {
        let c = m[i][i];
        for j in 0..d {
            let num = mul(m[i][d + j], det)?;
            debug_assert_eq!(num % c, 0);
            adj[i][j] = num / c;
        }
    }
    Ok(Some((det, adj)))
}

/// Matrix-vector product with overflow checks.
pub(crate) fn mat_vec(a: &[Vec<i128>], x: &[i128]) -> Result<Vec<i128>> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).try_fold(0i128, |acc, (&p, &q)| {
                acc.checked_add(mul(p, q)?).ok_or_else(|| Error::overflow("matrix product"))
            })
        })
        .collect()
}

/// Lower-triangular column Hermite form of a nonsingular square matrix; only
/// the diagonal is needed to enumerate residues of `Z^d / A Z^d`.
pub(crate) fn hermite_diagonal(a: &[Vec<i128>]) -> Result<Vec<i128>> {
    let d = a.len();
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut diag = Vec::with_capacity(d);
    for r in 0..d {
        loop {
            let best = (r..d).filter(|&c| m[r][c] != 0).min_by_key(|&c| m[r][c].abs());
            let Some(b) = best else {
                return Err(Error::overflow("singular simplicial cone"));
            };
            for row in m.iter_mut() {
                row.swap(r, b);
            }
            let mut done = true;
            for c in r + 1..d {
                if m[r][c] == 0 {
                    continue;
                }
                let q = Integer::div_floor(&m[r][c], &m[r][r]);
                for row in m.iter_mut() {
                    row[c] = sub(row[c], mul(q, row[r])?)?;
                }
                if m[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        diag.push(m[r][r].abs());
    }
    Ok(diag)
}

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
pub fn smith_diagonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nr = m.len();
    let nc = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Pick the smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nr {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            for j in t..nc {
                let v = &m[i][j] - &q * &m[t][j];
                m[i][j] = v;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..nc {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for i in t..nr {
                let v = &m[i][j] - &q * &m[i][t];
                m[i][j] = v;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the rest of the block by the pivot.
        let mut fix = None;
        'scan: for i in t + 1..nr {
            for j in t + 1..nc {
                if !m[i][j].is_multiple_of(&m[t][t]) {
                    fix = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = fix {
            for j in t..nc {
                let v = &m[t][j] + &m[i][j];
                m[t][j] = v;
            }
            continue;
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Abelian group `Z^rank ⊕ ⊕ Z/d` presented by the given relation columns on
/// `generators` generators. `relations[k]` is one relation.
pub fn abelian_group(generators: usize, relations: &[Vec<i64>]) -> AbelianGroup {
    let rows: Vec<Vec<BigInt>> = (0..generators)
        .map(|g| relations.iter().map(|r| BigInt::from(r[g])).collect())
        .collect();
    let diag = if relations.is_empty() {
        Vec::new()
    } else {
        smith_diagonal(&rows)
    };
    let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    AbelianGroup {
        rank: generators - diag.len(),
        torsion,
    }
}

/// A finitely generated abelian group in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("{r} Z")),
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
