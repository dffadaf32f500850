//! Double description over the non-negative orthant, one matching equation at
//! a time, discarding rays that break the quadrilateral condition as soon as
//! they appear. Supports only grow when rays are combined, so a discarded ray
//! could never lead back to an admissible one.

use crate::error::{Error, Result};
use crate::linalg::{primitive, rank};

pub(crate) const WORDS: usize = 4;
pub(crate) const MAX_COLUMNS: usize = 64 * WORDS;

/// A set of coordinate positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Bits([u64; WORDS]);

impl Bits {
    pub(crate) fn full(n: usize) -> Bits {
        let mut b = Bits::default();
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn and(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] & o.0[k]))
    }

    pub(crate) fn minus(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] & !o.0[k]))
    }

    pub(crate) fn is_subset(self, o: Bits) -> bool {
        (0..WORDS).all(|k| self.0[k] & !o.0[k] == 0)
    }

    pub(crate) fn count(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

/// Quadrilateral columns of each tetrahedron, for the admissibility filter.
pub(crate) struct QuadMasks(pub Vec<Bits>);

impl QuadMasks {
    pub(crate) fn admits(&self, support: Bits) -> bool {
        self.0.iter().all(|m| support.and(*m).count() <= 1)
    }
}

struct Ray {
    v: Vec<i128>,
    zero: Bits,
}

/// Extreme rays of `{x ≥ 0 : rows · x = 0}` whose support is admissible,
/// each scaled to its primitive integer point and sorted lexicographically.
pub(crate) fn admissible_extreme_rays(
    rows: &[Vec<i64>],
    n: usize,
    masks: &QuadMasks,
    max_rays: usize,
) -> Result<Vec<Vec<i128>>> {
    if n > MAX_COLUMNS {
        return Err(Error::ResourceExhausted(format!(
            "{n} coordinates exceed the supported maximum of {MAX_COLUMNS}"
        )));
    }
    let all = Bits::full(n);
    let mut rays: Vec<Ray> = (0..n)
        .map(|i| {
            let mut v = vec![0i128; n];
            v[i] = 1;
            let mut zero = all;
            zero.0[i / 64] &= !(1 << (i % 64));
            Ray { v, zero }
        })
        .collect();

    let mut processed: Vec<Vec<i128>> = Vec::new();
    let mut remaining: Vec<Vec<(usize, i64)>> = order_rows(rows)
        .into_iter()
        .map(|r| r.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect())
        .collect();
    for step in 0..remaining.len() {
        let pick = cheapest_row(&remaining, &rays)?;
        let row = remaining.remove(pick);
        let mut dense = vec![0i128; n];
        for &(j, c) in &row {
            dense[j] = c as i128;
        }
        processed.push(dense);
        // Two rays of the new cone are adjacent only if they share at least
        // dim - 2 tight coordinates.
        let dim = n - rank(&processed)?;
        let needed = dim.saturating_sub(2) as u32;
        let vals: Vec<i128> = rays
            .iter()
            .map(|r| dot(&row, &r.v))
            .collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i] == 0 {
                next.push(Ray { v: r.v.clone(), zero: r.zero });
            }
        }
        for &p in &pos {
            let mut last_witness: Option<usize> = None;
            // Any witness against adjacency shares `needed` zeros with `p`.
            let near: Vec<usize> = (0..rays.len())
                .filter(|&k| k != p && rays[k].zero.and(rays[p].zero).count() >= needed)
                .collect();
            for &q in &neg {
                let common = rays[p].zero.and(rays[q].zero);
                if common.count() < needed || !masks.admits(all.minus(common)) {
                    continue;
                }
                if last_witness.is_some_and(|w| w != p && w != q && common.is_subset(rays[w].zero)) {
                    continue;
                }
                let witness = near
                    .iter()
                    .copied()
                    .find(|&k| k != q && common.is_subset(rays[k].zero));
                if witness.is_some() {
                    last_witness = witness;
                    continue;
                }
                let (a, b) = (vals[p], -vals[q]);
                let mut v = Vec::with_capacity(n);
                for (x, y) in rays[q].v.iter().zip(&rays[p].v) {
                    let s = a
                        .checked_mul(*x)
                        .and_then(|s| b.checked_mul(*y).and_then(|t| s.checked_add(t)))
                        .ok_or_else(|| Error::overflow("double description"))?;
                    v.push(s);
                }
                primitive(&mut v);
                next.push(Ray { v, zero: common });
                if next.len() > max_rays {
                    return Err(Error::ResourceExhausted(format!(
                        "more than {max_rays} intermediate rays after {} equations",
                        step + 1
                    )));
                }
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<i128>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The remaining equation that combines the fewest ray pairs; ties go to
/// the earlier row.
fn cheapest_row(remaining: &[Vec<(usize, i64)>], rays: &[Ray]) -> Result<usize> {
    let mut best = (u64::MAX, 0);
    for (k, row) in remaining.iter().enumerate() {
        let (mut np, mut nn) = (0u64, 0u64);
        for r in rays {
            match dot(row, &r.v)?.signum() {
                1 => np += 1,
                -1 => nn += 1,
                _ => {}
            }
        }
        best = best.min((np * nn, k));
    }
    Ok(best.1)
}

fn dot(row: &[(usize, i64)], v: &[i128]) -> Result<i128> {
    row.iter().try_fold(0i128, |acc, &(j, a)| {
        (a as i128)
            .checked_mul(v[j])
            .and_then(|p| acc.checked_add(p))
            .ok_or_else(|| Error::overflow("double description"))
    })
}

/// Rows sorted by their first nonzero column, which fixes the tie order.
fn order_rows(rows: &[Vec<i64>]) -> Vec<&[i64]> {
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by_key(|&i| {
        let first = rows[i].iter().position(|&c| c != 0).unwrap_or(usize::MAX);
        (first, i)
    });
    idx.into_iter().map(|i| rows[i].as_slice()).collect()
}

