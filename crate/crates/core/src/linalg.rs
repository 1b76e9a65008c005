//! Exact rank of sparse integer matrices, over GF(p) or over ℚ.
//!
//! Matrices arrive column-sparse as `(row, value)` lists. Rank is
//! transpose-invariant, so the eliminators below treat those lists as rows.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::FieldSpec;

pub type SparseColumns = [Vec<(usize, i64)>];

pub fn rank(width: usize, cols: &SparseColumns, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => rank_rational(width, cols),
        FieldSpec::PrimeField(p) => rank_mod_p(width, cols, p),
    }
}

fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Sparse Gaussian elimination over GF(p) with Markowitz pivot selection:
/// each step picks the nonzero minimising `(r - 1)(c - 1)`, where `r` and
/// `c` are the live entry counts of its row and column.
pub fn rank_mod_p(ncols: usize, lines: &SparseColumns, p: u64) -> usize {
    let mut rows: Vec<Vec<(usize, u64)>> = lines
        .iter()
        .map(|l| {
            let mut r: Vec<(usize, u64)> = l
                .iter()
                .map(|&(c, v)| (c, reduce(v, p)))
                .filter(|&(_, v)| v != 0)
                .collect();
            r.sort_unstable_by_key(|&(c, _)| c);
            r
        })
        .collect();
    let width = rows
        .iter()
        .flat_map(|r| r.iter().map(|&(c, _)| c + 1))
        .max()
        .unwrap_or(0)
        .max(ncols);
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); width];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c].insert(i);
        }
    }
    let mut active: BTreeSet<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &i in &active {
            let rc = rows[i].len() - 1;
            for &(c, _) in &rows[i] {
                let cost = rc * (col_rows[c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, i, c));
                }
            }
            if best.is_some_and(|(b, _, _)| b == 0) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else { break };
        rank += 1;
        active.remove(&pr);
        let pivot_row = std::mem::take(&mut rows[pr]);
        for &(c, _) in &pivot_row {
            col_rows[c].remove(&pr);
        }
        let pv = pivot_row.iter().find(|&&(c, _)| c == pc).unwrap().1;
        let pinv = inv_mod(pv, p);
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            let tv = rows[t].iter().find(|&&(c, _)| c == pc).unwrap().1;
            let factor = mul_mod(tv, pinv, p);
            let old = std::mem::take(&mut rows[t]);
            let merged = axpy(&old, &pivot_row, p - factor, p);
            for &(c, _) in &old {
                col_rows[c].remove(&t);
            }
            for &(c, _) in &merged {
                col_rows[c].insert(t);
            }
            if merged.is_empty() {
                active.remove(&t);
            }
            rows[t] = merged;
        }
    }
    rank
}

/// `a + k * b` over sorted sparse rows mod p.
fn axpy(a: &[(usize, u64)], b: &[(usize, u64)], k: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        let (c, v) = if ca < cb {
            i += 1;
            (ca, a[i - 1].1)
        } else if cb < ca {
            j += 1;
            (cb, mul_mod(k, b[j - 1].1, p))
        } else {
            i += 1;
            j += 1;
            (ca, (a[i - 1].1 + mul_mod(k, b[j - 1].1, p)) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

trait BareissScalar: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `(a*d - b*c) / prev`, exact; `None` on overflow.
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self>;
}

impl BareissScalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self> {
        let x = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(x % prev, 0);
        Some(x / prev)
    }
}

impl BareissScalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self> {
        Some((a * d - b * c) / prev)
    }
}

/// Rank over ℚ by fraction-free (Bareiss) elimination. Runs in `i128` and
/// restarts in arbitrary precision if an intermediate overflows.
pub fn rank_rational(ncols: usize, lines: &SparseColumns) -> usize {
    let width = lines
        .iter()
        .flat_map(|r| r.iter().map(|&(c, _)| c + 1))
        .max()
        .unwrap_or(0)
        .max(ncols);
    let m: Vec<Vec<i64>> = lines
        .iter()
        .filter(|l| l.iter().any(|&(_, v)| v != 0))
        .map(|l| {
            let mut row = vec![0i64; width];
            for &(c, v) in l {
                row[c] += v;
            }
            row
        })
        .collect();
    bareiss_rank::<i128>(&m).unwrap_or_else(|| bareiss_rank::<BigInt>(&m).expect("bigint"))
}

fn bareiss_rank<T: BareissScalar>(m: &[Vec<i64>]) -> Option<usize> {
    let mut a: Vec<Vec<T>> = m
        .iter()
        .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = T::from_i64(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        // Sparsest remaining row with a nonzero in this column.
        let pick = (rank..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col..].iter().filter(|x| !x.is_zero()).count());
        let Some(p) = pick else { continue };
        a.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = T::step(&a[rank][col], &a[r][col], &a[rank][c], &a[r][c], &prev)?;
                a[r][c] = v;
            }
            a[r][col] = T::from_i64(0);
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}
