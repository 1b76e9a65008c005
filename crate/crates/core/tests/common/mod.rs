//! Independent oracles for the integration tests.
//!
//! Nothing here calls the library's homology, rank, or sweep code: faces are
//! expanded from facet masks directly, boundary matrices are built densely
//! over `BigInt`, and ranks come from a Smith normal form.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use srtool_core::{FieldSpec, SimplicialComplex};

/// A complex as `n` plus facet masks over `0..n`.
#[derive(Debug, Clone)]
pub struct Raw {
    pub n: usize,
    pub facets: Vec<u64>,
}

impl Raw {
    pub fn of(c: &SimplicialComplex) -> Raw {
        Raw {
            n: c.n(),
            facets: c.facets().iter().map(|f| f.to_mask().unwrap()).collect(),
        }
    }

    /// Every face, by brute force over all masks.
    pub fn faces(&self) -> Vec<u64> {
        if self.facets.is_empty() {
            return Vec::new();
        }
        (0u64..1 << self.n)
            .filter(|m| self.facets.iter().any(|f| m & !f == 0))
            .collect()
    }

    pub fn restrict(&self, w: u64) -> Vec<u64> {
        self.faces().into_iter().filter(|f| f & !w == 0).collect()
    }
}

/// Diagonal of a Smith normal form of `m`, nonzero entries only, each
/// dividing the next.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block.
        let pos = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pos else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &q * &m[t][j];
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..rows {
                    let v = &q * &m[i][t];
                    m[i][j] -= v;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility into the rest of the block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Rank over `k` read off the Smith normal form.
pub fn rank_via_snf(m: Vec<Vec<BigInt>>, field: FieldSpec) -> usize {
    let d = smith_diagonal(m);
    match field {
        FieldSpec::Rationals => d.len(),
        FieldSpec::PrimeField(p) => d.iter().filter(|x| !(*x % p).is_zero()).count(),
    }
}

/// Dense `∂_q` from faces with `q + 1` vertices to faces with `q`.
fn dense_boundary(upper: &[u64], lower: &[u64]) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::zero(); upper.len()]; lower.len()];
    for (c, &f) in upper.iter().enumerate() {
        let members: Vec<u32> = (0..64).filter(|b| f >> b & 1 == 1).collect();
        for (pos, &v) in members.iter().enumerate() {
            let g = f & !(1u64 << v);
            let r = lower.iter().position(|&x| x == g).unwrap();
            m[r][c] = BigInt::from(if pos % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// `ranks[q + 1] = dim H̃_q` for a face family (which may be empty or `{∅}`),
/// padded to `len` entries.
pub fn homology_oracle(faces: &[u64], field: FieldSpec, len: usize) -> Vec<usize> {
    let top = faces.iter().map(|f| f.count_ones() as usize).max();
    let Some(top) = top else { return vec![0; len] };
    let by_size: Vec<Vec<u64>> = (0..=top)
        .map(|k| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect())
        .collect();
    let mut rank_out = vec![0usize; top + 2];
    for k in 1..=top {
        rank_out[k] = rank_via_snf(dense_boundary(&by_size[k], &by_size[k - 1]), field);
    }
    let mut out: Vec<usize> = (0..=top)
        .map(|k| by_size[k].len() - rank_out[k] - rank_out[k + 1])
        .collect();
    out.resize(len.max(out.len()), 0);
    out
}

/// `β_{i,j}` by Hochster's formula over every subset, with the homology
/// oracle above.
pub fn hochster_oracle(raw: &Raw, field: FieldSpec) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for w in 0u64..1 << raw.n {
        let j = w.count_ones() as usize;
        let ranks = homology_oracle(&raw.restrict(w), field, 0);
        for (k, &b) in ranks.iter().enumerate() {
            if b != 0 {
                *out.entry((j - k, j)).or_insert(0) += b as u64;
            }
        }
    }
    out
}

pub fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn from_masks(n: usize, masks: &[u64]) -> SimplicialComplex {
    let labels = labels(n);
    let mut facets: Vec<Vec<String>> = masks
        .iter()
        .map(|&m| (0..n).filter(|v| m >> v & 1 == 1).map(|v| labels[v].clone()).collect())
        .filter(|f: &Vec<String>| !f.is_empty())
        .collect();
    facets.extend(labels.iter().map(|l| vec![l.clone()]));
    SimplicialComplex::from_facets(&labels, &facets).unwrap()
}

pub fn cx(labels: &[&str], facets: &[&[&str]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(labels, facets).unwrap()
}

/// Random complexes on 1 to `max_n` vertices.
pub fn arb_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u64..1 << n, 0..=n).prop_map(move |m| from_masks(n, &m))
    })
}

pub fn c4() -> SimplicialComplex {
    cx(&["1", "2", "3", "4"], &[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]])
}

pub fn tetra_boundary() -> SimplicialComplex {
    cx(
        &["1", "2", "3", "4"],
        &[&["1", "2", "3"], &["1", "2", "4"], &["1", "3", "4"], &["2", "3", "4"]],
    )
}

/// Six-vertex real projective plane, ten triangles.
pub fn rp2() -> SimplicialComplex {
    let f: [[&str; 3]; 10] = [
        ["1", "2", "3"],
        ["1", "3", "4"],
        ["1", "4", "5"],
        ["1", "5", "6"],
        ["1", "2", "6"],
        ["2", "3", "5"],
        ["2", "4", "5"],
        ["2", "4", "6"],
        ["3", "4", "6"],
        ["3", "5", "6"],
    ];
    cx(&["1", "2", "3", "4", "5", "6"], &f.iter().map(|x| &x[..]).collect::<Vec<_>>())
}

/// Every complex on one to four vertices.
pub fn small_corpus() -> Vec<SimplicialComplex> {
    (1..=4)
        .flat_map(|n| srtool_core::corpus::exhaustive(n).unwrap())
        .collect()
}
