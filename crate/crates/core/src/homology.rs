//! Reduced simplicial homology over ℚ and GF(p).
//!
//! Uses the augmented chain complex, so `∂_0` sends every vertex to the
//! generator of `C_{-1} = k` and `H̃_{-1}({∅}) = k` comes out of the same
//! rank computation as every other degree.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::face::Face;
use crate::field::FieldSpec;
use crate::linalg;

/// Ranks of `H̃_i(Δ; k)` for `-1 <= i <= dim Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyProfile {
    /// `ranks[i + 1]` is the rank in degree `i`.
    ranks: Vec<usize>,
    field: FieldSpec,
}

impl HomologyProfile {
    pub(crate) fn new(mut ranks: Vec<usize>, field: FieldSpec) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
        }
        HomologyProfile { ranks, field }
    }

    /// Rank in degree `i`; zero outside the stored range.
    pub fn rank(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.ranks.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `(degree, rank)` pairs with nonzero rank.
    pub fn nonzero(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .map(|(k, &r)| (k as isize - 1, r))
    }

    pub fn top_nonzero_degree(&self) -> Option<isize> {
        self.nonzero().map(|(d, _)| d).last()
    }

    /// `sum_i (-1)^i rank H̃_i`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.nonzero()
            .map(|(d, r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

pub(crate) trait Cell: Hash + Eq + Clone {
    /// Codimension-one faces with the sign `(-1)^position` of the removed
    /// vertex in increasing vertex order.
    fn boundary(&self) -> Vec<(Self, i64)>;
}

impl Cell for Face {
    fn boundary(&self) -> Vec<(Self, i64)> {
        self.iter()
            .enumerate()
            .map(|(pos, v)| (self.without(v), if pos % 2 == 0 { 1 } else { -1 }))
            .collect()
    }
}

impl Cell for u64 {
    fn boundary(&self) -> Vec<(Self, i64)> {
        let mut out = Vec::with_capacity(self.count_ones() as usize);
        let mut rest = *self;
        let mut pos = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            out.push((self & !bit, if pos % 2 == 0 { 1 } else { -1 }));
            rest &= rest - 1;
            pos += 1;
        }
        out
    }
}

/// Sparse columns of the map from `layers[k]` to `layers[k - 1]`.
fn boundary_columns<C: Cell>(lower: &[C], upper: &[C]) -> Vec<Vec<(usize, i64)>> {
    let index: HashMap<&C, usize> = lower.iter().enumerate().map(|(i, c)| (c, i)).collect();
    upper
        .iter()
        .map(|c| {
            c.boundary()
                .into_iter()
                .map(|(f, s)| (index[&f], s))
                .collect()
        })
        .collect()
}

/// Reduced homology ranks of a complex given by its faces grouped by
/// cardinality (`layers[k]` = faces with `k` vertices), once per field.
pub(crate) fn layered_homology<C: Cell>(layers: &[Vec<C>], fields: &[FieldSpec]) -> Vec<Vec<usize>> {
    let top = layers.len();
    let boundaries: Vec<Vec<Vec<(usize, i64)>>> = (1..top)
        .map(|k| boundary_columns(&layers[k - 1], &layers[k]))
        .collect();
    fields
        .iter()
        .map(|&field| {
            // ranks[k] = rank of the map out of layer k; layer 0 maps to 0.
            let mut ranks = vec![0usize; top + 1];
            for k in 1..top {
                ranks[k] = linalg::rank(layers[k - 1].len(), &boundaries[k - 1], field);
            }
            (0..top)
                .map(|k| layers[k].len() - ranks[k] - ranks[k + 1])
                .collect()
        })
        .collect()
}

pub fn reduced_homology(complex: &SimplicialComplex, field: FieldSpec) -> Result<HomologyProfile> {
    field.validate()?;
    Ok(reduced_homology_multi(complex, &[field]).pop().unwrap())
}

/// One homology computation shared across several fields.
pub fn reduced_homology_multi(
    complex: &SimplicialComplex,
    fields: &[FieldSpec],
) -> Vec<HomologyProfile> {
    let layers: Vec<Vec<Face>> = (-1..=complex.dim())
        .map(|d| complex.faces_of_dim(d).to_vec())
        .collect();
    layered_homology(&layers, fields)
        .into_iter()
        .zip(fields)
        .map(|(r, &f)| HomologyProfile::new(r, f))
        .collect()
}

/// The integer matrix of `∂_i : C_i → C_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    /// `(i-1)`-faces, in canonical order.
    pub rows: Vec<Face>,
    /// `i`-faces, in canonical order.
    pub cols: Vec<Face>,
    /// Column-sparse `(row, ±1)` entries.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols.len()]; self.rows.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] = v;
            }
        }
        m
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        linalg::rank(self.rows.len(), &self.columns, field)
    }

    /// Entry `(row, col)` as an element of `k`, represented in `0..p` for
    /// GF(p).
    pub fn entry_in(&self, row: usize, col: usize, field: FieldSpec) -> i64 {
        let v = self.columns[col]
            .iter()
            .find(|&&(r, _)| r == row)
            .map_or(0, |&(_, v)| v);
        match field {
            FieldSpec::Rationals => v,
            FieldSpec::PrimeField(p) => v.rem_euclid(p as i64),
        }
    }
}

/// `∂_i` of the augmented chain complex; `i = 0` maps vertices onto `∅`.
pub fn boundary_matrix(complex: &SimplicialComplex, i: isize) -> BoundaryMatrix {
    let rows = complex.faces_of_dim(i - 1).to_vec();
    let cols = complex.faces_of_dim(i).to_vec();
    let columns = if rows.is_empty() {
        vec![Vec::new(); cols.len()]
    } else {
        boundary_columns(&rows, &cols)
    };
    BoundaryMatrix {
        rows,
        cols,
        columns,
    }
}
