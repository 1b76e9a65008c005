//! Graded Betti numbers of `k[Δ]` through Hochster's formula
//! `β_{i,j} = sum_{|W| = j} dim H̃_{j-i-1}(Δ_W; k)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::complex::{binomial, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::field::FieldSpec;
use crate::homology::layered_homology;

/// Default ceiling on the number of subsets a sweep may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Largest ground set a sweep can address with one-word masks.
pub const MAX_SWEEP_VERTICES: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Largest internal degree `j` to compute; `None` means `n`.
    pub cap: Option<usize>,
    /// Maximum number of subsets `W` to visit.
    pub budget: u128,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            cap: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Sparse `(i, j) -> β_{i,j}` for one field, complete for `j <= cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    cap: usize,
    field: FieldSpec,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_complete(&self) -> bool {
        self.cap >= self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(i, j, β_{i,j})`, sorted by `(i, j)`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// `sum_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.rows().filter(|r| r.0 == i).map(|r| r.2).sum()
    }

    /// Coefficients of `sum_{i,j} (-1)^i β_{i,j} t^j`, indexed by `j`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.n + 1];
        for (i, j, b) in self.rows() {
            out[j] += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::TruncatedTable {
                cap: self.cap,
                n: self.n,
            })
        }
    }
}

/// Minimal and maximal shifts `m_i`, `M_i` for `1 <= i <= pdim`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ShiftProfile {
    pub height: usize,
    /// `min_shifts[i - 1] = m_i`.
    pub min_shifts: Vec<usize>,
    /// `max_shifts[i - 1] = M_i`.
    pub max_shifts: Vec<usize>,
}

impl ShiftProfile {
    pub fn pdim(&self) -> usize {
        self.min_shifts.len()
    }

    pub fn m(&self, i: usize) -> usize {
        self.min_shifts[i - 1]
    }

    #[allow(non_snake_case)]
    pub fn M(&self, i: usize) -> usize {
        self.max_shifts[i - 1]
    }

    /// `(m_1..m_h, M_1..M_h)`.
    pub fn prefix(&self) -> (&[usize], &[usize]) {
        let h = self.height.min(self.pdim());
        (&self.min_shifts[..h], &self.max_shifts[..h])
    }
}

pub fn shifts(table: &BettiTable, height: usize) -> Result<ShiftProfile> {
    table.require_complete()?;
    let pdim = pdim_from_table(table)?;
    let mut min_shifts = Vec::with_capacity(pdim);
    let mut max_shifts = Vec::with_capacity(pdim);
    for i in 1..=pdim {
        let js: Vec<usize> = table.rows().filter(|r| r.0 == i).map(|r| r.1).collect();
        // A minimal resolution has no gaps in homological degree.
        let (&lo, &hi) = (js.first().ok_or_else(gap)?, js.last().ok_or_else(gap)?);
        min_shifts.push(lo);
        max_shifts.push(hi);
    }
    Ok(ShiftProfile {
        height,
        min_shifts,
        max_shifts,
    })
}

fn gap() -> Error {
    Error::ConsistencyViolation("Betti table has an empty homological degree below pdim".into())
}

/// `m_i = M_i` for every `i >= 1`.
pub fn is_pure(table: &BettiTable) -> Result<bool> {
    let s = shifts(table, 0)?;
    Ok(s.min_shifts == s.max_shifts)
}

pub fn pdim_from_table(table: &BettiTable) -> Result<usize> {
    table.require_complete()?;
    Ok(table.rows().map(|r| r.0).max().unwrap_or(0))
}

/// `max {j - i : β_{i,j} != 0}`.
pub fn reg_from_table(table: &BettiTable) -> Result<usize> {
    table.require_complete()?;
    Ok(table.rows().map(|(i, j, _)| j - i).max().unwrap_or(0))
}

pub fn hochster_betti(
    complex: &SimplicialComplex,
    field: FieldSpec,
    cap: Option<usize>,
) -> Result<BettiTable> {
    let opts = SweepOptions {
        cap,
        ..SweepOptions::default()
    };
    Ok(hochster_betti_multi(complex, &[field], &opts)?.pop().unwrap())
}

/// Subsets visited by a sweep up to degree `cap`.
pub fn sweep_work(n: usize, cap: usize) -> u128 {
    (0..=cap.min(n)).map(|j| binomial(n, j)).sum()
}

/// One sweep over the vertex subsets, producing a table per field.
pub fn hochster_betti_multi(
    complex: &SimplicialComplex,
    fields: &[FieldSpec],
    opts: &SweepOptions,
) -> Result<Vec<BettiTable>> {
    for f in fields {
        f.validate()?;
    }
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let n = complex.n();
    let cap = opts.cap.unwrap_or(n).min(n);
    let generator_degree = complex.minimal_nonfaces().iter().map(Face::len).max().unwrap_or(0);
    if cap < generator_degree {
        return Err(Error::CapTooSmall {
            cap,
            generator_degree,
        });
    }
    let work = sweep_work(n, cap);
    if work > opts.budget {
        return Err(Error::BudgetExceeded {
            work,
            budget: opts.budget,
        });
    }
    let engine = Engine::new(complex, fields)?;
    let nf = fields.len();
    let mut dense = vec![vec![vec![0u64; n + 1]; n + 1]; nf];
    for j in 0..=cap {
        let subsets: Vec<u64> = Subsets::new(n, j).collect();
        let part = subsets
            .par_iter()
            .fold(
                || vec![vec![0u64; j + 1]; nf],
                |mut acc, &w| {
                    let ranks = engine.ranks(w);
                    for (f, r) in ranks.iter().enumerate() {
                        // r[q + 1] = dim H̃_q(Δ_W); it lands in i = j - q - 1.
                        for (k, &b) in r.iter().enumerate() {
                            if b != 0 {
                                acc[f][j - k] += b as u64;
                            }
                        }
                    }
                    acc
                },
            )
            .reduce(
                || vec![vec![0u64; j + 1]; nf],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        for (s, t) in x.iter_mut().zip(y) {
                            *s += t;
                        }
                    }
                    a
                },
            );
        for f in 0..nf {
            for i in 0..=j {
                dense[f][i][j] = part[f][i];
            }
        }
    }
    Ok(fields
        .iter()
        .zip(dense)
        .map(|(&field, d)| {
            let mut entries = BTreeMap::new();
            for (i, row) in d.iter().enumerate() {
                for (j, &b) in row.iter().enumerate() {
                    if b != 0 {
                        entries.insert((i, j), b);
                    }
                }
            }
            BettiTable {
                n,
                cap,
                field,
                entries,
            }
        })
        .collect())
}

/// `β_{i,j} != 0`, by searching for a single witness.
pub fn nonvanishing(complex: &SimplicialComplex, field: FieldSpec, i: usize, j: usize) -> Result<bool> {
    Ok(betti_witness(complex, field, i, j)?.is_some())
}

/// The first `W` in colex order with `|W| = j` and `H̃_{j-i-1}(Δ_W) != 0`.
pub fn betti_witness(
    complex: &SimplicialComplex,
    field: FieldSpec,
    i: usize,
    j: usize,
) -> Result<Option<Face>> {
    field.validate()?;
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let n = complex.n();
    if i > j || j > n {
        return Ok(None);
    }
    let engine = Engine::new(complex, &[field])?;
    let k = j - i; // index of degree j - i - 1
    let subsets: Vec<u64> = Subsets::new(n, j).collect();
    Ok(subsets
        .par_iter()
        .find_first(|&&w| engine.ranks(w)[0].get(k).is_some_and(|&b| b != 0))
        .map(|&w| Face::from_mask(w)))
}

/// Fixed-size subsets of `0..n` as masks in colex order (Gosper's hack).
pub struct Subsets {
    next: Option<u64>,
    limit: u128,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
        let limit = 1u128 << n;
        Subsets {
            next: (k <= n).then_some(first),
            limit,
        }
    }
}

impl Iterator for Subsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        if (x as u128) >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x.wrapping_add(c);
            if r == 0 {
                None
            } else {
                Some((((r ^ x) >> 2) / c) | r)
            }
        };
        Some(x)
    }
}

type Ranks = Arc<Vec<Vec<usize>>>;

/// Reduced homology of `Δ_W` for many `W`, over a fixed list of fields.
pub(crate) struct Engine {
    fields: Vec<FieldSpec>,
    kind: Kind,
    cache: RwLock<HashMap<u64, Ranks>>,
    empty: Ranks,
    acyclic: Ranks,
}

enum Kind {
    /// Clique complex: closed-neighbourhood masks drive a strong collapse
    /// before any matrix is built.
    Flag { closed: Vec<u64> },
    General { faces: Vec<u64> },
}

impl Engine {
    pub(crate) fn new(complex: &SimplicialComplex, fields: &[FieldSpec]) -> Result<Self> {
        let n = complex.n();
        if n > MAX_SWEEP_VERTICES {
            return Err(Error::OutOfRange {
                what: format!("subset sweep over {n} vertices"),
            });
        }
        let kind = if complex.is_flag() {
            let mut closed: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
            for e in complex.faces_of_dim(1) {
                let m = e.to_mask().unwrap();
                for v in e.iter() {
                    closed[v] |= m;
                }
            }
            Kind::Flag { closed }
        } else {
            Kind::General {
                faces: complex.faces().map(|f| f.to_mask().unwrap()).collect(),
            }
        };
        Ok(Engine {
            fields: fields.to_vec(),
            kind,
            cache: RwLock::new(HashMap::new()),
            empty: Arc::new(vec![vec![1]; fields.len()]),
            acyclic: Arc::new(vec![Vec::new(); fields.len()]),
        })
    }

    /// Per field, `ranks[q + 1] = dim H̃_q(Δ_W)`.
    pub(crate) fn ranks(&self, w: u64) -> Ranks {
        match &self.kind {
            Kind::Flag { closed } => {
                let core = strong_core(closed, w);
                match core.count_ones() {
                    0 => self.empty.clone(),
                    1 => self.acyclic.clone(),
                    _ => {
                        if let Some(r) = self.cache.read().unwrap().get(&core) {
                            return r.clone();
                        }
                        let r = Arc::new(layered_homology(&clique_layers(closed, core), &self.fields));
                        self.cache.write().unwrap().insert(core, r.clone());
                        r
                    }
                }
            }
            Kind::General { faces } => {
                let mut layers: Vec<Vec<u64>> = vec![Vec::new(); w.count_ones() as usize + 1];
                for &f in faces {
                    if f & !w == 0 {
                        layers[f.count_ones() as usize].push(f);
                    }
                }
                while layers.last().is_some_and(Vec::is_empty) {
                    layers.pop();
                }
                Arc::new(layered_homology(&layers, &self.fields))
            }
        }
    }
}

/// Removes dominated vertices (`N[v] ∩ W ⊆ N[u]` for some `u != v`) until
/// none remain. Each removal preserves the homotopy type of the clique
/// complex, since the link of `v` is a cone with apex `u`.
fn strong_core(closed: &[u64], mut w: u64) -> u64 {
    loop {
        let mut changed = false;
        let mut rest = w;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nv = closed[v] & w;
            let mut cands = nv & !(1u64 << v);
            while cands != 0 {
                let u = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                if nv & !closed[u] == 0 {
                    w &= !(1u64 << v);
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            return w;
        }
    }
}

/// Cliques inside `w`, grouped by size.
fn clique_layers(closed: &[u64], w: u64) -> Vec<Vec<u64>> {
    let mut layers = vec![vec![0u64]];
    loop {
        let last = layers.last().unwrap();
        let mut next = Vec::new();
        for &c in last {
            // Common neighbours above the current maximum vertex.
            let above = if c == 0 { w } else { w & !((2u64 << (63 - c.leading_zeros())) - 1) };
            let mut common = above;
            let mut m = c;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                common &= closed[v];
            }
            while common != 0 {
                let v = common.trailing_zeros();
                common &= common - 1;
                next.push(c | 1u64 << v);
            }
        }
        if next.is_empty() {
            return layers;
        }
        layers.push(next);
    }
}
