//! Ring-theoretic invariants of `k[Δ]`, computed from faces and links.
//!
//! Depth and regularity come from Hochster's local cohomology formula and
//! never from a Betti table, so the two routes can check each other.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{descent_polynomial, sd_h_transform};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::field::FieldSpec;
use crate::homology::{reduced_homology_multi, HomologyProfile};
use crate::series::{DenominatorBase, IntPoly, RationalSeries};

fn nonvoid(complex: &SimplicialComplex) -> Result<()> {
    if complex.is_void() {
        Err(Error::VoidComplex)
    } else {
        Ok(())
    }
}

/// `Hilb(k[Δ], t) = (h_0 + h_1 t + ... + h_d t^d) / (1 - t)^d`, `d = dim Δ + 1`.
pub fn hilbert_series(complex: &SimplicialComplex) -> Result<RationalSeries> {
    nonvoid(complex)?;
    let d = (complex.dim() + 1) as usize;
    Ok(RationalSeries::new(
        IntPoly::new(complex.h_vector().0),
        DenominatorBase::OneMinusT,
        d,
    ))
}

/// `Hilb(k[sd Δ], t)` from the h-vector of `Δ` and refined Eulerian numbers,
/// without building the subdivision.
pub fn hilbert_series_sd(complex: &SimplicialComplex) -> Result<RationalSeries> {
    nonvoid(complex)?;
    let d = (complex.dim() + 1) as usize;
    let h = sd_h_transform(&complex.h_vector(), d)?;
    Ok(RationalSeries::new(IntPoly::new(h.0), DenominatorBase::OneMinusT, d))
}

/// Reduced homology of `lk F` for every face `F` (including `∅`), once per
/// field. Faces come in canonical order.
pub fn link_homology(
    complex: &SimplicialComplex,
    fields: &[FieldSpec],
) -> Result<Vec<(Face, Vec<HomologyProfile>)>> {
    for f in fields {
        f.validate()?;
    }
    let faces: Vec<Face> = complex.faces().cloned().collect();
    faces
        .into_par_iter()
        .map(|f| {
            let lk = complex.link(&f)?;
            Ok((f, reduced_homology_multi(&lk, fields)))
        })
        .collect()
}

fn single_field_links(complex: &SimplicialComplex, field: FieldSpec) -> Result<Vec<(Face, HomologyProfile)>> {
    Ok(link_homology(complex, &[field])?
        .into_iter()
        .map(|(f, mut p)| (f, p.pop().unwrap()))
        .collect())
}

fn check_degree(complex: &SimplicialComplex, i: usize) -> Result<()> {
    let top = (complex.dim() + 1) as usize;
    if i > top {
        return Err(Error::OutOfRange {
            what: format!("local cohomology degree {i} > {top}"),
        });
    }
    Ok(())
}

/// `Hilb(H^i(k[Δ]), t) = sum_F dim H̃_{i-|F|-1}(lk F) / (t - 1)^{|F|}`.
pub fn local_cohomology_series(complex: &SimplicialComplex, field: FieldSpec, i: usize) -> Result<RationalSeries> {
    nonvoid(complex)?;
    check_degree(complex, i)?;
    let links = single_field_links(complex, field)?;
    Ok(local_cohomology_from_links(complex, &links, i))
}

fn local_cohomology_from_links(
    complex: &SimplicialComplex,
    links: &[(Face, HomologyProfile)],
    i: usize,
) -> RationalSeries {
    let d = (complex.dim() + 1) as usize;
    let mut coeffs = vec![0i64; d + 1];
    for (f, h) in links {
        coeffs[f.len()] += h.rank(i as isize - f.len() as isize - 1) as i64;
    }
    RationalSeries::from_t_minus_one_terms(&coeffs.into_iter().map(IntPoly::constant).collect::<Vec<_>>())
}

/// `Hilb(H^i(k[sd Δ]), t)` from links in `Δ`:
/// `dim H̃_{i-1}(Δ) + sum_{m=1}^{d} sum_{|F|=m} D_m(t) / (t - 1)^m · dim H̃_{i-m-1}(lk F)`
/// where `D_m` is the descent polynomial of `S_m`.
pub fn local_cohomology_series_sd(complex: &SimplicialComplex, field: FieldSpec, i: usize) -> Result<RationalSeries> {
    nonvoid(complex)?;
    check_degree(complex, i)?;
    let d = (complex.dim() + 1) as usize;
    let links = single_field_links(complex, field)?;
    let mut weight = vec![0i64; d + 1];
    for (f, h) in &links {
        weight[f.len()] += h.rank(i as isize - f.len() as isize - 1) as i64;
    }
    let mut terms = vec![IntPoly::constant(weight[0])];
    for (m, &w) in weight.iter().enumerate().skip(1) {
        let desc = IntPoly::new(descent_polynomial(m)?.coefficients.into_iter().map(BigInt::from));
        terms.push(desc.scale(&BigInt::from(w)));
    }
    Ok(RationalSeries::from_t_minus_one_terms(&terms))
}

/// `(i, |F|)` pairs at which `H^i` receives a contribution from `F`.
fn contributions(links: &[(Face, HomologyProfile)]) -> impl Iterator<Item = (usize, usize)> + '_ {
    links.iter().flat_map(|(f, h)| {
        h.nonzero()
            .map(move |(q, _)| ((q + f.len() as isize + 1) as usize, f.len()))
    })
}

fn depth_from_links(links: &[(Face, HomologyProfile)]) -> usize {
    contributions(links).map(|(i, _)| i).min().expect("facets have link {∅}")
}

/// `max_i (i + end(H^i))` with `end(H^i) = -min{|F| : H̃_{i-|F|-1}(lk F) != 0}`.
fn regularity_from_links(links: &[(Face, HomologyProfile)]) -> usize {
    let mut min_face = std::collections::BTreeMap::new();
    for (i, size) in contributions(links) {
        let e = min_face.entry(i).or_insert(size);
        *e = (*e).min(size);
    }
    min_face.iter().map(|(&i, &s)| i - s).max().expect("nonvoid")
}

/// `min {i : exists F, H̃_{i-|F|-1}(lk F; k) != 0}`.
pub fn depth(complex: &SimplicialComplex, field: FieldSpec) -> Result<usize> {
    nonvoid(complex)?;
    Ok(depth_from_links(&single_field_links(complex, field)?))
}

pub fn regularity(complex: &SimplicialComplex, field: FieldSpec) -> Result<usize> {
    nonvoid(complex)?;
    Ok(regularity_from_links(&single_field_links(complex, field)?))
}

/// `(f_0 - dim Δ - 1, f_{dim Δ})`.
pub fn height_and_multiplicity(complex: &SimplicialComplex) -> Result<(usize, u64)> {
    nonvoid(complex)?;
    let f = complex.f_vector();
    Ok((complex.n() - (complex.dim() + 1) as usize, f.get(complex.dim())))
}

/// Reisner: depth equals Krull dimension.
pub fn is_cohen_macaulay(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    Ok(depth(complex, field)? as isize == complex.dim() + 1)
}

/// Every minimal nonface has two elements, so `I_Δ` is quadratic and
/// `k[Δ]` is Koszul.
pub fn is_koszul_flag(complex: &SimplicialComplex) -> Result<bool> {
    nonvoid(complex)?;
    Ok(complex.is_flag())
}

/// Golodness of `k[sd Δ]` by chordality of the 1-skeleton of `sd Δ`.
pub fn is_golod_sd(complex: &SimplicialComplex) -> Result<bool> {
    nonvoid(complex)?;
    Ok(complex.barycentric_subdivision().one_skeleton_is_chordal())
}

/// Chordality criterion for flag complexes; `None` when `Δ` is not flag,
/// where the criterion does not apply.
pub fn golod_criterion(complex: &SimplicialComplex) -> Result<Option<bool>> {
    nonvoid(complex)?;
    Ok(complex.is_flag().then(|| complex.one_skeleton_is_chordal()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantBundle {
    pub krull_dim: usize,
    pub depth: usize,
    /// `f_0 - depth` (Auslander-Buchsbaum).
    pub pdim: usize,
    pub reg: usize,
    pub height: usize,
    pub multiplicity: u64,
    pub is_cohen_macaulay: bool,
    pub is_koszul_flag: bool,
    /// Chordality criterion, only meaningful for flag complexes.
    pub is_golod: Option<bool>,
    pub field: FieldSpec,
}

impl InvariantBundle {
    pub fn compute(complex: &SimplicialComplex, field: FieldSpec) -> Result<Self> {
        nonvoid(complex)?;
        let links = single_field_links(complex, field)?;
        let depth = depth_from_links(&links);
        let krull_dim = (complex.dim() + 1) as usize;
        let (height, multiplicity) = height_and_multiplicity(complex)?;
        Ok(InvariantBundle {
            krull_dim,
            depth,
            pdim: complex.n() - depth,
            reg: regularity_from_links(&links),
            height,
            multiplicity,
            is_cohen_macaulay: depth == krull_dim,
            is_koszul_flag: complex.is_flag(),
            is_golod: golod_criterion(complex)?,
            field,
        })
    }
}
