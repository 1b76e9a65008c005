//! Test corpora: every complex on a few labelled vertices, and seeded
//! random samples.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;

/// Largest ground set [`exhaustive`] accepts.
pub const EXHAUSTIVE_LIMIT: usize = 5;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Every simplicial complex on the labels `1..=n` containing all
/// singletons, without isomorphism reduction, in a fixed order.
pub fn exhaustive(n: usize) -> Result<Vec<SimplicialComplex>> {
    if n == 0 || n > EXHAUSTIVE_LIMIT {
        return Err(Error::OutOfRange {
            what: format!("exhaustive enumeration on {n} vertices"),
        });
    }
    // Candidate faces of size >= 2, smaller first, so that every proper
    // subset is decided before the set itself.
    let mut candidates: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() >= 2).collect();
    candidates.sort_by_key(|m| (m.count_ones(), *m));
    let mut out = Vec::new();
    let mut chosen: BTreeSet<u64> = BTreeSet::new();
    downsets(n, &candidates, 0, &mut chosen, &mut out);
    Ok(out)
}

fn downsets(n: usize, cands: &[u64], k: usize, chosen: &mut BTreeSet<u64>, out: &mut Vec<SimplicialComplex>) {
    if k == cands.len() {
        let mut faces: Vec<Face> = (0..n).map(Face::singleton).collect();
        faces.extend(chosen.iter().map(|&m| Face::from_mask(m)));
        out.push(SimplicialComplex::from_index_facets(labels(n), faces));
        return;
    }
    let m = cands[k];
    downsets(n, cands, k + 1, chosen, out);
    let closed = (0..n)
        .filter(|v| m >> v & 1 == 1)
        .map(|v| m & !(1 << v))
        .all(|sub| sub.count_ones() < 2 || chosen.contains(&sub));
    if closed {
        chosen.insert(m);
        downsets(n, cands, k + 1, chosen, out);
        chosen.remove(&m);
    }
}

/// `count` distinct complexes on `n` vertices whose subdivision has at most
/// `max_sd_vertices` vertices, drawn from a ChaCha stream seeded by `seed`.
///
/// Each draw takes between one and `n` random facets of size 2 to `n - 1`
/// and adds singleton facets for uncovered vertices.
pub fn sample(n: usize, count: usize, seed: u64, max_sd_vertices: usize) -> Result<Vec<SimplicialComplex>> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: format!("sampling on {n} vertices"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeSet<Vec<Face>> = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let verts: Vec<usize> = (0..n).collect();
    let mut attempts = 0u64;
    while out.len() < count {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(Error::OutOfRange {
                what: format!("{count} distinct samples with at most {max_sd_vertices} subdivision vertices"),
            });
        }
        let k = rng.gen_range(1..=n);
        let mut facets: Vec<Face> = (0..k)
            .map(|_| {
                let size = rng.gen_range(2..n);
                verts.choose_multiple(&mut rng, size).copied().collect()
            })
            .collect();
        facets.extend((0..n).map(Face::singleton));
        let c = SimplicialComplex::from_index_facets(labels(n), facets);
        if c.face_count() - 1 > max_sd_vertices {
            continue;
        }
        if seen.insert(c.facets().to_vec()) {
            out.push(c);
        }
    }
    Ok(out)
}
