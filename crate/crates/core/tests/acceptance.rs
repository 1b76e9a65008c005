//! End-to-end acceptance run over the shared corpus: every complex on at
//! most four vertices plus a seeded sample of five-vertex complexes whose
//! subdivisions have at most twenty vertices. Prints one line per
//! criterion and exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use num_bigint::BigInt;
use rayon::prelude::*;
use srtool_core::betti::{hochster_betti, hochster_betti_multi, pdim_from_table, reg_from_table};
use srtool_core::combinatorics::{factorial, lemma_fvec, lemma_no2, lemma_no3, lemma_no4, lemma_no5};
use srtool_core::conjecture::verify_subdivision_theorem_multi;
use srtool_core::homology::reduced_homology;
use srtool_core::invariants::*;
use srtool_core::{
    corpus, BettiTable, ConjectureReport, DenominatorBase, FieldSpec, IntPoly, RationalSeries, SimplicialComplex,
    SweepOptions,
};

const Q: FieldSpec = FieldSpec::Rationals;
const GF2: FieldSpec = FieldSpec::PrimeField(2);
const FIELDS: [FieldSpec; 2] = [Q, GF2];
const SAMPLE_SEED: u64 = 1;
const SAMPLE_SIZE: usize = 200;
const MAX_SD_VERTICES: usize = 20;

struct Entry {
    complex: SimplicialComplex,
    sd: SimplicialComplex,
    /// Tables of `k[Δ]`, one per field.
    tables: Vec<BettiTable>,
    /// Reports for `k[sd Δ]`, one per field; each carries its table.
    reports: Vec<ConjectureReport>,
}

/// Collects failures for one criterion; only the first few are kept.
#[derive(Default)]
struct Check {
    checked: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn report(self, id: usize, title: &str) -> bool {
        let ok = self.failure_count == 0;
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {id:>2} {title} ({} checks, {} failed)", self.checked, self.failure_count);
        for f in &self.failures {
            println!("        {f}");
        }
        ok
    }
}

fn build_corpus() -> Vec<Entry> {
    let mut complexes: Vec<SimplicialComplex> = (1..=4).flat_map(|n| corpus::exhaustive(n).unwrap()).collect();
    complexes.extend(corpus::sample(5, SAMPLE_SIZE, SAMPLE_SEED, MAX_SD_VERTICES).unwrap());
    let opts = SweepOptions::default();
    complexes
        .into_par_iter()
        .map(|complex| {
            let sd = complex.barycentric_subdivision();
            let tables = hochster_betti_multi(&complex, &FIELDS, &opts).unwrap();
            let reports = verify_subdivision_theorem_multi(&complex, &FIELDS, &opts)
                .unwrap_or_else(|e| panic!("{}: {e}", complex.render_facets()));
            Entry {
                complex,
                sd,
                tables,
                reports,
            }
        })
        .collect()
}

fn name(c: &SimplicialComplex) -> String {
    c.render_facets()
}

fn criterion_1(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        for r in &e.reports {
            let who = || format!("sd of {} over {}", name(&e.complex), r.field);
            ck.expect(r.upper_holds, || format!("upper bound fails for {}", who()));
            if r.is_cohen_macaulay {
                ck.expect(r.lower_holds == Some(true), || format!("lower bound fails for {}", who()));
                let equality = r.equality_upper && r.equality_lower == Some(true);
                ck.expect(equality == r.is_pure, || format!("equality {equality} but purity {} for {}", r.is_pure, who()));
            }
        }
    }
    ck
}

fn criterion_2(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        let f = e.complex.f_vector();
        let d = e.complex.dim();
        let h_closed: u64 = (0..=d).map(|l| f.get(l) - 1).sum();
        let e_closed = BigInt::from(factorial((d + 1) as usize)) * BigInt::from(f.get(d));
        let hilb = hilbert_series(&e.sd).unwrap();
        let h_hilb = e.sd.n() - hilb.pole_order();
        let e_hilb = hilb.degree_at_one();
        let e_facets = BigInt::from(e.sd.facets().iter().filter(|x| x.dim() == d).count());
        ck.expect(h_closed == h_hilb as u64 && e_closed == e_hilb && e_closed == e_facets, || {
            format!(
                "{}: closed forms (h, e) = ({h_closed}, {e_closed}), Hilbert series gives ({h_hilb}, {e_hilb}), facets {e_facets}",
                name(&e.complex)
            )
        });
        for r in &e.reports {
            ck.expect(r.height as u64 == h_closed && BigInt::from(r.multiplicity) == e_closed, || {
                format!("{}: report disagrees with closed forms", name(&e.complex))
            });
        }
    }
    ck
}

fn criterion_3(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        let via_transform = hilbert_series_sd(&e.complex).unwrap();
        let direct = hilbert_series(&e.sd).unwrap();
        ck.expect(via_transform == direct, || {
            format!("{}: transform {via_transform} but direct {direct}", name(&e.complex))
        });
    }
    let c3 = cx(&["1", "2", "3"], &[&["1", "2"], &["2", "3"], &["1", "3"]]);
    let expected = RationalSeries::new(IntPoly::new([1, 4, 1]), DenominatorBase::OneMinusT, 2);
    let got = hilbert_series_sd(&c3).unwrap();
    ck.expect(got == expected, || format!("C3 fixture gives {got}"));
    ck
}

fn criterion_4(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus.iter().filter(|e| e.complex.n() <= 4) {
        for k in FIELDS {
            for i in 0..=(e.complex.dim() + 1) as usize {
                let via_links = local_cohomology_series_sd(&e.complex, k, i).unwrap();
                let direct = local_cohomology_series(&e.sd, k, i).unwrap();
                ck.expect(via_links == direct, || {
                    format!("{} over {k}, i = {i}: {via_links} vs {direct}", name(&e.complex))
                });
            }
        }
    }
    ck
}

fn criterion_5(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        let f = e.complex.f_vector();
        let tail: u64 = (1..=e.complex.dim()).map(|i| f.get(i)).sum();
        for (t, r) in e.tables.iter().zip(&e.reports) {
            let k = t.field();
            let (d, d_sd) = (depth(&e.complex, k).unwrap(), depth(&e.sd, k).unwrap());
            ck.expect(d == d_sd, || format!("{} over {k}: depth {d} vs {d_sd}", name(&e.complex)));
            let (p, p_sd) = (pdim_from_table(t).unwrap() as u64, pdim_from_table(&r.table).unwrap() as u64);
            ck.expect(p_sd == p + tail, || {
                format!("{} over {k}: pdim {p}, pdim sd {p_sd}, sum f_i {tail}", name(&e.complex))
            });
        }
    }
    ck
}

fn criterion_6(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        let dim = e.complex.dim();
        for (t, r) in e.tables.iter().zip(&e.reports) {
            let k = t.field();
            let who = || format!("{} over {k}", name(&e.complex));
            let reg = regularity(&e.complex, k).unwrap();
            let reg_sd = regularity(&e.sd, k).unwrap();
            let top = reduced_homology(&e.complex, k).unwrap().rank(dim);
            let expected = if top == 0 { dim } else { dim + 1 };
            ck.expect(reg_sd as isize == expected, || format!("{}: reg sd {reg_sd}, expected {expected}", who()));
            ck.expect(reg <= reg_sd, || format!("{}: reg {reg} > reg sd {reg_sd}", who()));
            if top != 0 {
                ck.expect(reg as isize == dim + 1, || format!("{}: reg {reg} with top homology", who()));
            }
            ck.expect(reg_from_table(t).unwrap() == reg, || format!("{}: table and links disagree", who()));
            ck.expect(reg_from_table(&r.table).unwrap() == reg_sd, || format!("sd {}: table and links disagree", who()));
        }
    }
    ck
}

fn criterion_7(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        let d = e.complex.dim() as usize;
        let f = e.complex.f_vector();
        for r in &e.reports {
            let st = &r.table;
            let k = st.field();
            let who = || format!("sd of {} over {k}", name(&e.complex));
            for m in 2..d {
                for i in (1 << (m + 1)) - 2 - m..(1 << (m + 2)) - 2 - (m + 1) {
                    ck.expect(st.get(i, i + m) != 0, || format!("{}: β_{{{i},{}}} = 0", who(), i + m));
                }
            }
            if d > 1 {
                ck.expect(pdim_from_table(st).unwrap() >= 4, || format!("{}: pdim < 4", who()));
            }
            let top_zero = reduced_homology(&e.complex, k).unwrap().rank(d as isize) == 0;
            let hi: usize = (0..=d).map(|j| f.get(j as isize) as usize - 1).sum();
            for i in (1usize << (d + 1)) - 2 - d..=hi {
                let ok = st.get(i, i + d) != 0 || (!top_zero && st.get(i, i + d + 1) != 0);
                ck.expect(ok, || format!("{}: row {i} empty in the predicted strand", who()));
            }
            if top_zero {
                ck.expect(lemma_fvec(&e.complex, k) == Ok(true), || format!("{}: f-vector inequality", who()));
            }
        }
    }
    for d in 1..=12 {
        ck.expect(lemma_no2(d) == Ok(true), || format!("quotient inequality at d = {d}"));
    }
    for n in 11..=40 {
        ck.expect(lemma_no3(n) == Ok(true), || format!("factorial bound at n = {n}"));
    }
    for n in 1..=40 {
        for k in 2..=20 {
            ck.expect(lemma_no4(n, k) == Ok(true), || format!("product inequality at n = {n}, k = {k}"));
        }
    }
    for d in 4..=12 {
        ck.expect(lemma_no5(d) == Ok(true), || format!("product inequality at d = {d}"));
    }
    ck
}

fn criterion_8(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        let c = &e.complex;
        ck.expect(e.sd.is_flag(), || format!("sd of {} is not flag", name(c)));
        if c.dim() <= 2 {
            let forest = c.dim() <= 1 && c.one_skeleton_is_forest();
            let golod = is_golod_sd(c).unwrap();
            ck.expect(golod == forest, || format!("{}: Golod {golod}, forest {forest}", name(c)));
        }
    }
    ck
}

/// `sum (-1)^i β_{i,j} t^j` against `(1 - t)^n Hilb(k[Δ], t)`.
fn k_polynomial_matches(c: &SimplicialComplex, t: &BettiTable) -> bool {
    let hilb = hilbert_series(c).unwrap();
    let rhs = hilb.numerator.mul(&IntPoly::one_minus_t().pow(c.n() - hilb.denom_exponent));
    IntPoly::new(t.k_polynomial()) == rhs
}

fn criterion_9(corpus: &[Entry]) -> Check {
    let mut ck = Check::default();
    for e in corpus {
        for (t, r) in e.tables.iter().zip(&e.reports) {
            ck.expect(k_polynomial_matches(&e.complex, t), || format!("{} over {}", name(&e.complex), t.field()));
            ck.expect(k_polynomial_matches(&e.sd, &r.table), || {
                format!("sd of {} over {}", name(&e.complex), t.field())
            });
        }
    }
    ck
}

fn rows(t: &BettiTable) -> BTreeMap<(usize, usize), u64> {
    t.rows().map(|(i, j, b)| ((i, j), b)).collect()
}

fn criterion_10() -> Check {
    let mut ck = Check::default();
    let fixtures = [
        ("C4", c4(), vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]),
        ("boundary of the 3-simplex", tetra_boundary(), vec![((0, 0), 1), ((1, 4), 1)]),
    ];
    for (label, c, expected) in fixtures {
        let expected: BTreeMap<_, _> = expected.into_iter().collect();
        let oracle = hochster_oracle(&Raw::of(&c), Q);
        let lib = rows(&hochster_betti(&c, Q, None).unwrap());
        ck.expect(oracle == expected, || format!("{label}: oracle gives {oracle:?}"));
        ck.expect(lib == expected, || format!("{label}: library gives {lib:?}"));
    }
    let p = rp2();
    let raw = Raw::of(&p);
    let mut tables = Vec::new();
    for k in FIELDS {
        let lib = rows(&hochster_betti(&p, k, None).unwrap());
        let oracle = hochster_oracle(&raw, k);
        ck.expect(lib == oracle, || format!("RP2 over {k}: library and oracle differ"));
        tables.push(lib);
    }
    ck.expect(tables[0] != tables[1], || "RP2 tables agree over Q and GF(2)".into());
    let at = |t: &BTreeMap<(usize, usize), u64>, key| t.get(&key).copied().unwrap_or(0);
    ck.expect(at(&tables[0], (4, 6)) == 0 && at(&tables[1], (4, 6)) == 1, || "RP2 β_{4,6}".into());
    ck.expect(at(&tables[0], (3, 6)) == 0 && at(&tables[1], (3, 6)) == 1, || "RP2 β_{3,6}".into());
    ck
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = build_corpus();
    let small = corpus.iter().filter(|e| e.complex.n() <= 4).count();
    println!(
        "corpus: {small} complexes on at most 4 vertices, {} sampled on 5 (seed {SAMPLE_SEED}), built in {:.1?}",
        corpus.len() - small,
        start.elapsed()
    );

    let criteria: [(&str, Check); 10] = [
        ("subdivision bounds and equality on Cohen-Macaulay instances", criterion_1(&corpus)),
        ("height and multiplicity closed forms", criterion_2(&corpus)),
        ("refined Eulerian transform of the Hilbert series", criterion_3(&corpus)),
        ("local cohomology series of the subdivision", criterion_4(&corpus)),
        ("depth invariance and projective dimension shift", criterion_5(&corpus)),
        ("regularity of the subdivision", criterion_6(&corpus)),
        ("Betti nonvanishing ranges and numeric inequalities", criterion_7(&corpus)),
        ("Golod iff forest, subdivisions are flag", criterion_8(&corpus)),
        ("Betti table against Hilbert series", criterion_9(&corpus)),
        ("fixture tables against the Smith form oracle", criterion_10()),
    ];
    let mut all = true;
    for (id, (title, ck)) in criteria.into_iter().enumerate() {
        all &= ck.report(id + 1, title);
    }
    println!("total time {:.1?}", start.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

