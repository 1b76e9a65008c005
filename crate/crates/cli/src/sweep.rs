//! Corpus sweeps: enumerate or sample complexes, run the named property
//! suites on each, and collect failures with the offending document.

use std::collections::BTreeMap;

use anyhow::Result;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use srtool_core::betti::{hochster_betti_multi, pdim_from_table, reg_from_table};
use srtool_core::combinatorics::factorial;
use srtool_core::conjecture::verify_subdivision_theorem_multi;
use srtool_core::homology::reduced_homology;
use srtool_core::invariants::*;
use srtool_core::{corpus, BettiTable, ConjectureReport, Error, FieldSpec, IntPoly, SimplicialComplex, SweepOptions};

use crate::document::ComplexDocument;
use crate::manifest::SweepManifest;
use crate::render::conjecture_json;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub check: String,
    pub field: Option<String>,
    pub message: String,
    /// Canonical document of the complex, for replay.
    pub document: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub passed: bool,
    /// Complexes checked, by number of vertices.
    pub complexes_by_size: BTreeMap<usize, usize>,
    pub skipped: usize,
    pub checks: Vec<String>,
    pub fields: Vec<String>,
    pub budget: String,
    pub budget_exceeded: usize,
    pub failures: Vec<Failure>,
    /// One entry per complex and field.
    pub reports: Vec<Value>,
}

impl SweepResult {
    pub fn total(&self) -> usize {
        self.complexes_by_size.values().sum()
    }

    pub fn exit_code(&self) -> u8 {
        if !self.failures.iter().all(|f| f.check == "budget") {
            1
        } else if self.budget_exceeded > 0 {
            3
        } else {
            0
        }
    }

    pub fn summary_text(&self) -> String {
        let sizes: Vec<String> = self.complexes_by_size.iter().map(|(n, c)| format!("{c} on {n}")).collect();
        let mut s = format!(
            "complexes: {} ({}), skipped: {}\nfields: {}\nchecks: {}\nbudget: {}\n",
            self.total(),
            sizes.join(", "),
            self.skipped,
            self.fields.join(", "),
            self.checks.join(", "),
            self.budget
        );
        for f in &self.failures {
            let field = f.field.as_deref().map(|k| format!(" over {k}")).unwrap_or_default();
            s.push_str(&format!("FAIL {}{field}: {}\n{}", f.check, f.message, f.document));
        }
        s.push_str(if self.passed { "result: pass\n" } else { "result: FAIL\n" });
        s
    }
}

struct Outcome {
    failures: Vec<Failure>,
    reports: Vec<Value>,
    budget_exceeded: bool,
}

pub fn corpus_for(m: &SweepManifest) -> Result<Vec<SimplicialComplex>> {
    let mut out = Vec::new();
    for n in 1..=m.max_vertices {
        if n <= m.exhaustive_up_to {
            out.extend(corpus::exhaustive(n)?);
        } else {
            out.extend(corpus::sample(n, m.samples, m.seed.wrapping_add(n as u64), m.max_sd_vertices)?);
        }
    }
    Ok(out)
}

pub fn run_sweep(m: &SweepManifest) -> Result<SweepResult> {
    let fields = m.field_specs()?;
    let budget = m.budget()?;
    let opts = SweepOptions { cap: None, budget };
    let (kept, skipped): (Vec<_>, Vec<_>) = corpus_for(m)?
        .into_iter()
        .partition(|c| m.max_facets.is_none_or(|k| c.facets().len() <= k));
    let outcomes: Vec<Outcome> = kept.par_iter().map(|c| check_complex(c, &fields, &opts, m)).collect();

    let mut complexes_by_size = BTreeMap::new();
    for c in &kept {
        *complexes_by_size.entry(c.n()).or_insert(0) += 1;
    }
    let mut result = SweepResult {
        passed: true,
        complexes_by_size,
        skipped: skipped.len(),
        checks: m.checks.clone(),
        fields: fields.iter().map(ToString::to_string).collect(),
        budget: budget.to_string(),
        budget_exceeded: 0,
        failures: Vec::new(),
        reports: Vec::new(),
    };
    for o in outcomes {
        result.budget_exceeded += o.budget_exceeded as usize;
        result.failures.extend(o.failures);
        result.reports.extend(o.reports);
    }
    result.passed = result.failures.is_empty();
    Ok(result)
}

struct Ctx<'a> {
    complex: &'a SimplicialComplex,
    document: String,
    failures: Vec<Failure>,
}

impl Ctx<'_> {
    fn expect(&mut self, ok: bool, check: &str, field: Option<FieldSpec>, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                field: field.map(|k| k.to_string()),
                message: message(),
                document: self.document.clone(),
            });
        }
    }
}

fn check_complex(c: &SimplicialComplex, fields: &[FieldSpec], opts: &SweepOptions, m: &SweepManifest) -> Outcome {
    let mut ctx = Ctx {
        complex: c,
        document: ComplexDocument::from_complex(c, None).to_canonical_string(),
        failures: Vec::new(),
    };
    let computed = hochster_betti_multi(c, fields, opts)
        .and_then(|t| Ok((t, verify_subdivision_theorem_multi(c, fields, opts)?)));
    let (tables, reports) = match computed {
        Ok(x) => x,
        Err(e @ Error::BudgetExceeded { .. }) => {
            ctx.expect(false, "budget", None, || e.to_string());
            return Outcome {
                failures: ctx.failures,
                reports: Vec::new(),
                budget_exceeded: true,
            };
        }
        Err(e) => {
            ctx.expect(false, "theorem", None, || e.to_string());
            return Outcome {
                failures: ctx.failures,
                reports: Vec::new(),
                budget_exceeded: false,
            };
        }
    };
    let sd = c.barycentric_subdivision();
    for (t, r) in tables.iter().zip(&reports) {
        run_checks(&mut ctx, &sd, t, r, m);
    }
    if m.runs("hilbert") {
        let ok = hilbert_series_sd(c).ok() == hilbert_series(&sd).ok();
        ctx.expect(ok, "hilbert", None, || "transformed and direct Hilbert series differ".into());
    }
    if m.runs("golod") {
        ctx.expect(sd.is_flag(), "golod", None, || "subdivision is not flag".into());
        if c.dim() <= 2 {
            let forest = c.dim() <= 1 && c.one_skeleton_is_forest();
            let golod = is_golod_sd(c).unwrap_or(!forest);
            ctx.expect(golod == forest, "golod", None, || format!("chordality {golod}, forest {forest}"));
        }
    }
    if m.runs("closed-forms") {
        let f = c.f_vector();
        let d = c.dim();
        let h: u64 = (0..=d).map(|l| f.get(l) - 1).sum();
        let e = factorial((d + 1) as usize) * f.get(d);
        let hilb = hilbert_series(&sd);
        let ok = hilb.is_ok_and(|s| {
            (sd.n() - s.pole_order()) as u64 == h && s.degree_at_one() == BigInt::from(e.clone())
        });
        ctx.expect(ok, "closed-forms", None, || format!("Hilbert series disagrees with (h, e) = ({h}, {e})"));
    }
    Outcome {
        failures: ctx.failures,
        reports: reports.iter().map(conjecture_json).collect(),
        budget_exceeded: false,
    }
}

fn k_polynomial_matches(c: &SimplicialComplex, t: &BettiTable) -> bool {
    let Ok(hilb) = hilbert_series(c) else { return false };
    let rhs = hilb.numerator.mul(&IntPoly::one_minus_t().pow(c.n() - hilb.denom_exponent));
    IntPoly::new(t.k_polynomial()) == rhs
}

fn run_checks(ctx: &mut Ctx, sd: &SimplicialComplex, t: &BettiTable, r: &ConjectureReport, m: &SweepManifest) {
    let c = ctx.complex;
    let k = t.field();
    let st = &r.table;
    let dim = c.dim();
    let f = c.f_vector();
    let top = reduced_homology(c, k).map(|h| h.rank(dim)).unwrap_or(0);

    if m.runs("theorem") {
        ctx.expect(r.upper_holds, "theorem", Some(k), || {
            format!("e = {} exceeds upper product {}", r.multiplicity, r.upper_product)
        });
        if r.is_cohen_macaulay {
            ctx.expect(r.lower_holds == Some(true), "theorem", Some(k), || {
                format!("e = {} below lower product {}", r.multiplicity, r.lower_product.clone().unwrap())
            });
            let equality = r.equality_upper && r.equality_lower == Some(true);
            ctx.expect(equality == r.is_pure, "theorem", Some(k), || {
                format!("equality {equality} but purity {}", r.is_pure)
            });
        }
    }
    if m.runs("local-cohomology") {
        for i in 0..=(dim + 1) as usize {
            let ok = local_cohomology_series_sd(c, k, i).ok() == local_cohomology_series(sd, k, i).ok();
            ctx.expect(ok, "local-cohomology", Some(k), || format!("series differ in degree {i}"));
        }
    }
    if m.runs("depth") {
        let (d, d_sd) = (depth(c, k).ok(), depth(sd, k).ok());
        ctx.expect(d.is_some() && d == d_sd, "depth", Some(k), || format!("depth {d:?} vs {d_sd:?}"));
        let tail: u64 = (1..=dim).map(|i| f.get(i)).sum();
        let (p, p_sd) = (pdim_from_table(t).ok(), pdim_from_table(st).ok());
        let ok = matches!((p, p_sd), (Some(p), Some(q)) if q as u64 == p as u64 + tail);
        ctx.expect(ok, "depth", Some(k), || format!("pdim {p:?}, pdim sd {p_sd:?}, sum f_i {tail}"));
    }
    if m.runs("cohen-macaulay") {
        let (a, b) = (is_cohen_macaulay(c, k).ok(), is_cohen_macaulay(sd, k).ok());
        ctx.expect(a.is_some() && a == b, "cohen-macaulay", Some(k), || format!("{a:?} vs {b:?}"));
    }
    if m.runs("regularity") {
        let reg = regularity(c, k).ok();
        let reg_sd = regularity(sd, k).ok();
        let expected = if top == 0 { dim } else { dim + 1 };
        ctx.expect(reg_sd.map(|x| x as isize) == Some(expected), "regularity", Some(k), || {
            format!("reg sd {reg_sd:?}, expected {expected}")
        });
        ctx.expect(reg <= reg_sd, "regularity", Some(k), || format!("reg {reg:?} > reg sd {reg_sd:?}"));
        if top != 0 {
            ctx.expect(reg.map(|x| x as isize) == Some(dim + 1), "regularity", Some(k), || {
                format!("reg {reg:?} despite top homology")
            });
        }
        ctx.expect(reg_from_table(t).ok() == reg && reg_from_table(st).ok() == reg_sd, "regularity", Some(k), || {
            "table and link computations disagree".into()
        });
    }
    if m.runs("nonvanishing") {
        let d = dim as usize;
        for mm in 2..d {
            for i in (1 << (mm + 1)) - 2 - mm..(1 << (mm + 2)) - 2 - (mm + 1) {
                ctx.expect(st.get(i, i + mm) != 0, "nonvanishing", Some(k), || {
                    format!("beta_{{{i},{}}} of sd vanishes", i + mm)
                });
            }
        }
        if d > 1 {
            ctx.expect(pdim_from_table(st).is_ok_and(|p| p >= 4), "nonvanishing", Some(k), || {
                "pdim of sd below 4".into()
            });
        }
        let hi: usize = (0..=d).map(|j| f.get(j as isize) as usize - 1).sum();
        for i in (1usize << (d + 1)) - 2 - d..=hi {
            let ok = st.get(i, i + d) != 0 || (top != 0 && st.get(i, i + d + 1) != 0);
            ctx.expect(ok, "nonvanishing", Some(k), || format!("row {i} of sd empty in the predicted strand"));
        }
    }
    if m.runs("k-polynomial") {
        ctx.expect(k_polynomial_matches(c, t), "k-polynomial", Some(k), || "Betti table of the complex".into());
        ctx.expect(k_polynomial_matches(sd, st), "k-polynomial", Some(k), || "Betti table of sd".into());
    }
}
