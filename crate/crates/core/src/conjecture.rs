//! Multiplicity Conjecture checks for `k[Δ]` and `k[sd Δ]`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::betti::{self, BettiTable, ShiftProfile, SweepOptions};
use crate::combinatorics::factorial;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::field::FieldSpec;
use crate::invariants::{depth, height_and_multiplicity};

/// A subset `W` with `H̃_{j-i-1}(Δ_W) != 0`, certifying `β_{i,j} != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub subset: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    /// Facets of the complex whose ring is examined.
    pub subject: String,
    pub subdivided: bool,
    pub field: FieldSpec,
    pub multiplicity: u64,
    pub height: usize,
    /// `(1/h!) prod_{i<=h} M_i`.
    pub upper_product: BigRational,
    pub upper_holds: bool,
    pub equality_upper: bool,
    pub is_cohen_macaulay: bool,
    /// `(1/h!) prod_{i<=h} m_i`; `None` when not Cohen-Macaulay.
    pub lower_product: Option<BigRational>,
    pub lower_holds: Option<bool>,
    pub equality_lower: Option<bool>,
    pub is_pure: bool,
    pub shift_profile: ShiftProfile,
    /// Witnesses for `m_h` and `M_h` (absent when `h = 0`).
    pub min_witness: Option<Witness>,
    pub max_witness: Option<Witness>,
    pub table: BettiTable,
}

fn product_over_factorial(shifts: &[usize]) -> BigRational {
    let num: BigInt = shifts.iter().map(|&s| BigInt::from(s)).product();
    BigRational::new(num, BigInt::from(factorial(shifts.len())))
}

fn witness(complex: &SimplicialComplex, field: FieldSpec, i: usize, j: usize) -> Result<Witness> {
    let w = betti::betti_witness(complex, field, i, j)?.ok_or_else(|| {
        Error::ConsistencyViolation(format!("no witness for nonzero β_{{{i},{j}}}"))
    })?;
    Ok(Witness {
        i,
        j,
        subset: w.iter().map(|v| complex.label(v).to_string()).collect(),
    })
}

fn report_from_table(
    complex: &SimplicialComplex,
    table: BettiTable,
    subdivided: bool,
) -> Result<ConjectureReport> {
    let field = table.field();
    let (height, multiplicity) = height_and_multiplicity(complex)?;
    let profile = betti::shifts(&table, height)?;
    let depth = depth(complex, field)?;
    let pdim = profile.pdim();
    if pdim + depth != complex.n() {
        return Err(Error::ConsistencyViolation(format!(
            "pdim {pdim} from the Betti table but depth {depth} from links, with f_0 = {}",
            complex.n()
        )));
    }
    let is_cm = depth as isize == complex.dim() + 1;
    let is_pure = profile.min_shifts == profile.max_shifts;
    let (mins, maxs) = profile.prefix();
    let e = BigRational::from_integer(multiplicity.into());
    let upper_product = product_over_factorial(maxs);
    let lower_product = is_cm.then(|| product_over_factorial(mins));
    let (min_witness, max_witness) = if height == 0 {
        (None, None)
    } else {
        (
            Some(witness(complex, field, height, mins[height - 1])?),
            Some(witness(complex, field, height, maxs[height - 1])?),
        )
    };
    let report = ConjectureReport {
        subject: complex.render_facets(),
        subdivided,
        field,
        multiplicity,
        height,
        upper_holds: e <= upper_product,
        equality_upper: e == upper_product,
        upper_product,
        is_cohen_macaulay: is_cm,
        lower_holds: lower_product.as_ref().map(|l| &e >= l),
        equality_lower: lower_product.as_ref().map(|l| &e == l),
        lower_product,
        is_pure,
        shift_profile: profile,
        min_witness,
        max_witness,
        table,
    };
    if is_cm && is_pure && !(report.equality_upper && report.equality_lower == Some(true)) {
        return Err(Error::ConsistencyViolation(format!(
            "pure Cohen-Macaulay resolution without equality for {}",
            report.subject
        )));
    }
    Ok(report)
}

/// Checks the bounds for `k[Δ]` itself.
pub fn verify(complex: &SimplicialComplex, field: FieldSpec, opts: &SweepOptions) -> Result<ConjectureReport> {
    Ok(verify_multi(complex, &[field], opts)?.pop().unwrap())
}

/// [`verify`] for several fields sharing one subset sweep.
pub fn verify_multi(
    complex: &SimplicialComplex,
    fields: &[FieldSpec],
    opts: &SweepOptions,
) -> Result<Vec<ConjectureReport>> {
    let opts = SweepOptions { cap: None, ..*opts };
    betti::hochster_betti_multi(complex, fields, &opts)?
        .into_iter()
        .map(|t| report_from_table(complex, t, false))
        .collect()
}

/// Checks the bounds for `k[sd Δ]`, cross-checking `e` and `h` against
/// `(dim Δ + 1)! f_{dim Δ}` and `sum_l (f_l - 1)`.
pub fn verify_subdivision_theorem(
    complex: &SimplicialComplex,
    field: FieldSpec,
    opts: &SweepOptions,
) -> Result<ConjectureReport> {
    Ok(verify_subdivision_theorem_multi(complex, &[field], opts)?.pop().unwrap())
}

pub fn verify_subdivision_theorem_multi(
    complex: &SimplicialComplex,
    fields: &[FieldSpec],
    opts: &SweepOptions,
) -> Result<Vec<ConjectureReport>> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    let sd = complex.barycentric_subdivision();
    let mut reports = verify_multi(&sd, fields, opts)?;
    let d = complex.dim();
    let f = complex.f_vector();
    let e = factorial((d + 1) as usize) * f.get(d);
    let h: u64 = (0..=d).map(|l| f.get(l) - 1).sum();
    for r in &mut reports {
        if BigInt::from(r.multiplicity) != BigInt::from(e.clone()) || r.height as u64 != h {
            return Err(Error::ConsistencyViolation(format!(
                "sd of {}: (e, h) = ({}, {}) but closed forms give ({e}, {h})",
                complex.render_facets(),
                r.multiplicity,
                r.height
            )));
        }
        r.subdivided = true;
    }
    Ok(reports)
}

/// Where `Δ` sits in the analysis of equality for `k[sd Δ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqualityCase {
    /// `sd Δ = Δ` is a set of points; the resolution is linear.
    ZeroDimensional,
    /// A tree: pure, with `M_i = i + 1` up to the last step.
    Tree,
    /// A single cycle through every vertex and edge.
    Polygon,
    /// A connected graph that is neither a tree nor a polygon.
    OtherConnectedGraph,
    /// A disconnected graph with an edge, not Cohen-Macaulay.
    DisconnectedGraph,
    /// The full 2-simplex.
    TwoSimplex,
    /// Two triangles `{a,b,c}`, `{a,b,d}` sharing an edge. In `sd Δ` the
    /// vertices `{a},{a,b,c},{b},{a,b,d}` span a 4-cycle (`β_{2,4} != 0`)
    /// and `{a},{b},{c}` are three isolated points (`β_{2,3} != 0`).
    SharedEdge {
        four_cycle: Vec<String>,
        three_points: Vec<String>,
    },
    /// Dimension at least 2 without two triangles sharing an edge.
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityAnalysis {
    pub case: EqualityCase,
    /// Purity the case predicts, if any.
    pub expected_pure: Option<bool>,
    pub report: ConjectureReport,
    /// The computed table agrees with the case: purity matches the
    /// prediction, and for [`EqualityCase::SharedEdge`] both Betti numbers
    /// and both witnesses are confirmed.
    pub confirmed: bool,
}

fn classify(complex: &SimplicialComplex) -> EqualityCase {
    match complex.dim() {
        d if d <= 0 => EqualityCase::ZeroDimensional,
        1 => {
            let adj = complex.one_skeleton();
            let connected = is_connected(&adj);
            let (v, e) = (complex.n(), complex.faces_of_dim(1).len());
            if !connected {
                EqualityCase::DisconnectedGraph
            } else if e + 1 == v {
                EqualityCase::Tree
            } else if e == v && adj.iter().all(|a| a.len() == 2) {
                EqualityCase::Polygon
            } else {
                EqualityCase::OtherConnectedGraph
            }
        }
        _ => {
            if complex.n() == 3 && complex.facets().len() == 1 {
                return EqualityCase::TwoSimplex;
            }
            let triangles = complex.faces_of_dim(2);
            for (x, s) in triangles.iter().enumerate() {
                for t in &triangles[x + 1..] {
                    let edge = s.intersection(t);
                    if edge.len() != 2 {
                        continue;
                    }
                    let mut ab = edge.iter();
                    let (a, b) = (ab.next().unwrap(), ab.next().unwrap());
                    let c = s.difference(&edge).iter().next().unwrap();
                    let r = |f: &Face| complex.render_face(f);
                    return EqualityCase::SharedEdge {
                        four_cycle: vec![r(&Face::singleton(a)), r(s), r(&Face::singleton(b)), r(t)],
                        three_points: vec![
                            r(&Face::singleton(a)),
                            r(&Face::singleton(b)),
                            r(&Face::singleton(c)),
                        ],
                    };
                }
            }
            EqualityCase::Other
        }
    }
}

fn is_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Classifies `Δ` and checks the prediction against the Betti table of
/// `k[sd Δ]`.
pub fn equality_analysis(
    complex: &SimplicialComplex,
    field: FieldSpec,
    opts: &SweepOptions,
) -> Result<EqualityAnalysis> {
    let report = verify_subdivision_theorem(complex, field, opts)?;
    let case = classify(complex);
    let expected_pure = match case {
        EqualityCase::ZeroDimensional
        | EqualityCase::Tree
        | EqualityCase::Polygon
        | EqualityCase::TwoSimplex => Some(true),
        EqualityCase::OtherConnectedGraph | EqualityCase::SharedEdge { .. } => Some(false),
        EqualityCase::DisconnectedGraph | EqualityCase::Other => None,
    };
    let mut confirmed = expected_pure.is_none_or(|p| p == report.is_pure);
    if let EqualityCase::SharedEdge {
        four_cycle,
        three_points,
    } = &case
    {
        let sd = complex.barycentric_subdivision();
        let ranks = |labels: &[String], degree: isize| -> Result<usize> {
            let w: Face = labels.iter().map(|l| sd.index_of(l).unwrap()).collect();
            Ok(crate::homology::reduced_homology(&sd.restriction(&w)?, field)?.rank(degree))
        };
        confirmed &= ranks(four_cycle, 1)? != 0
            && ranks(three_points, 0)? != 0
            && report.table.get(2, 4) != 0
            && report.table.get(2, 3) != 0
            && !report.equality_upper;
    }
    Ok(EqualityAnalysis {
        case,
        expected_pure,
        report,
        confirmed,
    })
}
