//! Permutation statistics and the integer kernels built on them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{HVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::reduced_homology;

/// Largest `n` for which tables are built by enumerating `S_n`.
pub const ENUMERATION_LIMIT: usize = 10;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Stirling number of the second kind, by `S(m,r) = r S(m-1,r) + S(m-1,r-1)`.
pub fn stirling2(m: usize, r: usize) -> Result<BigUint> {
    if r > m {
        return Err(Error::OutOfRange {
            what: format!("S({m},{r})"),
        });
    }
    let mut row = vec![BigUint::one()];
    for i in 1..=m {
        let mut next = vec![BigUint::zero(); i + 1];
        for k in 1..=i {
            let stay = if k < i { &row[k] * k } else { BigUint::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    Ok(row[r].clone())
}

/// `A(n, j, i)`: permutations of `[n]` with `σ(1) = i` and `j` descents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedEulerianTable {
    n: usize,
    /// `entries[j][i - 1]`.
    entries: Vec<Vec<BigUint>>,
}

impl RefinedEulerianTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `A(n, j, i)`, zero outside `0 <= j < n`, `1 <= i <= n`.
    pub fn get(&self, j: usize, i: usize) -> BigUint {
        if i == 0 {
            return BigUint::zero();
        }
        self.entries
            .get(j)
            .and_then(|r| r.get(i - 1))
            .cloned()
            .unwrap_or_default()
    }

    /// Classical Eulerian number `A(n, j)`.
    pub fn eulerian(&self, j: usize) -> BigUint {
        self.entries.get(j).map(|r| r.iter().sum()).unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.entries.iter().flatten().sum()
    }
}

fn count_descents(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Walks `S_n` (Heap's algorithm) and tallies `(des, σ(1))`.
pub fn refined_eulerian_by_enumeration(n: usize) -> RefinedEulerianTable {
    let mut counts = vec![vec![0u64; n]; n.max(1)];
    let mut p: Vec<usize> = (1..=n).collect();
    let mut c = vec![0usize; n];
    if n > 0 {
        counts[count_descents(&p)][p[0] - 1] += 1;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            counts[count_descents(&p)][p[0] - 1] += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    RefinedEulerianTable {
        n,
        entries: counts
            .into_iter()
            .map(|r| r.into_iter().map(BigUint::from).collect())
            .collect(),
    }
}

/// Removing `σ(1) = i` and standardising the rest leaves a permutation of
/// `[n-1]` starting at `i'`; position 1 is a descent iff `i' < i`. Hence
/// `A(n,j,i) = sum_{i'<i} A(n-1,j-1,i') + sum_{i'>=i} A(n-1,j,i')`.
pub fn refined_eulerian_by_recurrence(n: usize) -> RefinedEulerianTable {
    let mut entries = vec![vec![BigUint::one()]];
    for m in 2..=n {
        let prev = &entries;
        let mut next = vec![vec![BigUint::zero(); m]; m];
        for (j, row) in next.iter_mut().enumerate() {
            for i in 1..=m {
                let mut acc = BigUint::zero();
                if j > 0 {
                    for ip in 1..i {
                        acc += &prev[j - 1][ip - 1];
                    }
                }
                if j < m - 1 {
                    for ip in i..m {
                        acc += &prev[j][ip - 1];
                    }
                }
                row[i - 1] = acc;
            }
        }
        entries = next;
    }
    if n == 0 {
        entries = vec![Vec::new()];
    }
    RefinedEulerianTable { n, entries }
}

fn table_memo() -> &'static Mutex<HashMap<usize, Arc<RefinedEulerianTable>>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<RefinedEulerianTable>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The refined Eulerian table for `S_n`, memoised. Built by enumeration up
/// to [`ENUMERATION_LIMIT`] and by recurrence beyond.
pub fn refined_eulerian(n: usize) -> Result<Arc<RefinedEulerianTable>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "refined Eulerian table for n = 0".into(),
        });
    }
    if let Some(t) = table_memo().lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(if n <= ENUMERATION_LIMIT {
        refined_eulerian_by_enumeration(n)
    } else {
        refined_eulerian_by_recurrence(n)
    });
    table_memo().lock().unwrap().insert(n, t.clone());
    Ok(t)
}

/// `c_k = |{σ ∈ S_m : des(σ) = k}|` for `0 <= k < m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentPolynomial {
    pub m: usize,
    pub coefficients: Vec<BigUint>,
}

impl DescentPolynomial {
    pub fn coefficients_i64(&self) -> Vec<i64> {
        self.coefficients
            .iter()
            .map(|c| c.to_i64().expect("descent count fits i64"))
            .collect()
    }
}

/// Eulerian recurrence `A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)`.
pub fn descent_polynomial(m: usize) -> Result<DescentPolynomial> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "descent polynomial of S_0".into(),
        });
    }
    let mut row = vec![BigUint::one()];
    for n in 2..=m {
        let mut next = vec![BigUint::zero(); n];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < n - 1 {
                *slot += &row[k] * (k + 1);
            }
            if k > 0 {
                *slot += &row[k - 1] * (n - k);
            }
        }
        row = next;
    }
    Ok(DescentPolynomial {
        m,
        coefficients: row,
    })
}

/// h-vector of `sd(Δ)` from that of `Δ`:
/// `h'_j = sum_i h_i A(d+1, j, i+1)` where `d = dim Δ + 1` and `h` has
/// `d + 1` entries. The output has the same length.
pub fn sd_h_transform(h: &HVector, krull_dim: usize) -> Result<HVector> {
    let d = krull_dim;
    if h.0.len() != d + 1 {
        return Err(Error::LengthMismatch {
            expected: d + 1,
            got: h.0.len(),
        });
    }
    let table = refined_eulerian(d + 1)?;
    let out = (0..=d)
        .map(|j| {
            let s: BigInt = h
                .0
                .iter()
                .enumerate()
                .map(|(i, &hi)| BigInt::from(hi) * BigInt::from(table.get(j, i + 1)))
                .sum();
            s.to_i64().expect("h-vector entry fits i64")
        })
        .collect();
    Ok(HVector(out))
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn out_of_range(msg: String) -> Error {
    Error::OutOfStatedRange(msg)
}

/// For `d >= 1`:
/// `prod_{l=2}^{d+1} (2^{d+1} - l) / ((d+1)! prod_{m=2}^{d} (2^{m+1} - 3))`
/// is at least 1 when `d <= 3` and at least 2 when `d >= 4`.
pub fn lemma_no2(d: usize) -> Result<bool> {
    if d < 1 {
        return Err(out_of_range(format!("d = {d} < 1")));
    }
    let num: BigInt = (2..=d + 1).map(|l| pow2(d + 1) - l).product();
    let den: BigInt = BigInt::from(factorial(d + 1))
        * (2..=d).map(|m| pow2(m + 1) - 3).product::<BigInt>();
    let threshold = if d <= 3 { 1 } else { 2 };
    Ok(num >= den * threshold)
}

/// For `n >= 11`: `(n+1)! <= 2^(n^2/2 - 5n/2)`.
pub fn lemma_no3(n: usize) -> Result<bool> {
    if n < 11 {
        return Err(out_of_range(format!("n = {n} < 11")));
    }
    // n(n-5) is even, so the exponent is an integer.
    let exponent = n * (n - 5) / 2;
    Ok(BigInt::from(factorial(n + 1)) <= pow2(exponent))
}

/// For `n >= 1`, `k >= 2`:
/// `prod_{l=0}^{n-1} (2^{n+1} + 2k - 4 + l) >= (n+1)! k prod_{m=2}^{n} (2^{m+1} - 3)`.
pub fn lemma_no4(n: usize, k: usize) -> Result<bool> {
    if n < 1 || k < 2 {
        return Err(out_of_range(format!("(n, k) = ({n}, {k}) needs n >= 1, k >= 2")));
    }
    let num: BigInt = (0..n)
        .map(|l| pow2(n + 1) + BigInt::from(2 * k + l) - 4)
        .product();
    let den: BigInt = BigInt::from(factorial(n + 1))
        * BigInt::from(k)
        * (2..=n).map(|m| pow2(m + 1) - 3).product::<BigInt>();
    Ok(num >= den)
}

/// For `d >= 4`:
/// `d prod_{l=0}^{d-2} (2^{d+2} - d - 6 - l) >= (d+1)! prod_{l=2}^{d} (2^{l+1} - 3)`.
pub fn lemma_no5(d: usize) -> Result<bool> {
    if d < 4 {
        return Err(out_of_range(format!("d = {d} < 4")));
    }
    let lhs: BigInt = BigInt::from(d)
        * (0..=d - 2)
            .map(|l| pow2(d + 2) - BigInt::from(d + 6 + l))
            .product::<BigInt>();
    let rhs: BigInt = BigInt::from(factorial(d + 1))
        * (2..=d).map(|l| pow2(l + 1) - 3).product::<BigInt>();
    Ok(lhs >= rhs)
}

/// For a `d`-dimensional complex with `H̃_d(Δ; k) = 0`:
/// `f_{d-1} >= f_d + d`.
pub fn lemma_fvec(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if complex.is_void() {
        return Err(out_of_range("void complex".into()));
    }
    let d = complex.dim();
    if reduced_homology(complex, field)?.rank(d) != 0 {
        return Err(out_of_range(format!("top homology H̃_{d} is nonzero")));
    }
    let f = complex.f_vector();
    Ok(f.get(d - 1) as i128 >= f.get(d) as i128 + d as i128)
}
