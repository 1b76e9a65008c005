//! Exact rational functions in `t` whose denominator is a power of `1 - t`
//! or `t - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, `coeffs[k]` multiplies `t^k`. No trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = IntPoly(coeffs.into_iter().map(Into::into).collect());
        p.trim();
        p
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new([c.into()])
    }

    /// `t - 1`.
    pub fn t_minus_one() -> Self {
        IntPoly::new([-1, 1])
    }

    /// `1 - t`.
    pub fn one_minus_t() -> Self {
        IntPoly::new([1, -1])
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)))
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.0.iter().map(|a| a * c))
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::constant(1), |acc, _| acc.mul(self))
    }

    /// Quotient by `t - 1` when the division is exact.
    pub fn div_t_minus_one(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if !self.eval_at_one().is_zero() {
            return None;
        }
        // Synthetic division from the top coefficient down.
        let d = self.0.len() - 1;
        let mut q = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for k in (1..=d).rev() {
            carry += &self.0[k];
            q[k - 1] = carry.clone();
        }
        Some(IntPoly::new(q))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenominatorBase {
    /// `1 - t`
    OneMinusT,
    /// `t - 1`
    TMinusOne,
}

/// `constant_offset + numerator / base^denom_exponent`.
#[derive(Debug, Clone)]
pub struct RationalSeries {
    pub numerator: IntPoly,
    pub denom_base: DenominatorBase,
    pub denom_exponent: usize,
    pub constant_offset: BigInt,
}

impl RationalSeries {
    pub fn new(numerator: IntPoly, denom_base: DenominatorBase, denom_exponent: usize) -> Self {
        RationalSeries {
            numerator,
            denom_base,
            denom_exponent,
            constant_offset: BigInt::zero(),
        }
    }

    pub fn with_offset(mut self, c: impl Into<BigInt>) -> Self {
        self.constant_offset = c.into();
        self
    }

    /// `sum_m terms[m] / (t - 1)^m`, with `terms[0]` a polynomial part. A
    /// constant `terms[0]` becomes the offset.
    pub fn from_t_minus_one_terms(terms: &[IntPoly]) -> Self {
        let d = terms.len().saturating_sub(1);
        let tm1 = IntPoly::t_minus_one();
        let mut num = IntPoly::zero();
        let mut offset = BigInt::zero();
        for (m, p) in terms.iter().enumerate() {
            if m == 0 && p.degree().unwrap_or(0) == 0 {
                offset = p.coeff(0);
                continue;
            }
            num = num.add(&p.mul(&tm1.pow(d - m)));
        }
        RationalSeries {
            numerator: num,
            denom_base: DenominatorBase::TMinusOne,
            denom_exponent: d,
            constant_offset: offset,
        }
    }

    /// The same function as a single fraction `N / (1 - t)^e`.
    pub fn to_one_minus_t(&self) -> (IntPoly, usize) {
        let e = self.denom_exponent;
        let sign = match self.denom_base {
            DenominatorBase::TMinusOne if e % 2 == 1 => BigInt::from(-1),
            _ => BigInt::one(),
        };
        let num = self
            .numerator
            .scale(&sign)
            .add(&IntPoly::one_minus_t().pow(e).scale(&self.constant_offset));
        (num, e)
    }

    /// Cancels common factors of the base between numerator and
    /// denominator, keeping the base and the offset.
    pub fn normalized(&self) -> RationalSeries {
        let mut out = self.clone();
        while out.denom_exponent > 0 {
            let Some(q) = out.numerator.div_t_minus_one() else { break };
            out.numerator = match out.denom_base {
                DenominatorBase::TMinusOne => q,
                DenominatorBase::OneMinusT => q.neg(),
            };
            out.denom_exponent -= 1;
        }
        out
    }

    /// Numerator at `t = 1` of the single-fraction form over `(1 - t)^e`,
    /// after cancellation. For a Hilbert series this is the multiplicity.
    pub fn degree_at_one(&self) -> BigInt {
        let (n, e) = self.to_one_minus_t();
        RationalSeries::new(n, DenominatorBase::OneMinusT, e)
            .normalized()
            .numerator
            .eval_at_one()
    }

    /// Order of the pole at `t = 1`.
    pub fn pole_order(&self) -> usize {
        let (n, e) = self.to_one_minus_t();
        RationalSeries::new(n, DenominatorBase::OneMinusT, e)
            .normalized()
            .denom_exponent
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let (a, ea) = self.to_one_minus_t();
        let (b, eb) = other.to_one_minus_t();
        let e = ea.max(eb);
        let u = IntPoly::one_minus_t();
        let num = a.mul(&u.pow(e - ea)).add(&b.mul(&u.pow(e - eb)));
        RationalSeries::new(num, DenominatorBase::OneMinusT, e)
    }

    /// First `count` coefficients of the power series at `t = 0`.
    pub fn expand(&self, count: usize) -> Vec<BigInt> {
        let (n, e) = self.to_one_minus_t();
        // 1 / (1 - t)^e = sum_k C(k + e - 1, e - 1) t^k
        let mut inv = vec![BigInt::zero(); count];
        for (k, slot) in inv.iter_mut().enumerate() {
            *slot = if e == 0 {
                BigInt::from((k == 0) as u8)
            } else {
                BigInt::from(crate::combinatorics::binomial(k + e - 1, e - 1))
            };
        }
        (0..count)
            .map(|k| (0..=k).map(|a| n.coeff(a) * &inv[k - a]).sum())
            .collect()
    }
}

/// Equality of rational functions, by cross-multiplication.
impl PartialEq for RationalSeries {
    fn eq(&self, other: &Self) -> bool {
        let (a, ea) = self.to_one_minus_t();
        let (b, eb) = other.to_one_minus_t();
        let u = IntPoly::one_minus_t();
        a.mul(&u.pow(eb)) == b.mul(&u.pow(ea))
    }
}

impl Eq for RationalSeries {}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.constant_offset.is_zero() {
            write!(f, "{} + ", self.constant_offset)?;
        }
        let base = match self.denom_base {
            DenominatorBase::OneMinusT => "(1 - t)",
            DenominatorBase::TMinusOne => "(t - 1)",
        };
        let num = if self.numerator.0.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", self.numerator)
        } else {
            self.numerator.to_string()
        };
        match self.denom_exponent {
            0 => write!(f, "{num}"),
            1 => write!(f, "{num}/{base}"),
            e => write!(f, "{num}/{base}^{e}"),
        }
    }
}
