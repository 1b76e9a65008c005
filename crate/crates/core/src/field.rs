use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// GF(p), rejecting composite `p`.
    pub fn prime(p: u64) -> Result<Self> {
        let f = FieldSpec::PrimeField(p);
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) if is_prime(p) => Ok(()),
            FieldSpec::PrimeField(p) => Err(Error::NonPrimeModulus(p)),
        }
    }

    /// 0 for ℚ, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// Accepts `q`, `Q`, `QQ`, `0` for the rationals, and `p`, `GF(p)`, `gf(p)` for
/// a prime field.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "q" | "Q" | "QQ" | "0") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("GF(")
            .or_else(|| s.strip_prefix("gf("))
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let p: u64 = digits.parse().map_err(|_| Error::OutOfRange {
            what: format!("field `{s}`"),
        })?;
        FieldSpec::prime(p)
    }
}
