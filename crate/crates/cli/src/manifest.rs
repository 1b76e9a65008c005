//! Sweep manifests and budget parsing.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use srtool_core::betti::DEFAULT_BUDGET;
use srtool_core::FieldSpec;

/// Environment variable overriding the subset budget.
pub const BUDGET_ENV: &str = "SRTOOL_BUDGET";

/// Named property suites a sweep can run.
pub const ALL_CHECKS: &[&str] = &[
    "theorem",
    "closed-forms",
    "hilbert",
    "local-cohomology",
    "depth",
    "regularity",
    "cohen-macaulay",
    "nonvanishing",
    "golod",
    "k-polynomial",
];

/// Either an integer or `"2^k"`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum BudgetSpec {
    Count(u64),
    Text(String),
}

impl BudgetSpec {
    pub fn value(&self) -> Result<u128> {
        match self {
            BudgetSpec::Count(n) => Ok(*n as u128),
            BudgetSpec::Text(s) => parse_budget(s),
        }
    }
}

pub fn parse_budget(s: &str) -> Result<u128> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("2^") {
        let k: u32 = exp.trim().parse().with_context(|| format!("bad budget exponent in `{s}`"))?;
        if k > 120 {
            bail!("budget 2^{k} is too large");
        }
        return Ok(1u128 << k);
    }
    s.parse().with_context(|| format!("bad budget `{s}`"))
}

/// `SRTOOL_BUDGET` if set, else `fallback`, else the library default.
pub fn resolve_budget(fallback: Option<u128>) -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => parse_budget(&s).with_context(|| format!("reading {BUDGET_ENV}")),
        Err(_) => Ok(fallback.unwrap_or(DEFAULT_BUDGET)),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepManifest {
    /// Complexes on `1..=max_vertices` labels.
    pub max_vertices: usize,
    /// Skip complexes with more facets than this.
    #[serde(default)]
    pub max_facets: Option<usize>,
    #[serde(default = "default_fields")]
    pub fields: Vec<String>,
    #[serde(default)]
    pub budget: Option<BudgetSpec>,
    /// Seed for the sampled sizes; size `n` uses `seed + n`.
    #[serde(default)]
    pub seed: u64,
    /// Complexes drawn per sampled size.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Largest size enumerated exhaustively; larger sizes are sampled.
    #[serde(default = "default_exhaustive")]
    pub exhaustive_up_to: usize,
    /// Sampled complexes keep at most this many subdivision vertices.
    #[serde(default = "default_max_sd")]
    pub max_sd_vertices: usize,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
}

fn default_fields() -> Vec<String> {
    vec!["Q".into(), "GF(2)".into()]
}

fn default_samples() -> usize {
    50
}

fn default_exhaustive() -> usize {
    4
}

fn default_max_sd() -> usize {
    20
}

fn default_checks() -> Vec<String> {
    ALL_CHECKS.iter().map(|s| s.to_string()).collect()
}

impl SweepManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let m: SweepManifest = toml::from_str(text).context("malformed sweep manifest")?;
        if m.max_vertices == 0 || m.max_vertices > 6 {
            bail!("max_vertices must be between 1 and 6, got {}", m.max_vertices);
        }
        if m.exhaustive_up_to > srtool_core::corpus::EXHAUSTIVE_LIMIT {
            bail!(
                "exhaustive_up_to must be at most {}, got {}",
                srtool_core::corpus::EXHAUSTIVE_LIMIT,
                m.exhaustive_up_to
            );
        }
        for c in &m.checks {
            if !ALL_CHECKS.contains(&c.as_str()) {
                bail!("unknown check `{c}` (known: {})", ALL_CHECKS.join(", "));
            }
        }
        m.field_specs()?;
        Ok(m)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn field_specs(&self) -> Result<Vec<FieldSpec>> {
        if self.fields.is_empty() {
            bail!("manifest lists no fields");
        }
        self.fields
            .iter()
            .map(|f| {
                let k: FieldSpec = f.parse()?;
                k.validate()?;
                Ok(k)
            })
            .collect()
    }

    pub fn budget(&self) -> Result<u128> {
        resolve_budget(self.budget.as_ref().map(BudgetSpec::value).transpose()?)
    }

    pub fn runs(&self, check: &str) -> bool {
        self.checks.iter().any(|c| c == check)
    }
}
