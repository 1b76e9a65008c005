//! Complex documents: a schema-versioned TOML file holding a ground set and
//! a list of facets.
//!
//! ```toml
//! schema_version = "1"
//! name = "C4"
//! ground_set = ["1", "2", "3", "4"]
//! facets = [
//!   ["1", "2"],
//!   ["1", "4"],
//!   ["2", "3"],
//!   ["3", "4"],
//! ]
//! ```

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use srtool_core::SimplicialComplex;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub schema_version: String,
    #[serde(default)]
    pub name: Option<String>,
    pub ground_set: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

/// Numeric labels first, by value; then everything else lexicographically.
pub fn label_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

fn facet_order(a: &[String], b: &[String]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match label_order(x, y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// A TOML basic string.
fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn quoted_list(items: &[String]) -> String {
    let parts: Vec<String> = items.iter().map(|s| quote(s)).collect();
    format!("[{}]", parts.join(", "))
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: ComplexDocument = toml::from_str(text).context("malformed complex document")?;
        if doc.schema_version != SCHEMA_VERSION {
            bail!("unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)", doc.schema_version);
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        Ok(SimplicialComplex::from_facets(&self.ground_set, &self.facets)?)
    }

    /// The canonical document of `complex`: labels and facets sorted.
    pub fn from_complex(complex: &SimplicialComplex, name: Option<String>) -> Self {
        let mut ground_set = complex.labels().to_vec();
        ground_set.sort_by(|a, b| label_order(a, b));
        let facets = if complex.is_void() {
            Vec::new()
        } else {
            complex
                .facets()
                .iter()
                .map(|f| f.iter().map(|v| complex.label(v).to_string()).collect())
                .collect()
        };
        ComplexDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            name,
            ground_set,
            facets,
        }
        .canonical()
    }

    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        out.ground_set.sort_by(|a, b| label_order(a, b));
        for f in &mut out.facets {
            f.sort_by(|a, b| label_order(a, b));
            f.dedup();
        }
        out.facets.sort_by(|a, b| facet_order(a, b));
        out.facets.dedup();
        out
    }

    /// Canonical text, one facet per line.
    pub fn to_canonical_string(&self) -> String {
        let doc = self.canonical();
        let mut s = String::new();
        writeln!(s, "schema_version = {}", quote(&doc.schema_version)).unwrap();
        if let Some(name) = &doc.name {
            writeln!(s, "name = {}", quote(name)).unwrap();
        }
        writeln!(s, "ground_set = {}", quoted_list(&doc.ground_set)).unwrap();
        if doc.facets.is_empty() {
            s.push_str("facets = []\n");
        } else {
            s.push_str("facets = [\n");
            for f in &doc.facets {
                writeln!(s, "  {},", quoted_list(f)).unwrap();
            }
            s.push_str("]\n");
        }
        s
    }
}
