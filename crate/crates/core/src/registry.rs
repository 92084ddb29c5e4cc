//! A small label -> curve table. One entry per line, `label:a1,a2,a3,a4,a6`;
//! blank lines and lines starting with `#` are skipped.

use std::path::Path;

use num_bigint::BigInt;

use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../data/curves.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRegistryEntry {
    pub label: String,
    pub curve: WeierstrassCurve,
}

#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: Vec<CurveRegistryEntry>,
}

/// Parses `a1,a2,a3,a4,a6` into a nonsingular curve.
pub fn parse_a_invariants(s: &str) -> Result<WeierstrassCurve> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(Error::BadCurveSpec(s.to_string()));
    }
    let mut a: [BigInt; 5] = Default::default();
    for (slot, part) in a.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| Error::BadCurveSpec(s.to_string()))?;
    }
    WeierstrassCurve::new(a)
}

impl Registry {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<CurveRegistryEntry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Registry { line: i + 1, message };
            let (label, coeffs) = line.split_once(':').ok_or_else(|| err("missing ':'".into()))?;
            let label = label.trim();
            if label.is_empty() {
                return Err(err("empty label".into()));
            }
            if entries.iter().any(|e| e.label == label) {
                return Err(err(format!("duplicate label {label:?}")));
            }
            let curve = parse_a_invariants(coeffs).map_err(|e| err(e.to_string()))?;
            entries.push(CurveRegistryEntry { label: label.to_string(), curve });
        }
        Ok(Registry { entries })
    }

    /// The table shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled registry is well formed")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Registry { line: 0, message: format!("{}: {e}", path.display()) })?;
        Self::parse(&text)
    }

    pub fn entries(&self) -> &[CurveRegistryEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Result<&WeierstrassCurve> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map(|e| &e.curve)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}
