//! Regression manifests: family, labels and the expected quandle size.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Deserialize;

use crate::engine::{enumerate, EnumerationLimits, EnumerationResult};
use crate::error::{Error, Result};
use crate::families::{family_presentation, Family, FamilyParams};

/// The known-sizes manifest shipped with the crate.
pub const KNOWN_SIZES: &str = include_str!("../data/known_sizes.toml");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub family: String,
    #[serde(default)]
    pub labels: Option<Vec<i64>>,
    #[serde(default)]
    pub k: Option<i64>,
    #[serde(default)]
    pub m: Option<u32>,
    #[serde(default)]
    pub n: Option<u32>,
    /// Expected size; absent when the row should exhaust its vertex limit.
    #[serde(default)]
    pub size: Option<usize>,
    #[serde(default)]
    pub max_vertices: Option<usize>,
    #[serde(default)]
    pub slow: bool,
}

impl Row {
    pub fn params(&self) -> Result<FamilyParams> {
        let family: Family = self.family.parse()?;
        FamilyParams::new(family, self.k, self.m, self.n, self.labels.clone())
    }

    pub fn describe(&self) -> String {
        let mut s = self.family.clone();
        if let Some(l) = &self.labels {
            let l: Vec<String> = l.iter().map(i64::to_string).collect();
            s.push_str(&format!(" ({})", l.join(",")));
        }
        for (name, v) in [
            ("k", self.k),
            ("m", self.m.map(i64::from)),
            ("n", self.n.map(i64::from)),
        ] {
            if let Some(v) = v {
                s.push_str(&format!(" {name}={v}"));
            }
        }
        s
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub row: Vec<Row>,
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|s| {
                let before = &text[..s.start];
                let line = before.matches('\n').count() + 1;
                let col = s.start - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                (line, col)
            })
            .unwrap_or((1, 1));
        Error::syntax(line, column, e.message().to_string())
    })
}

#[derive(Debug)]
pub struct RowReport {
    pub row: Row,
    pub result: Result<EnumerationResult>,
    pub elapsed: Duration,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        match (&self.result, self.row.size) {
            (Ok(r), Some(want)) => r.size() == Some(want),
            (Ok(r), None) => !r.is_completed(),
            (Err(_), _) => false,
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let got = match &self.result {
            Ok(r) => match r.size() {
                Some(s) => s.to_string(),
                None => "limit exceeded".into(),
            },
            Err(e) => format!("error: {e}"),
        };
        let want = self
            .row
            .size
            .map_or_else(|| "limit exceeded".to_string(), |s| s.to_string());
        format!(
            "{status} {:<32} expected {want:>14} got {got:>14} ({:.2?})",
            self.row.describe(),
            self.elapsed
        )
    }
}

pub fn run_row(row: &Row, base: EnumerationLimits) -> RowReport {
    let start = Instant::now();
    let result = row
        .params()
        .and_then(|fp| family_presentation(&fp))
        .map(|p| {
            let limits = match row.max_vertices {
                Some(v) => base.with_max_vertices(v),
                None => base,
            };
            enumerate(&p.expand_relations(), limits)
        });
    RowReport {
        row: row.clone(),
        result,
        elapsed: start.elapsed(),
    }
}

/// Runs every row, in parallel, reporting in manifest order.
pub fn run_manifest(m: &Manifest, base: EnumerationLimits) -> Vec<RowReport> {
    m.row.par_iter().map(|r| run_row(r, base)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_manifest_parses() {
        let m = parse_manifest(KNOWN_SIZES).unwrap();
        assert_eq!(m.row.len(), 22);
        for r in &m.row {
            r.params().unwrap();
        }
    }

    #[test]
    fn bad_manifest_reports_position() {
        let e = parse_manifest("[[row]]\nfamily = \"theta3\"\nbogus = 1\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, .. }), "{e}");
    }
}
