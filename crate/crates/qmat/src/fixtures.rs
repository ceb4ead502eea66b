//! Golden fixtures: hand-checked reference values stored as JSON lines and
//! replayed against live computation.
//!
//! Each record names a computation family and its parameters; `check`
//! recomputes the value and demands exact equality with the stored
//! polynomial. The stored values are also pinned by unit tests in
//! `qmat-core`, so the fixture file guards the serialization layer and the
//! CLI against drift as much as the algebra itself.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qmat_core::central::ck;
use qmat_core::minors::{dl_coinv, dlmin, ptmin};
use qmat_core::ncpoly::NCPoly;
use qmat_core::twist::minor_preimage;

use crate::format::{poly_from_json, poly_to_json};
use crate::report::Report;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureRecord {
    pub id: String,
    /// Where the value comes from; free text, never empty.
    pub source: String,
    pub family: String,
    pub n: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "I")]
    pub i_set: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "J")]
    pub j_set: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "U")]
    pub u_set: Option<Vec<u8>>,
    pub expected: Value,
}

impl FixtureRecord {
    pub fn compute(&self) -> Result<NCPoly> {
        let need_k = || self.k.ok_or_else(|| anyhow!("{}: missing k", self.id));
        let need_sets = || -> Result<(&[u8], &[u8])> {
            match (&self.i_set, &self.j_set) {
                (Some(i), Some(j)) if i.len() == j.len() => Ok((i, j)),
                _ => bail!("{}: need I and J of equal length", self.id),
            }
        };
        match self.family.as_str() {
            "central" => Ok(ck(self.n, need_k()?)),
            "coinv" => Ok(dl_coinv(self.n, need_k()?)),
            "dlmin" => {
                let (i, j) = need_sets()?;
                Ok(dlmin(self.n, i, j))
            }
            "ptmin" => {
                let (i, j) = need_sets()?;
                let u = self.u_set.as_deref().unwrap_or(&[]);
                Ok(ptmin(self.n, u, i, j))
            }
            "twmin" => {
                let (i, j) = need_sets()?;
                Ok(minor_preimage(self.n, i, j))
            }
            other => bail!("{}: unknown family {other:?}", self.id),
        }
    }
}

/// The canonical record list: ids, sources, and parameters. Expected values
/// are filled in by `write` from live computation after the unit tests have
/// pinned those same values against hand transcriptions.
fn canonical_params() -> Vec<FixtureRecord> {
    let rec = |id: &str,
               family: &str,
               n: u8,
               k: Option<usize>,
               i: Option<&[u8]>,
               j: Option<&[u8]>,
               u: Option<&[u8]>| FixtureRecord {
        id: id.to_string(),
        source: "hand-checked reference value, pinned independently by unit tests".to_string(),
        family: family.to_string(),
        n,
        k,
        i_set: i.map(<[u8]>::to_vec),
        j_set: j.map(<[u8]>::to_vec),
        u_set: u.map(<[u8]>::to_vec),
        expected: Value::Null,
    };
    vec![
        rec("central-n2-k1", "central", 2, Some(1), None, None, None),
        rec("central-n2-k2", "central", 2, Some(2), None, None, None),
        rec("central-n3-k1", "central", 3, Some(1), None, None, None),
        rec("central-n3-k2", "central", 3, Some(2), None, None, None),
        rec("central-n3-k3", "central", 3, Some(3), None, None, None),
        rec("coinv-n2-k1", "coinv", 2, Some(1), None, None, None),
        rec("coinv-n2-k2", "coinv", 2, Some(2), None, None, None),
        rec("coinv-n3-k2", "coinv", 3, Some(2), None, None, None),
        rec("coinv-n3-k3", "coinv", 3, Some(3), None, None, None),
        rec("dlmin-n2-2-1", "dlmin", 2, None, Some(&[2]), Some(&[1]), None),
        rec("dlmin-n4-13-34", "dlmin", 4, None, Some(&[1, 3]), Some(&[3, 4]), None),
        rec("dlmin-n4-124-123", "dlmin", 4, None, Some(&[1, 2, 4]), Some(&[1, 2, 3]), None),
        rec("ptmin-n3-2-3", "ptmin", 3, None, Some(&[2]), Some(&[3]), Some(&[])),
        rec("ptmin-n3-2-1", "ptmin", 3, None, Some(&[2]), Some(&[1]), Some(&[])),
        rec("ptmin-n4-u2-13-34", "ptmin", 4, None, Some(&[1, 3]), Some(&[3, 4]), Some(&[2])),
        rec("ptmin-n4-124-123", "ptmin", 4, None, Some(&[1, 2, 4]), Some(&[1, 2, 3]), Some(&[])),
        rec("ptmin-n4-24-23", "ptmin", 4, None, Some(&[2, 4]), Some(&[2, 3]), Some(&[])),
        rec("ptmin-n4-24-13", "ptmin", 4, None, Some(&[2, 4]), Some(&[1, 3]), Some(&[])),
        rec("ptmin-n4-24-12", "ptmin", 4, None, Some(&[2, 4]), Some(&[1, 2]), Some(&[])),
        rec("twmin-n4-13-34", "twmin", 4, None, Some(&[1, 3]), Some(&[3, 4]), None),
        rec("twmin-n4-124-123", "twmin", 4, None, Some(&[1, 2, 4]), Some(&[1, 2, 3]), None),
    ]
}

/// Default on-disk location: the working directory's `fixtures/printed.jsonl`
/// if present, else the copy at the workspace root.
pub fn default_path() -> PathBuf {
    let local = PathBuf::from("fixtures/printed.jsonl");
    if local.exists() {
        return local;
    }
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/printed.jsonl"))
}

pub fn load(path: &Path) -> Result<Vec<FixtureRecord>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading fixtures from {}", path.display()))?;
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: FixtureRecord = serde_json::from_str(line)
            .with_context(|| format!("{}:{}", path.display(), ln + 1))?;
        if rec.source.is_empty() {
            bail!("{}:{}: empty source", path.display(), ln + 1);
        }
        out.push(rec);
    }
    Ok(out)
}

/// Regenerate the fixture file from the canonical parameter list.
pub fn write(path: &Path) -> Result<usize> {
    let mut lines = Vec::new();
    for mut rec in canonical_params() {
        let value = rec.compute()?;
        rec.expected = poly_to_json(&value);
        lines.push(serde_json::to_string(&rec)?);
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, lines.join("\n") + "\n")
        .with_context(|| format!("writing fixtures to {}", path.display()))?;
    Ok(lines.len())
}

/// Replay every stored record against live computation.
pub fn check(path: &Path) -> Result<Report> {
    let records = load(path)?;
    let mut report = Report::new("fixtures")
        .param("path", json!(path.display().to_string()))
        .param("records", json!(records.len()));
    if records.is_empty() {
        report.fail(json!({"unexpected": "no records"}));
        return Ok(report);
    }
    for rec in &records {
        let expected = match poly_from_json(&rec.expected) {
            Ok(p) => p,
            Err(e) => {
                report.fail(json!({"id": rec.id, "bad_expected": e.to_string()}));
                continue;
            }
        };
        let got = match rec.compute() {
            Ok(p) => p,
            Err(e) => {
                report.fail(json!({"id": rec.id, "compute_error": e.to_string()}));
                continue;
            }
        };
        if got != expected {
            report.fail(json!({
                "id": rec.id,
                "expected": rec.expected,
                "computed": poly_to_json(&got),
            }));
        }
    }
    Ok(report)
}
