//! On-disk normal-form cache.
//!
//! Straightening the same words across CLI invocations is pure waste, so an
//! engine's memo table can be persisted as JSON lines and reloaded. One file
//! per (algebra, n) pair inside the cache directory; lines carry a flattened
//! word and its normal form. Loading validates every polynomial through the
//! same constructors the library uses, so a corrupt cache is an error rather
//! than silent bad algebra.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use qmat_core::ncpoly::{Algebra, Gen, Word};
use qmat_core::pbw::PbwEngine;

use crate::format::{algebra_name, poly_from_json, poly_to_json};

#[derive(Serialize, Deserialize)]
struct CacheLine {
    word: Vec<(u8, u8)>,
    nf: serde_json::Value,
}

/// `QMAT_CACHE_DIR` supplies the directory when no flag is given.
pub fn dir_from_env(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("QMAT_CACHE_DIR").map(PathBuf::from))
}

fn file_for(dir: &Path, algebra: Algebra, n: u8) -> PathBuf {
    dir.join(format!("nf-{}-n{}.jsonl", algebra_name(algebra), n))
}

/// Load the cache file matching the engine's algebra and size, if present.
/// Returns the number of entries inserted.
pub fn load(engine: &PbwEngine, dir: &Path) -> Result<usize> {
    let path = file_for(dir, engine.algebra(), engine.n());
    if !path.exists() {
        return Ok(0);
    }
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading cache {}", path.display()))?;
    let mut inserted = 0;
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: CacheLine = serde_json::from_str(line)
            .with_context(|| format!("{}:{}", path.display(), ln + 1))?;
        let n = engine.n();
        for &(r, c) in &entry.word {
            if r == 0 || c == 0 || r > n || c > n {
                bail!("{}:{}: generator ({r},{c}) out of range", path.display(), ln + 1);
            }
        }
        let word = Word(entry.word.iter().map(|&(r, c)| Gen::new(r, c)).collect());
        let nf = poly_from_json(&entry.nf)
            .with_context(|| format!("{}:{}", path.display(), ln + 1))?;
        if nf.algebra() != engine.algebra() || nf.n() != n {
            bail!("{}:{}: normal form tagged for wrong algebra", path.display(), ln + 1);
        }
        if engine.cache_insert(&word, &nf) {
            inserted += 1;
        }
    }
    Ok(inserted)
}

/// Persist the engine's memo table, overwriting the file for its
/// (algebra, n) slot. Entries are already in canonical word order.
pub fn save(engine: &PbwEngine, dir: &Path) -> Result<usize> {
    fs::create_dir_all(dir)?;
    let path = file_for(dir, engine.algebra(), engine.n());
    let mut lines = Vec::new();
    for (word, nf) in engine.cache_entries() {
        let entry = CacheLine {
            word: word.0.iter().map(|g| (g.row, g.col)).collect(),
            nf: poly_to_json(&nf),
        };
        lines.push(serde_json::to_string(&entry)?);
    }
    fs::write(&path, lines.join("\n") + "\n")
        .with_context(|| format!("writing cache {}", path.display()))?;
    Ok(lines.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmat_core::ncpoly::NCPoly;

    #[test]
    fn roundtrip_preserves_normal_forms() {
        let dir = tempfile::tempdir().unwrap();
        let engine = PbwEngine::new(Algebra::Rea, 2);
        let w = Word(vec![Gen::new(2, 1), Gen::new(1, 2)]);
        let nf = engine.nf_word(&w).unwrap();
        let saved = save(&engine, dir.path()).unwrap();
        assert!(saved >= 1);

        let fresh = PbwEngine::new(Algebra::Rea, 2);
        let loaded = load(&fresh, dir.path()).unwrap();
        assert_eq!(loaded, saved);
        let again = fresh.nf_word(&w).unwrap();
        assert_eq!(again, nf);
    }

    #[test]
    fn wrong_algebra_entries_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let engine = PbwEngine::new(Algebra::Rea, 2);
        let one = NCPoly::one(Algebra::Frt, 2);
        let line = serde_json::to_string(&CacheLine {
            word: vec![(1, 1)],
            nf: poly_to_json(&one),
        })
        .unwrap();
        let path = dir.path().join("nf-rea-n2.jsonl");
        fs::write(&path, line + "\n").unwrap();
        assert!(load(&engine, dir.path()).is_err());
    }

    #[test]
    fn missing_dir_loads_nothing() {
        let engine = PbwEngine::new(Algebra::Frt, 2);
        let loaded = load(&engine, Path::new("/nonexistent/qmat-cache")).unwrap();
        assert_eq!(loaded, 0);
    }
}
