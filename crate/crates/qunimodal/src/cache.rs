//! On-disk cache of the base registry.
//!
//! The file stores the recipe, the pair list and its digest. Loading
//! recomputes the digest and rebuilds from scratch on any mismatch.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use qunimodal_core::certify::{base_region, BaseRegistry, BASE_RECIPE};
use qunimodal_core::unimodality::check_strict;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "QUNIMODAL_CACHE_DIR";

const FILE_NAME: &str = "base-registry.json";

#[derive(Debug, Serialize, Deserialize)]
struct StoredRegistry {
    recipe: String,
    digest: String,
    pairs: Vec<(usize, usize)>,
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("qunimodal"))
}

/// Verifies every base pair in parallel and assembles the registry.
pub fn build_parallel() -> Result<BaseRegistry> {
    let verdicts: Vec<_> = base_region()
        .into_par_iter()
        .filter(|&(a, b)| a <= b)
        .map(|(a, b)| ((a, b), check_strict(a, b).strict))
        .collect();
    Ok(BaseRegistry::assemble(verdicts)?)
}

/// Loads the cached registry from `dir`, or builds and stores a fresh one.
pub fn load_or_build(dir: &Path, no_cache: bool) -> Result<BaseRegistry> {
    let path = dir.join(FILE_NAME);
    if !no_cache {
        if let Some(registry) = load(&path) {
            return Ok(registry);
        }
    }
    let registry = build_parallel()?;
    // A failed write only costs a rebuild next time.
    if let Err(e) = store(&path, &registry) {
        log_warning(&format!(
            "could not write registry cache {}: {e:#}",
            path.display()
        ));
    }
    Ok(registry)
}

pub fn load(path: &Path) -> Option<BaseRegistry> {
    let text = fs::read_to_string(path).ok()?;
    let stored: StoredRegistry = serde_json::from_str(&text).ok()?;
    if stored.recipe != BASE_RECIPE {
        return None;
    }
    BaseRegistry::from_stored(stored.pairs, &stored.digest).ok()
}

pub fn store(path: &Path, registry: &BaseRegistry) -> Result<()> {
    let stored = StoredRegistry {
        recipe: registry.recipe().into(),
        digest: registry.digest().into(),
        pairs: registry.pairs().collect(),
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string(&stored)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn log_warning(msg: &str) {
    eprintln!("warning: {msg}");
}
