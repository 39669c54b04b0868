//! Enumeration results persisted as one JSON file per `(N, method)`.

use std::fs;

use llab_core::conjecture::{enumerate_lc, Method};
use llab_core::IntPoly;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(rename = "N")]
    n: u64,
    method: Method,
    members: Vec<String>,
}

/// Canonical members of `LC(N)`, read from the cache when a valid entry exists.
pub fn members(n: u64, method: Method, cfg: &RunConfig) -> Result<Vec<IntPoly>, CliError> {
    let opts = cfg.enumerate_options();
    opts.admits(n, method)?;
    let path = cfg.cache_file(n, method);
    if cfg.use_cache {
        if let Some(found) = fs::read_to_string(&path).ok().and_then(|text| load(&text, n, method)) {
            return Ok(found);
        }
    }
    let found = enumerate_lc(n, method, &opts)?;
    if cfg.use_cache {
        let file = CacheFile {
            n,
            method,
            members: found.iter().filter_map(IntPoly::sign_string).collect(),
        };
        fs::create_dir_all(&cfg.cache_dir)?;
        fs::write(&path, serde_json::to_string_pretty(&file)? + "\n")?;
    }
    Ok(found)
}

/// A corrupt or mismatched file is ignored and recomputed.
fn load(text: &str, n: u64, method: Method) -> Option<Vec<IntPoly>> {
    let file: CacheFile = serde_json::from_str(text).ok()?;
    if file.n != n || file.method != method || file.members.is_empty() {
        return None;
    }
    let polys: Vec<IntPoly> = file
        .members
        .iter()
        .map(|s| IntPoly::from_sign_str(s).ok())
        .collect::<Option<_>>()?;
    polys.iter().all(|p| p.len() as u64 == n).then_some(polys)
}
