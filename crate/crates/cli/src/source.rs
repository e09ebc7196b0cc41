//! Newform data from a local file or an HTTP endpoint, with a file cache for the
//! latter keyed by the SHA-256 of the URL.

use fermat53::eliminate::{parse_newforms, Loaded};
use fermat53::{Error, Result};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub fn is_remote(source: &str) -> bool {
    source.starts_with("http://") || source.starts_with("https://")
}

pub fn cache_path(dir: &Path, url: &str) -> PathBuf {
    let digest = Sha256::digest(url.as_bytes());
    let name: String = digest.iter().map(|b| format!("{:02x}", b)).collect();
    dir.join(format!("{}.json", name))
}

/// Load records. Remote sources are read from the cache when present; otherwise
/// fetched (unless `offline`), validated, and cached.
pub fn load(source: &str, cache_dir: &Path, offline: bool) -> Result<Loaded> {
    if !is_remote(source) {
        return fermat53::eliminate::load_newforms(Path::new(source));
    }
    let path = cache_path(cache_dir, source);
    if let Ok(text) = std::fs::read_to_string(&path) {
        return parse_newforms(&text);
    }
    if offline {
        return Err(Error::data("cli", format!("{} is not cached and the network is disabled", source)));
    }
    let text = ureq::get(source)
        .call()
        .map_err(|e| Error::data("cli", format!("fetching {}: {}", source, e)))?
        .into_string()
        .map_err(|e| Error::data("cli", format!("reading {}: {}", source, e)))?;
    let loaded = parse_newforms(&text)?;
    std::fs::create_dir_all(cache_dir)
        .and_then(|_| std::fs::write(&path, &text))
        .map_err(|e| Error::data("cli", format!("writing cache {}: {}", path.display(), e)))?;
    Ok(loaded)
}
