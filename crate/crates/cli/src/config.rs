use fermat53::eliminate::DEFAULT_NORM_CAP;
use fermat53::ghost::{GhostBox, DEFAULT_BUDGET};
use fermat53::hgmsum::trace::GAUSS_BUDGET;
use fermat53::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

/// Settings shared by every subcommand. A config file has the same JSON shape;
/// missing fields take the defaults.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// largest norm of a prime of K used for traces and elimination
    pub norm_cap: u64,
    pub search_box: GhostBox,
    /// cap on the ghost search work, in (a values) x (patterns) x (signs)
    pub search_budget: u64,
    /// largest residue field for floating-point character sums
    pub gauss_budget: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    /// worker threads; all cores when unset
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            norm_cap: DEFAULT_NORM_CAP,
            search_box: GhostBox::default(),
            search_budget: DEFAULT_BUDGET,
            gauss_budget: GAUSS_BUDGET,
            cache_dir: None,
            format: Format::Tsv,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::data("cli", format!("config {}: {}", path.display(), e)))?;
        serde_json::from_str(&text).map_err(|e| Error::data("cli", format!("config {}: {}", path.display(), e)))
    }

    pub fn cache_dir(&self) -> PathBuf {
        self.cache_dir.clone().unwrap_or_else(|| PathBuf::from(".fermat53-cache"))
    }
}
