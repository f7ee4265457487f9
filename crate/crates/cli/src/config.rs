//! Run configuration: command-line flags merged over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use firecontain::{Error, Result};

#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// JSON file with any of these options; flags win on conflict.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Graph file to read.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// graph6 | planar_code | rotation_json
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Built-in family, e.g. hex_patch:4, rect_grid:17x17, star:5,
    /// platonic:dodecahedron, random_triangulation:30.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Seed for the random families.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Which graph of a multi-graph input file.
    #[arg(long, global = true)]
    pub index: Option<usize>,
    /// Accept graph6 input, whose neighbour order is not an embedding.
    #[arg(long, global = true)]
    pub allow_unverified: bool,
    /// Constant budget per round.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// `first,subsequent` budgets.
    #[arg(long, global = true)]
    pub schedule: Option<String>,
    /// rules_only | exact
    #[arg(long, global = true)]
    pub mode: Option<String>,
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true)]
    pub beta: Option<String>,
    /// girth5 | planar | triangle_free
    #[arg(long, global = true)]
    pub context: Option<String>,
    /// girth5_k2 | planar_4_3 | triangle_free_k2 | k2m_upper
    #[arg(long, global = true)]
    pub theorem: Option<String>,
    /// Fire start; `solve` and `rate` use every vertex when omitted.
    #[arg(long, global = true)]
    pub start: Option<usize>,
    /// null | degree_local | hex_containment | rect_containment | config |
    /// dispatch | exact
    #[arg(long, global = true)]
    pub strategy: Option<String>,
    /// Add edges until the graph is maximal for the context first.
    #[arg(long, global = true)]
    pub augment: bool,
    /// Print a CSV summary row instead of JSON (`rate`).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Directory for artifacts; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

macro_rules! merge_fields {
    ($flags:ident, $file:ident; $($opt:ident),*; $($flag:ident),*) => {
        Options {
            config: $flags.config,
            $($opt: $flags.$opt.or($file.$opt),)*
            $($flag: $flags.$flag || $file.$flag,)*
        }
    };
}

impl Options {
    /// Folds in the config file named by `--config`, if any.
    pub fn resolve(self) -> Result<Options> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let file = read_config(&path)?;
        let flags = self;
        Ok(merge_fields!(flags, file;
            input, format, family, seed, index, k, schedule, mode, node_limit,
            alpha, beta, context, theorem, start, strategy, out;
            allow_unverified, augment, csv))
    }
}

fn read_config(path: &Path) -> Result<Options> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadParameter(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}
