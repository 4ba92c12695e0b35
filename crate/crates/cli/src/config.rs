//! Run configuration: flag resolution, simplex sources, function selection.
//!
//! The resolved configuration is embedded verbatim in every report, and all
//! random streams derive from the single master seed with disjoint salts.

use std::path::PathBuf;

use serde::Serialize;

use hh_core::seeding::derive_seed;
use hh_core::{catalog, random_simplex, standard_simplex, MethodChoice, Simplex, TestFunction};

/// Salt spaces for the master seed. Subset masks used by the verifier stay
/// below 2^7, so the high-bit salts never collide with them.
const SALT_SIMPLEX: u64 = 1 << 32;
const SALT_CATALOG: u64 = 2 << 32;
const SALT_FUNCTION_BASE: u64 = 3 << 32;

/// Exhaustive subset enumeration is the only implemented mode.
pub const MAX_FAMILY_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimplexSource {
    Standard,
    Random { seed: u64, scale: f64 },
    File { path: String },
}

/// The fully resolved configuration of one command invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub dim: usize,
    pub simplex: SimplexSource,
    pub seed: u64,
    pub functions: Vec<String>,
    pub include_nonconvex: bool,
    pub method: MethodChoice,
    pub mc_samples: u64,
    pub z: f64,
    pub p_max: u32,
    pub out: String,
    pub format: OutputFormat,
    pub workers: usize,
}

/// Errors carrying the process exit code: 2 for configuration problems,
/// 3 for degenerate geometry and resource caps.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Geometry(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Geometry(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Geometry(_) => 3,
        }
    }
}

impl From<hh_core::Error> for CliError {
    fn from(e: hh_core::Error) -> Self {
        match e {
            hh_core::Error::DegenerateSimplex { .. } | hh_core::Error::LevelCapExceeded { .. } => {
                CliError::Geometry(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

/// Master seed resolution: --seed wins over HH_SEED, default 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("HH_SEED") {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| CliError::Config(format!("HH_SEED is not a u64: {raw:?}"))),
        Err(_) => Ok(0),
    }
}

/// Parse `--simplex standard|random|file:PATH`.
pub fn parse_simplex_source(raw: &str, seed: u64) -> Result<SimplexSource, CliError> {
    match raw {
        "standard" => Ok(SimplexSource::Standard),
        "random" => Ok(SimplexSource::Random { seed, scale: 1.0 }),
        other => {
            if let Some(path) = other.strip_prefix("file:") {
                Ok(SimplexSource::File { path: path.to_string() })
            } else {
                Err(CliError::Config(format!(
                    "unknown simplex source {other:?} (expected standard, random, or file:PATH)"
                )))
            }
        }
    }
}

/// Build the base simplex and reconcile its dimension with --dim.
pub fn build_simplex(
    source: &SimplexSource,
    dim_flag: Option<usize>,
) -> Result<(Simplex, usize), CliError> {
    match source {
        SimplexSource::Standard => {
            let n = dim_flag.unwrap_or(2);
            if n < 1 {
                return Err(CliError::Config("--dim must be at least 1".into()));
            }
            Ok((standard_simplex(n), n))
        }
        SimplexSource::Random { seed, scale } => {
            let n = dim_flag.unwrap_or(2);
            if n < 1 {
                return Err(CliError::Config("--dim must be at least 1".into()));
            }
            let mut rng = hh_core::seeding::rng_from_seed(derive_seed(*seed, SALT_SIMPLEX));
            Ok((random_simplex(n, *scale, &mut rng), n))
        }
        SimplexSource::File { path } => {
            let raw = std::fs::read_to_string(PathBuf::from(path))
                .map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))?;
            let rows: Vec<Vec<f64>> = serde_json::from_str(&raw)
                .map_err(|e| CliError::Config(format!("{path} is not a vertex array: {e}")))?;
            let simplex = Simplex::from_rows(rows).map_err(CliError::from)?;
            let n = simplex.dim_ambient();
            if simplex.dim_intrinsic() != n {
                return Err(CliError::Config(format!(
                    "{path} holds {} vertices, expected {} for a full {n}-simplex",
                    simplex.vertex_count(),
                    n + 1
                )));
            }
            if simplex.is_degenerate() {
                return Err(CliError::Geometry(format!("{path} holds a degenerate simplex")));
            }
            if let Some(d) = dim_flag {
                if d != n {
                    return Err(CliError::Config(format!(
                        "--dim {d} conflicts with {n}-dimensional simplex from {path}"
                    )));
                }
            }
            Ok((simplex, n))
        }
    }
}

/// The catalog for this run; its stream is independent of the simplex and
/// quadrature streams.
pub fn run_catalog(n: usize, master_seed: u64) -> Vec<TestFunction> {
    catalog(n, derive_seed(master_seed, SALT_CATALOG))
}

/// Quadrature stream seed for the catalog entry at `catalog_index`. Tied to
/// the catalog position, so selecting a subset of functions does not shift
/// the streams of the others.
pub fn function_seed(master_seed: u64, catalog_index: usize) -> u64 {
    derive_seed(master_seed, SALT_FUNCTION_BASE | catalog_index as u64)
}

/// Resolve `--func` against the catalog: `all` selects every convex entry,
/// plus the control when `--include-nonconvex` is set; explicit names are
/// honored as given. Returns catalog indices in catalog order.
pub fn select_functions(
    raw: &str,
    entries: &[TestFunction],
    include_nonconvex: bool,
) -> Result<Vec<usize>, CliError> {
    if raw == "all" {
        return Ok(entries
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_convex() || include_nonconvex)
            .map(|(i, _)| i)
            .collect());
    }
    let mut indices = Vec::new();
    for name in raw.split(',') {
        let name = name.trim();
        let index = entries
            .iter()
            .position(|f| f.name() == name)
            .ok_or_else(|| {
                let known: Vec<&str> = entries.iter().map(|f| f.name()).collect();
                CliError::Config(format!(
                    "unknown function {name:?}; catalog has {}",
                    known.join(", ")
                ))
            })?;
        if !indices.contains(&index) {
            indices.push(index);
        }
    }
    indices.sort_unstable();
    Ok(indices)
}
