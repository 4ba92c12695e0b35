//! `hh family`: enumerate the Δ^[K] family of the configured simplex.

use serde::Serialize;

use hh_core::{build_delta_k, Simplex, SubsetIndex, Vector};

use crate::config::{CliError, RunConfig};
use crate::output::write_json;

#[derive(Serialize)]
struct FamilyEntry {
    k_set: Vec<usize>,
    cardinality: usize,
    vertices: Vec<Vector>,
    volume: f64,
    barycenter: Vector,
}

#[derive(Serialize)]
struct FamilyReport<'a> {
    config: &'a RunConfig,
    entries: Vec<FamilyEntry>,
}

pub fn run(config: &RunConfig, base: &Simplex) -> Result<i32, CliError> {
    let n = base.dim_intrinsic();
    let mut entries = Vec::new();
    for k_set in SubsetIndex::enumerate_proper(n) {
        let member = build_delta_k(base, &k_set)?;
        entries.push(FamilyEntry {
            k_set: k_set.members().to_vec(),
            cardinality: k_set.card(),
            volume: member.volume()?,
            barycenter: member.barycenter(),
            vertices: member.vertices().to_vec(),
        });
    }
    let report = FamilyReport { config, entries };
    write_json(config.out.as_ref(), &report)?;
    Ok(0)
}
