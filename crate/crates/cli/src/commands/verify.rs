//! `hh verify`: the full verification campaign for one simplex.

use serde::Serialize;

use hh_core::{run_function_campaign, FunctionCampaign, QuadratureConfig, Simplex, TestFunction};

use crate::config::{function_seed, CliError, RunConfig};
use crate::output::write_json;

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    max_violation: f64,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a RunConfig,
    results: Vec<FunctionCampaign>,
    summary: Summary,
}

pub fn run(
    config: &RunConfig,
    base: &Simplex,
    entries: &[TestFunction],
    selected: &[usize],
    verbose: bool,
) -> Result<i32, CliError> {
    let mut results = Vec::with_capacity(selected.len());
    for &index in selected {
        let f = &entries[index];
        if verbose {
            println!("verifying {} ...", f.name());
        }
        let quad = QuadratureConfig {
            method: config.method,
            mc_samples: config.mc_samples,
            z: config.z,
            seed: function_seed(config.seed, index),
            workers: config.workers,
        };
        results.push(run_function_campaign(f, base, &quad)?);
    }
    results.sort_by(|a, b| a.function_id.cmp(&b.function_id));

    let pass = results.iter().map(|r| r.comparisons_pass).sum();
    let fail = results.iter().map(|r| r.comparisons_fail).sum();
    let max_violation = results
        .iter()
        .map(|r| r.max_violation)
        .fold(0.0f64, f64::max);
    let report = VerifyReport {
        config,
        summary: Summary { pass, fail, max_violation },
        results,
    };
    write_json(config.out.as_ref(), &report)?;

    if fail > 0 {
        eprintln!("{fail} comparison(s) violated (max violation {max_violation:.3e}):");
        for campaign in &report.results {
            for label in &campaign.failed {
                eprintln!("  FAIL {label}");
            }
        }
        Ok(1)
    } else {
        Ok(0)
    }
}
