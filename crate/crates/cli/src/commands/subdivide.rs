//! `hh subdivide`: barycenter-average series as CSV.
//!
//! One row per level p with the member count, the barycenter average of
//! every selected function, and its reference mean over the root. The
//! resolved config rides along in a leading `#` comment line.

use hh_core::{dr_convergence_report, DrSeries, QuadratureConfig, Simplex, TestFunction};

use crate::config::{function_seed, CliError, RunConfig};
use crate::output::{format_f64, write_bytes};

pub fn run(
    config: &RunConfig,
    base: &Simplex,
    entries: &[TestFunction],
    selected: &[usize],
    verbose: bool,
) -> Result<i32, CliError> {
    let mut series: Vec<(&str, DrSeries)> = Vec::with_capacity(selected.len());
    for &index in selected {
        let f = &entries[index];
        if verbose {
            println!("subdividing for {} ...", f.name());
        }
        let quad = QuadratureConfig {
            method: config.method,
            mc_samples: config.mc_samples,
            z: config.z,
            seed: function_seed(config.seed, index),
            workers: config.workers,
        };
        series.push((f.name(), dr_convergence_report(f, base, config.p_max, &quad)?));
    }
    series.sort_by(|a, b| a.0.cmp(b.0));

    let config_line = serde_json::to_string(config)
        .map_err(|e| CliError::Config(format!("serialization failed: {e}")))?;
    let mut csv = format!("# config: {config_line}\n");
    csv.push_str("p,count");
    for (name, _) in &series {
        csv.push_str(&format!(",avg_{name},ref_{name}"));
    }
    csv.push('\n');
    for p in 0..=config.p_max as usize {
        let count = series
            .first()
            .map(|(_, s)| s.points[p].member_count)
            .unwrap_or(1);
        csv.push_str(&format!("{p},{count}"));
        for (_, s) in &series {
            csv.push_str(&format!(
                ",{},{}",
                format_f64(s.points[p].average),
                format_f64(s.reference.value)
            ));
        }
        csv.push('\n');
    }
    write_bytes(config.out.as_ref(), csv.as_bytes())?;
    Ok(0)
}
