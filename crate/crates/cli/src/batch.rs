//! Batch verification over seeded generated instances.

use std::time::{Duration, Instant};

use polystab_core::RatVec;
use rayon::prelude::*;
use serde::Serialize;

use crate::generate::{generate_instance, InstanceSpec};
use crate::io::CliError;

/// One failed verdict (or hard error) at one seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchFailure {
    pub seed: u64,
    pub verdict: String,
}

/// Aggregate outcome of a batch run. The wall time is kept out of the JSON
/// so batch output stays bit-reproducible for a fixed seed; the dispatcher
/// reports timing on stderr instead.
#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub count: usize,
    pub failures: Vec<BatchFailure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Verifies `count` instances generated from consecutive seeds, in parallel.
/// Results are keyed by seed, so aggregation order does not matter.
pub fn run_batch(base: &InstanceSpec, count: usize) -> Result<BatchSummary, CliError> {
    let start = Instant::now();
    let specs: Vec<InstanceSpec> = (0..count)
        .map(|i| InstanceSpec {
            seed: base.seed.wrapping_add(i as u64),
            ..*base
        })
        .collect();
    let mut failures: Vec<BatchFailure> = specs
        .par_iter()
        .flat_map_iter(|spec| {
            let seed = spec.seed;
            match verify_one(spec) {
                Ok(names) => names
                    .into_iter()
                    .map(|n| BatchFailure {
                        seed,
                        verdict: n.to_string(),
                    })
                    .collect::<Vec<_>>(),
                Err(e) => vec![BatchFailure {
                    seed,
                    verdict: format!("error: {e}"),
                }],
            }
        })
        .collect();
    failures.sort_by(|a, b| (a.seed, &a.verdict).cmp(&(b.seed, &b.verdict)));
    Ok(BatchSummary {
        count,
        failures,
        wall_time: start.elapsed(),
    })
}

fn verify_one(spec: &InstanceSpec) -> Result<Vec<&'static str>, CliError> {
    let problem = generate_instance(spec)?;
    let report = problem.verify_stability(&RatVec::zeros(spec.dim_x), None)?;
    Ok(report.verdicts.failures())
}
