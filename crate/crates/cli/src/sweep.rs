//! Grid sweeps over tensor products.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qcharlab_core::{classify_as, sweep_grid, Case, Error, GridPoint, QCharCache, Result, Variant};

/// Environment variable overriding [`SweepConfig::parallelism`].
pub const THREADS_ENV: &str = "QCHARLAB_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n_max: usize,
    pub lambda_sum_max: u32,
    pub k_max: u32,
    #[serde(default = "default_pad")]
    pub r_window_pad: u32,
    #[serde(default = "default_variants")]
    pub variants: Vec<Variant>,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    pub output: PathBuf,
}

fn default_pad() -> u32 {
    2
}

fn default_variants() -> Vec<Variant> {
    vec![Variant::Normal]
}

fn default_parallelism() -> usize {
    1
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.n_max == 0 {
            return bad("n_max must be positive");
        }
        if self.lambda_sum_max == 0 {
            return bad("lambda_sum_max must be positive");
        }
        if self.k_max == 0 {
            return bad("k_max must be positive");
        }
        if self.parallelism == 0 {
            return bad("parallelism must be positive");
        }
        if self.variants.is_empty() {
            return bad("variants must not be empty");
        }
        Ok(())
    }

    /// Parallelism after applying the environment override.
    pub fn threads(&self) -> Result<usize> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(t) if t > 0 => Ok(t),
                _ => Err(Error::InvalidArgument(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
            },
            Err(_) => Ok(self.parallelism),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub points: usize,
    pub irreducible: usize,
    pub case_i: usize,
    pub case_ii: usize,
    pub violations: usize,
    /// Variant points whose dominant terms are not totally ordered.
    pub variant_non_chain: usize,
    /// Variant points whose transported normal-form list differs from the direct one.
    pub variant_transport_mismatch: usize,
}

/// Outcome of one grid point, already rendered as a JSON line.
struct PointResult {
    line: String,
    case: Option<Case>,
    non_chain: bool,
    transport_mismatch: bool,
}

fn classify_point(pt: &GridPoint, cache: &QCharCache) -> PointResult {
    match classify_as(pt.variant, &pt.spec, &pt.kr, cache) {
        Ok((report, diag)) => {
            let value = serde_json::to_value(&report).expect("reports serialize");
            PointResult {
                line: value.to_string(),
                case: Some(report.case),
                non_chain: !diag.chain,
                transport_mismatch: !diag.transported_d_matches,
            }
        }
        Err(e) => {
            let value: Value = json!({
                "error": e.to_string(),
                "spec": serde_json::to_value(&pt.spec).expect("specs serialize"),
                "kr": serde_json::to_value(pt.kr).expect("specs serialize"),
                "variant": serde_json::to_value(pt.variant).expect("variants serialize"),
            });
            PointResult { line: value.to_string(), case: None, non_chain: false, transport_mismatch: false }
        }
    }
}

/// Classifies every grid point and writes one JSON line per point, in grid order.
pub fn run_sweep(config: &SweepConfig, out: &mut dyn Write) -> Result<SweepSummary> {
    config.validate()?;
    let threads = config.threads()?;
    let grid = sweep_grid(config.n_max, config.lambda_sum_max, config.k_max, config.r_window_pad, &config.variants)?;
    let cache = QCharCache::new();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let results: Vec<PointResult> = pool.install(|| grid.par_iter().map(|pt| classify_point(pt, &cache)).collect());

    let mut summary = SweepSummary { points: results.len(), ..Default::default() };
    for r in &results {
        writeln!(out, "{}", r.line).map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))?;
        match r.case {
            Some(Case::Irreducible) => summary.irreducible += 1,
            Some(Case::CaseI) => summary.case_i += 1,
            Some(Case::CaseII) => summary.case_ii += 1,
            None => summary.violations += 1,
        }
        summary.variant_non_chain += r.non_chain as usize;
        summary.variant_transport_mismatch += r.transport_mismatch as usize;
    }
    Ok(summary)
}
