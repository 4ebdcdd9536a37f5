//! Seeded Monte-Carlo drivers: phase diagrams, baseline curves with no
//! planted vector, scaling fits and stability sweeps.
//!
//! Every trial draws from its own substream labelled by experiment id,
//! grid point and trial number, and results are gathered in task order,
//! so tables do not depend on the worker count.

mod baseline;
pub mod io;
mod phase;
mod stability;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::randomness::RngStream;

pub use baseline::{
    baseline_curve, fit_slope, scaling_fit, BaselineConfig, BaselineCurveResult, BaselineMode,
    ScalingConfig, ScalingResult,
};
pub use io::{
    read_curve_csv, read_phase_csv, read_stability_csv, write_curve_csv, write_manifest,
    write_phase_csv, write_phase_heatmaps, write_stability_csv, read_manifest, CurveRow, PhaseRow,
    StabilityRow,
};
pub use phase::{phase_diagram, AuditReport, PhaseConfig, PhaseDiagramResult};
pub use stability::{stability_sweep, StabilityConfig, StabilityResult};

pub const SCHEMA_VERSION: u32 = 1;

/// First word of every substream label.
pub(crate) mod exp_id {
    pub const PHASE: u64 = 1;
    pub const BASELINE: u64 = 2;
    pub const STABILITY: u64 = 4;
}

/// Last word of a trial label: what the substream is used for.
pub(crate) mod role {
    pub const VECTOR: u64 = 0;
    pub const SUBSPACE: u64 = 1;
}

pub(crate) fn trial_stream(seed: u64, label: &[u64]) -> RngStream {
    RngStream::new(seed).derive(label)
}

/// Runs `f(0..count)` on `workers` threads; output is in index order.
pub(crate) fn run_indexed<R, F>(workers: usize, count: usize, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if workers == 0 {
        return Err(Error::InvalidArgument("worker count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| (0..count).into_par_iter().map(f).collect()))
}

/// Lower median (element `(len - 1) / 2` of the sorted values).
pub fn lower_median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v[(v.len() - 1) / 2]
}

/// Which driver produced a run, with its full configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Experiment {
    Phase(PhaseConfig),
    Baseline(BaselineConfig),
    Scaling(ScalingConfig),
    Stability(StabilityConfig),
}

impl Experiment {
    pub fn seed(&self) -> u64 {
        match self {
            Experiment::Phase(c) => c.seed,
            Experiment::Baseline(c) => c.seed,
            Experiment::Scaling(c) => c.seed,
            Experiment::Stability(c) => c.seed,
        }
    }
}

/// Everything needed to replay a run. The timestamp is informational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub code_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub master_seed: u64,
    pub experiment: Experiment,
    /// Counts and fitted values reported by the run.
    #[serde(default)]
    pub summary: serde_json::Map<String, serde_json::Value>,
}

impl RunManifest {
    pub fn new(experiment: Experiment) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            schema_version: SCHEMA_VERSION,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            master_seed: experiment.seed(),
            experiment,
            summary: serde_json::Map::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.summary.insert(key.to_string(), value.into());
    }
}

/// Inclusive arithmetic grid `lo, lo + step, ..` up to `hi`.
pub fn grid(lo: usize, hi: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "empty grid {lo}..={hi} step {step}"
        )));
    }
    Ok((lo..=hi).step_by(step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_median_rule() {
        assert_eq!(lower_median(&[4.0, 1.0, 3.0, 2.0]), 2.0);
        assert_eq!(lower_median(&[5.0, 1.0, 3.0]), 3.0);
        assert_eq!(lower_median(&[f64::INFINITY, 1.0]), 1.0);
        assert!(lower_median(&[]).is_nan());
    }

    #[test]
    fn grids() {
        assert_eq!(grid(2, 10, 4).unwrap(), vec![2, 6, 10]);
        assert_eq!(grid(3, 3, 1).unwrap(), vec![3]);
        assert!(grid(3, 2, 1).is_err());
        assert!(grid(1, 2, 0).is_err());
    }

    #[test]
    fn indexed_runs_are_ordered() {
        for w in [1, 3] {
            let out = run_indexed(w, 100, |i| i * i).unwrap();
            assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
        assert!(run_indexed(0, 1, |i| i).is_err());
    }
}
