use serde::{Deserialize, Serialize};

use super::{exp_id, lower_median, role, run_indexed, trial_stream};
use crate::error::{Error, Result};
use crate::lp::solve_l1_program;
use crate::models::{make_test_vector, planted_random, TestVectorSpec};
use crate::recovery::evaluate_success;

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityConfig {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub delta_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "one")]
    pub workers: usize,
}

impl StabilityConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.k == 0 || self.k >= self.n {
            return bad(format!("k = {} outside 1..={}", self.k, self.n.saturating_sub(1)));
        }
        if self.s == 0 || self.s > self.n {
            return bad(format!("s = {} outside 1..={}", self.s, self.n));
        }
        if self.trials == 0 || self.workers == 0 {
            return bad("trials and workers must be at least 1".into());
        }
        if self.delta_grid.is_empty() {
            return bad("delta grid must be nonempty".into());
        }
        if let Some(d) = self.delta_grid.iter().find(|d| !(**d >= 0.0 && d.is_finite())) {
            return bad(format!("delta must be nonnegative, got {d}"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityResult {
    pub config: StabilityConfig,
    /// Per delta: lower median of the oracle error.
    pub median_error: Vec<f64>,
    /// `median_error / delta`; `NaN` at `delta = 0`.
    pub ratio: Vec<f64>,
    pub failures: Vec<usize>,
}

/// Median oracle error per noise level.
///
/// Trial `t` uses one subspace and one noise direction at every `delta`,
/// so only the noise level changes across the grid.
pub fn stability_sweep(cfg: &StabilityConfig) -> Result<StabilityResult> {
    cfg.validate()?;
    let (nd, nt) = (cfg.delta_grid.len(), cfg.trials);
    let errors = run_indexed(cfg.workers, nd * nt, |task| {
        let (delta, t) = (cfg.delta_grid[task / nt], task % nt);
        let label = |r| [exp_id::STABILITY, t as u64, r];
        let spec = TestVectorSpec::leading(cfg.n, cfg.s, delta);
        let v = make_test_vector::<f64>(&spec, &mut trial_stream(cfg.seed, &label(role::VECTOR))).ok()?;
        let inst = planted_random(&v, cfg.k, cfg.s, true, &mut trial_stream(cfg.seed, &label(role::SUBSPACE))).ok()?;
        let sol = solve_l1_program(&inst.w, inst.i_star).ok()?;
        if !sol.is_optimal() {
            return None;
        }
        evaluate_success(&sol.z, &v, 0.0).ok().map(|(e, _)| e)
    })?;
    let mut res = StabilityResult {
        config: cfg.clone(),
        median_error: Vec::new(),
        ratio: Vec::new(),
        failures: Vec::new(),
    };
    for (chunk, &delta) in errors.chunks(nt).zip(&cfg.delta_grid) {
        let vals: Vec<f64> = chunk.iter().map(|e| e.unwrap_or(f64::INFINITY)).collect();
        let med = lower_median(&vals);
        res.median_error.push(med);
        res.ratio.push(if delta > 0.0 { med / delta } else { f64::NAN });
        res.failures.push(chunk.iter().filter(|e| e.is_none()).count());
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_point_is_exact() {
        let cfg = StabilityConfig {
            n: 40,
            k: 2,
            s: 2,
            delta_grid: vec![0.0, 0.01],
            trials: 5,
            seed: 9,
            workers: 1,
        };
        let r = stability_sweep(&cfg).unwrap();
        assert!(r.median_error[0] <= 1e-6);
        assert!(r.ratio[0].is_nan());
        assert!(r.median_error[1] > 0.0);
    }

    #[test]
    fn bad_configs() {
        let mut cfg = StabilityConfig {
            n: 10,
            k: 10,
            s: 2,
            delta_grid: vec![0.1],
            trials: 1,
            seed: 0,
            workers: 1,
        };
        assert!(cfg.validate().is_err());
        cfg.k = 2;
        cfg.delta_grid = vec![-0.1];
        assert!(cfg.validate().is_err());
    }
}
