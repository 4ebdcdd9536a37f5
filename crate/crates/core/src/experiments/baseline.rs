use serde::{Deserialize, Serialize};

use super::{exp_id, lower_median, run_indexed, trial_stream};
use crate::error::{Error, Result};
use crate::lp::solve_l1_program;
use crate::models::pure_random_basis;
use crate::numerics::{DenseMatrix, NormKind};
use crate::recovery::{recover_all, sparsity_score, Selector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineMode {
    /// The program at index 0 alone.
    Fixed,
    /// Smallest `l1/linf` score over all `n` programs.
    MinRatio,
}

impl std::str::FromStr for BaselineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(BaselineMode::Fixed),
            "minratio" => Ok(BaselineMode::MinRatio),
            _ => Err(Error::InvalidArgument(format!(
                "unknown baseline mode {s:?} (expected fixed or minratio)"
            ))),
        }
    }
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub n: usize,
    pub k_grid: Vec<usize>,
    pub trials: usize,
    pub mode: BaselineMode,
    pub seed: u64,
    #[serde(default = "one")]
    pub workers: usize,
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.trials == 0 || self.workers == 0 {
            return Err(Error::InvalidArgument(
                "n, trials and workers must be at least 1".into(),
            ));
        }
        if self.k_grid.is_empty() {
            return Err(Error::InvalidArgument("k grid must be nonempty".into()));
        }
        if let Some(&k) = self.k_grid.iter().find(|&&k| k == 0 || k > self.n) {
            return Err(Error::InvalidArgument(format!("k = {k} outside 1..={}", self.n)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaselineCurveResult {
    pub config: BaselineConfig,
    /// Per k: lower median of the objective (`Fixed`) or of the smallest
    /// `l1/linf` score (`MinRatio`).
    pub median_value: Vec<f64>,
    /// Per k: lower median of the `l1/linf` score of the reported
    /// optimizer. Equals `median_value` under `MinRatio`.
    pub median_score: Vec<f64>,
    /// Per k: trials whose programs could not be solved. They enter the
    /// medians as `+inf`.
    pub failures: Vec<usize>,
}

/// `(value, l1/linf score)` of one trial, `None` on solver failure.
fn baseline_trial(b: &DenseMatrix<f64>, mode: BaselineMode) -> Option<(f64, f64)> {
    match mode {
        BaselineMode::Fixed => {
            let sol = solve_l1_program(b, 0).ok()?;
            if !sol.is_optimal() {
                return None;
            }
            let score = sol.objective / sol.z.norm(NormKind::Linf);
            Some((sol.objective, score))
        }
        BaselineMode::MinRatio => {
            let best = recover_all(b)
                .ok()?
                .iter()
                .filter(|c| c.solution.is_optimal())
                .filter_map(|c| sparsity_score(&c.solution.z, &Selector::L1OverLinf).ok())
                .fold(f64::INFINITY, f64::min);
            best.is_finite().then_some((best, best))
        }
    }
}

/// Per-k medians over `trials` pure Gaussian bases.
///
/// Trial `t` at `k` uses the same basis in both modes, so per trial the
/// `MinRatio` score never exceeds the `Fixed` score.
pub fn baseline_curve(cfg: &BaselineConfig) -> Result<BaselineCurveResult> {
    cfg.validate()?;
    let (nk, nt) = (cfg.k_grid.len(), cfg.trials);
    let out = run_indexed(cfg.workers, nk * nt, |task| {
        let (k, t) = (cfg.k_grid[task / nt], task % nt);
        let mut stream = trial_stream(cfg.seed, &[exp_id::BASELINE, cfg.n as u64, k as u64, t as u64]);
        let b = pure_random_basis::<f64>(cfg.n, k, &mut stream).ok()?;
        baseline_trial(&b, cfg.mode)
    })?;
    let mut res = BaselineCurveResult {
        config: cfg.clone(),
        median_value: Vec::with_capacity(nk),
        median_score: Vec::with_capacity(nk),
        failures: Vec::with_capacity(nk),
    };
    for chunk in out.chunks(nt) {
        let inf = (f64::INFINITY, f64::INFINITY);
        let vals: Vec<f64> = chunk.iter().map(|r| r.unwrap_or(inf).0).collect();
        let scores: Vec<f64> = chunk.iter().map(|r| r.unwrap_or(inf).1).collect();
        res.median_value.push(lower_median(&vals));
        res.median_score.push(lower_median(&scores));
        res.failures.push(chunk.iter().filter(|r| r.is_none()).count());
    }
    Ok(res)
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::dims("fit_slope", xs.len(), ys.len()));
    }
    if xs.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "a slope fit needs at least 3 points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument(
            "slope fit needs positive finite values".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("slope fit needs distinct x values".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// Two fixed-index baseline sweeps: over `k` at `n = n_fixed`, and over
/// `n` at `k = k_fixed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingConfig {
    pub n_fixed: usize,
    pub k_grid: Vec<usize>,
    pub k_fixed: usize,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "one")]
    pub workers: usize,
}

impl ScalingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_grid.len() < 3 || self.n_grid.len() < 3 {
            return Err(Error::InvalidArgument(
                "each scaling axis needs at least 3 grid points".into(),
            ));
        }
        let check = |n: usize, k: usize| {
            if k == 0 || 16 * k > n {
                Err(Error::InvalidArgument(format!(
                    "scaling law needs 1 <= k <= n/16, got n = {n}, k = {k}"
                )))
            } else {
                Ok(())
            }
        };
        for &k in &self.k_grid {
            check(self.n_fixed, k)?;
        }
        for &n in &self.n_grid {
            check(n, self.k_fixed)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingResult {
    pub config: ScalingConfig,
    pub k_curve: BaselineCurveResult,
    /// One single-point curve per entry of `n_grid`.
    pub n_medians: Vec<f64>,
    pub n_failures: Vec<usize>,
    pub slope_k: f64,
    pub slope_n: f64,
}

pub fn scaling_fit(cfg: &ScalingConfig) -> Result<ScalingResult> {
    cfg.validate()?;
    let curve = |n: usize, k_grid: Vec<usize>| {
        baseline_curve(&BaselineConfig {
            n,
            k_grid,
            trials: cfg.trials,
            mode: BaselineMode::Fixed,
            seed: cfg.seed,
            workers: cfg.workers,
        })
    };
    let k_curve = curve(cfg.n_fixed, cfg.k_grid.clone())?;
    let mut n_medians = Vec::new();
    let mut n_failures = Vec::new();
    for &n in &cfg.n_grid {
        let c = curve(n, vec![cfg.k_fixed])?;
        n_medians.push(c.median_value[0]);
        n_failures.push(c.failures[0]);
    }
    let as_f = |v: &[usize]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
    let slope_k = fit_slope(&as_f(&cfg.k_grid), &k_curve.median_value)?;
    let slope_n = fit_slope(&as_f(&cfg.n_grid), &n_medians)?;
    Ok(ScalingResult {
        config: cfg.clone(),
        k_curve,
        n_medians,
        n_failures,
        slope_k,
        slope_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let ks = [2.0, 4.0, 8.0, 16.0];
        let ys: Vec<f64> = ks.iter().map(|k: &f64| 3.0 / k.sqrt()).collect();
        assert!((fit_slope(&ks, &ys).unwrap() + 0.5).abs() <= 1e-12);
        let ns = [64.0, 128.0, 256.0];
        let ys: Vec<f64> = ns.iter().map(|n| 0.7 * n).collect();
        assert!((fit_slope(&ns, &ys).unwrap() - 1.0).abs() <= 1e-12);
        assert!(fit_slope(&ns[..2], &ys[..2]).is_err());
        assert!(fit_slope(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn full_space_fixed_value_is_one() {
        let cfg = BaselineConfig {
            n: 12,
            k_grid: vec![12],
            trials: 5,
            mode: BaselineMode::Fixed,
            seed: 3,
            workers: 1,
        };
        let r = baseline_curve(&cfg).unwrap();
        assert_eq!(r.median_value[0], 1.0);
    }

    #[test]
    fn single_column_closed_form() {
        let cfg = BaselineConfig {
            n: 20,
            k_grid: vec![1],
            trials: 1,
            mode: BaselineMode::Fixed,
            seed: 4,
            workers: 1,
        };
        let r = baseline_curve(&cfg).unwrap();
        let mut stream = trial_stream(4, &[exp_id::BASELINE, 20, 1, 0]);
        let a = pure_random_basis::<f64>(20, 1, &mut stream).unwrap();
        let direct = a.column_vector(0).norm(NormKind::L1) / a[(0, 0)].abs();
        assert!((r.median_value[0] - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn scaling_grid_checks() {
        let mut cfg = ScalingConfig {
            n_fixed: 100,
            k_grid: vec![2, 4, 8],
            k_fixed: 4,
            n_grid: vec![64, 128, 256],
            trials: 2,
            seed: 0,
            workers: 1,
        };
        assert!(cfg.validate().is_err());
        cfg.k_grid = vec![2, 4, 6];
        assert!(cfg.validate().is_ok());
        cfg.n_grid = vec![64, 128];
        assert!(cfg.validate().is_err());
    }
}
