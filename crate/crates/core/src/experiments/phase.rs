use serde::{Deserialize, Serialize};

use super::{exp_id, role, run_indexed, trial_stream};
use crate::error::{Error, Result};
use crate::models::{make_test_vector, planted_random, TestVectorSpec};
use crate::numerics::{DenseVector, NormKind};
use crate::recovery::{judge, necessary_condition_value, recover_all, Selector, DEFAULT_TAU};

/// Slack on the necessary-condition audit.
pub const AUDIT_TOL: f64 = 1e-6;

fn default_workers() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseConfig {
    pub n: usize,
    pub k_grid: Vec<usize>,
    pub s_grid: Vec<usize>,
    pub trials: usize,
    pub delta: f64,
    pub tau: f64,
    pub selectors: Vec<Selector>,
    pub seed: u64,
    pub audit: bool,
    #[serde(default = "default_workers")]
    pub workers: usize,
}

impl PhaseConfig {
    /// Defaults: `delta = tau = 0.01`, all five selectors, no audit.
    pub fn new(n: usize, k_grid: Vec<usize>, s_grid: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            n,
            k_grid,
            s_grid,
            trials,
            delta: 0.01,
            tau: DEFAULT_TAU,
            selectors: vec![
                Selector::Oracle,
                Selector::L1OverLinf,
                Selector::L1OverL2,
                Selector::thresholded(),
                Selector::strict(),
            ],
            seed,
            audit: false,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.n < 2 {
            return bad(format!("n must be at least 2, got {}", self.n));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.k_grid.is_empty() || self.s_grid.is_empty() {
            return bad("k and s grids must be nonempty".into());
        }
        if let Some(&k) = self.k_grid.iter().find(|&&k| k == 0 || k >= self.n) {
            return bad(format!("k = {k} outside 1..={}", self.n - 1));
        }
        if let Some(&s) = self.s_grid.iter().find(|&&s| s == 0 || s > self.n) {
            return bad(format!("s = {s} outside 1..={}", self.n));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return bad(format!("delta must be nonnegative, got {}", self.delta));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return bad(format!("tau must be positive, got {}", self.tau));
        }
        if self.selectors.is_empty() {
            return bad("at least one selector is required".into());
        }
        for s in &self.selectors {
            s.validate()?;
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    /// Trials where the oracle pick succeeded and the condition was checked.
    pub checked: usize,
    pub violations: usize,
    /// Trials whose reference program could not be solved.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseDiagramResult {
    pub config: PhaseConfig,
    /// `[selector][k][s]`, flattened.
    successes: Vec<usize>,
    failures_numerical: Vec<usize>,
    /// Programs that ended in `NumericalFailure`, over all trials.
    pub candidate_failures: usize,
    pub audit: Option<AuditReport>,
}

impl PhaseDiagramResult {
    fn at(&self, sel: usize, ki: usize, si: usize) -> usize {
        (sel * self.config.k_grid.len() + ki) * self.config.s_grid.len() + si
    }

    pub fn successes(&self, sel: usize, ki: usize, si: usize) -> usize {
        self.successes[self.at(sel, ki, si)]
    }

    pub fn failures_numerical(&self, sel: usize, ki: usize, si: usize) -> usize {
        self.failures_numerical[self.at(sel, ki, si)]
    }

    pub fn probability(&self, sel: usize, ki: usize, si: usize) -> f64 {
        self.successes(sel, ki, si) as f64 / self.config.trials as f64
    }

    /// Index of `selector` in the configured list.
    pub fn selector_index(&self, selector: &Selector) -> Option<usize> {
        self.config.selectors.iter().position(|s| s == selector)
    }
}

struct TrialRecord {
    success: Vec<bool>,
    numerical: Vec<bool>,
    candidate_failures: usize,
    /// `Some(violated)` when the audit ran.
    audit: Option<Option<bool>>,
}

fn run_trial(cfg: &PhaseConfig, k: usize, s: usize, trial: usize) -> TrialRecord {
    let nsel = cfg.selectors.len();
    let failed = TrialRecord {
        success: vec![false; nsel],
        numerical: vec![true; nsel],
        candidate_failures: 0,
        audit: None,
    };
    let label = |r| [exp_id::PHASE, k as u64, s as u64, trial as u64, r];
    let spec = TestVectorSpec::leading(cfg.n, s, cfg.delta);
    let Ok(v) = make_test_vector::<f64>(&spec, &mut trial_stream(cfg.seed, &label(role::VECTOR)))
    else {
        return failed;
    };
    let Ok(inst) = planted_random(&v, k, s, true, &mut trial_stream(cfg.seed, &label(role::SUBSPACE)))
    else {
        return failed;
    };
    let Ok(cands) = recover_all(&inst.w) else {
        return failed;
    };
    let candidate_failures = cands
        .iter()
        .filter(|c| c.solution.status == crate::lp::SolveStatus::NumericalFailure)
        .count();
    let mut rec = TrialRecord {
        success: vec![false; nsel],
        numerical: vec![false; nsel],
        candidate_failures,
        audit: None,
    };
    for (j, sel) in cfg.selectors.iter().enumerate() {
        match judge(&cands, sel, &v, cfg.tau) {
            Ok(out) => rec.success[j] = out.success,
            Err(_) => rec.numerical[j] = true,
        }
    }
    if cfg.audit {
        rec.audit = audit_trial(&cands, &inst.vtilde, &v, inst.i_star, cfg.tau);
    }
    rec
}

/// Checks `||v_hat||_1 <= nc + tol + ||z - v_hat||_1` after an oracle
/// success, `v_hat = v / v(i*)` and `nc` the minimum over the random span
/// alone. With `z = v_hat` this is the exact-recovery condition.
fn audit_trial(
    cands: &[crate::recovery::CandidateSolution<f64>],
    vtilde: &crate::numerics::DenseMatrix<f64>,
    v: &DenseVector<f64>,
    i_star: usize,
    tau: f64,
) -> Option<Option<bool>> {
    let out = judge(cands, &Selector::Oracle, v, tau).ok()?;
    if !out.success {
        return None;
    }
    let Ok(nc) = necessary_condition_value(vtilde, i_star) else {
        return Some(None);
    };
    let v_hat = v.scaled(1.0 / v[i_star]);
    let slack = out.z_hat.sub(&v_hat).norm(NormKind::L1);
    Some(Some(v_hat.norm(NormKind::L1) > nc + AUDIT_TOL + slack))
}

/// Success counts over the `(k, s)` grid for each selector.
///
/// All selectors judge the same `n` candidates of a trial. A trial whose
/// pick cannot be made (generation failure, or no usable program) counts
/// as a failure and is tallied in `failures_numerical`.
pub fn phase_diagram(cfg: &PhaseConfig) -> Result<PhaseDiagramResult> {
    cfg.validate()?;
    let (nk, ns, nt) = (cfg.k_grid.len(), cfg.s_grid.len(), cfg.trials);
    let records = run_indexed(cfg.workers, nk * ns * nt, |task| {
        let (ki, rest) = (task / (ns * nt), task % (ns * nt));
        let (si, t) = (rest / nt, rest % nt);
        run_trial(cfg, cfg.k_grid[ki], cfg.s_grid[si], t)
    })?;
    let nsel = cfg.selectors.len();
    let mut res = PhaseDiagramResult {
        config: cfg.clone(),
        successes: vec![0; nsel * nk * ns],
        failures_numerical: vec![0; nsel * nk * ns],
        candidate_failures: 0,
        audit: cfg.audit.then(AuditReport::default),
    };
    for (task, rec) in records.iter().enumerate() {
        let (ki, si) = (task / (ns * nt), (task % (ns * nt)) / nt);
        for j in 0..nsel {
            let at = res.at(j, ki, si);
            res.successes[at] += rec.success[j] as usize;
            res.failures_numerical[at] += rec.numerical[j] as usize;
        }
        res.candidate_failures += rec.candidate_failures;
        if let (Some(report), Some(a)) = (res.audit.as_mut(), rec.audit) {
            match a {
                Some(violated) => {
                    report.checked += 1;
                    report.violations += violated as usize;
                }
                None => report.skipped += 1,
            }
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_rejected() {
        let cfg = PhaseConfig::new(16, vec![1], vec![1], 0, 1);
        assert!(phase_diagram(&cfg).is_err());
        let mut cfg = PhaseConfig::new(16, vec![16], vec![1], 2, 1);
        assert!(cfg.validate().is_err());
        cfg.k_grid = vec![2];
        cfg.s_grid = vec![17];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn easy_corner_always_succeeds() {
        let mut cfg = PhaseConfig::new(32, vec![1], vec![1], 20, 11);
        cfg.delta = 0.0;
        cfg.selectors = vec![Selector::Oracle];
        cfg.audit = true;
        let r = phase_diagram(&cfg).unwrap();
        assert_eq!(r.probability(0, 0, 0), 1.0);
        let audit = r.audit.unwrap();
        assert_eq!((audit.checked, audit.violations), (20, 0));
    }

    #[test]
    fn dense_vector_never_recovered() {
        let mut cfg = PhaseConfig::new(32, vec![8], vec![32], 6, 12);
        cfg.workers = 2;
        let r = phase_diagram(&cfg).unwrap();
        for j in 0..cfg.selectors.len() {
            assert_eq!(r.successes(j, 0, 0), 0, "selector {}", cfg.selectors[j]);
        }
    }
}
