//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a configuration problem (bad flag,
//! value out of range, unwritable output), 2 when the computation itself
//! fails. Configuration errors name the offending flag.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::experiments::{
    self, baseline_curve, grid, phase_diagram, scaling_fit, stability_sweep, BaselineConfig,
    BaselineMode, CurveRow, Experiment, PhaseConfig, RunManifest, ScalingConfig, StabilityConfig,
};
use crate::lp::solve_l1_program;
use crate::models::{
    bernoulli_gaussian, make_test_vector, planted_random, pure_random_basis, read_matrix,
    write_matrix, TestVectorSpec,
};
use crate::numerics::DenseMatrix;
use crate::randomness::RngStream;
use crate::recovery::{
    certificate_terms, certify_exact, certify_stable, judge, recover_all, select, Selector,
};
use crate::{Instance, Matrix, Vector};

const ALL_SELECTORS: &str = "oracle,l1linf,l1l2,tl0,l0";

#[derive(Parser, Debug)]
#[command(
    name = "sparsest",
    version,
    about = "Recover the sparsest vector in a subspace by n coordinate-normalized l1 programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw an instance and write its matrices as text.
    Generate(GenerateArgs),
    /// Solve all n programs on one instance and report the pick.
    Recover(RecoverArgs),
    /// Success probability over a (k, s) grid.
    Phase(PhaseArgs),
    /// Median program values on subspaces with no planted vector.
    Baseline(BaselineArgs),
    /// Log-log slopes of the fixed-index baseline in k and in n.
    Scaling(ScalingArgs),
    /// Median oracle error as the noise level grows.
    Stability(StabilityArgs),
    /// Evaluate the exact and stable recovery certificates on one instance.
    Certify(CertifyArgs),
}

#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    /// Ambient dimension.
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Number of random directions.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Support size of the planted vector.
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Noise level of the planted vector.
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// planted, random (Gaussian basis, n x k) or bernoulli (n x k).
    #[arg(long, default_value = "planted")]
    model: String,
    /// Nonzero probability of the bernoulli model.
    #[arg(long, default_value_t = 0.1)]
    theta: f64,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SelectorArgs {
    /// Comma-separated selectors: oracle, l1linf, l1l2, tl0[=eps], l0[=tol].
    #[arg(long, value_delimiter = ',')]
    selector: Vec<String>,
    /// Threshold of tl0 when given without a value.
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Success tolerance on ||z - v / v(i*)||_2.
    #[arg(long, default_value_t = 0.01)]
    tau: f64,
}

#[derive(Args, Debug)]
struct RecoverArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    #[command(flatten)]
    sel: SelectorArgs,
    /// Basis file to recover from instead of a generated instance (no
    /// ground truth, so no oracle and no success check).
    #[arg(long)]
    basis: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per grid point.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output directory (required).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replay the run recorded in this manifest (other parameters ignored,
    /// except --out and --workers).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PhaseArgs {
    /// Ambient dimension.
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Smallest k.
    #[arg(long, default_value_t = 2)]
    kmin: usize,
    /// Largest k.
    #[arg(long, default_value_t = 16)]
    kmax: usize,
    /// Step in k.
    #[arg(long, default_value_t = 1)]
    kstep: usize,
    /// Smallest s.
    #[arg(long, default_value_t = 1)]
    smin: usize,
    /// Largest s.
    #[arg(long, default_value_t = 24)]
    smax: usize,
    /// Step in s.
    #[arg(long, default_value_t = 1)]
    sstep: usize,
    /// Noise level of the planted vector.
    #[arg(long, default_value_t = 0.01)]
    delta: f64,
    #[command(flatten)]
    sel: SelectorArgs,
    /// Check the necessary condition after every oracle success.
    #[arg(long)]
    audit: bool,
    /// Skip the .pgm heatmaps.
    #[arg(long)]
    no_heatmaps: bool,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct BaselineArgs {
    /// Ambient dimension.
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Smallest k.
    #[arg(long, default_value_t = 2)]
    kmin: usize,
    /// Largest k.
    #[arg(long, default_value_t = 16)]
    kmax: usize,
    /// Step in k.
    #[arg(long, default_value_t = 1)]
    kstep: usize,
    /// fixed (program at index 0) or minratio (smallest l1/linf over all programs).
    #[arg(long, default_value = "fixed")]
    mode: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct ScalingArgs {
    /// Dimension of the sweep over k.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Smallest k.
    #[arg(long, default_value_t = 2)]
    kmin: usize,
    /// Largest k.
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    /// Step in k.
    #[arg(long, default_value_t = 1)]
    kstep: usize,
    /// Subspace dimension of the sweep over n.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Dimensions of the sweep over n.
    #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
    ns: Vec<usize>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    /// Ambient dimension.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Number of random directions.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Support size of the planted vector.
    #[arg(long, default_value_t = 4)]
    s: usize,
    /// Noise levels.
    #[arg(long, value_delimiter = ',', default_value = "0,0.001,0.01,0.1")]
    deltas: Vec<f64>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Margin of the stable certificate.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

enum CliError {
    Config(String),
    Runtime(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn config(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{flag}: {msg}"))
}

fn runtime(e: Error) -> CliError {
    match e {
        Error::Io { .. } => CliError::Config(format!("--out: {e}")),
        e => CliError::Runtime(e.to_string()),
    }
}

/// Parses `argv` (program name first), runs, returns the exit status.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let res = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Recover(a) => recover(a),
        Command::Phase(a) => phase(a),
        Command::Baseline(a) => baseline(a),
        Command::Scaling(a) => scaling(a),
        Command::Stability(a) => stability(a),
        Command::Certify(a) => certify(a),
    };
    match res {
        Ok(()) => 0,
        Err(CliError::Config(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(CliError::Runtime(m)) => {
            eprintln!("error: {m}");
            2
        }
    }
}

fn prepare_out(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| config("--out", format!("cannot create {}: {e}", dir.display())))?;
    let probe = dir.join(".sparsest-probe");
    std::fs::write(&probe, b"").map_err(|e| config("--out", format!("{} is not writable: {e}", dir.display())))?;
    let _ = std::fs::remove_file(probe);
    Ok(())
}

fn run_out(run: &RunArgs) -> CliResult<PathBuf> {
    let out = run.out.clone().ok_or_else(|| config("--out", "an output directory is required"))?;
    prepare_out(&out)?;
    Ok(out)
}

fn check_instance(a: &InstanceArgs) -> CliResult<()> {
    if a.n < 2 {
        return Err(config("--n", "must be at least 2"));
    }
    if a.k == 0 || a.k >= a.n {
        return Err(config("--k", format!("must lie in 1..={}", a.n - 1)));
    }
    if a.s == 0 || a.s > a.n {
        return Err(config("--s", format!("must lie in 1..={}", a.n)));
    }
    if !(a.delta >= 0.0 && a.delta.is_finite()) {
        return Err(config("--delta", "must be finite and nonnegative"));
    }
    Ok(())
}

/// The instance that `generate`, `recover` and `certify` share for a seed.
fn seeded_instance(a: &InstanceArgs) -> CliResult<Instance> {
    let root = RngStream::new(a.seed);
    let v: Vector = make_test_vector(&TestVectorSpec::leading(a.n, a.s, a.delta), &mut root.derive(&[0, 0]))
        .map_err(runtime)?;
    planted_random(&v, a.k, a.s, true, &mut root.derive(&[0, 1])).map_err(runtime)
}

fn parse_selectors(a: &SelectorArgs, default: &str) -> CliResult<Vec<Selector>> {
    if !(a.epsilon > 0.0 && a.epsilon.is_finite()) {
        return Err(config("--epsilon", "must be positive"));
    }
    if !(a.tau > 0.0 && a.tau.is_finite()) {
        return Err(config("--tau", "must be positive"));
    }
    let raw: Vec<String> = if a.selector.is_empty() {
        default.split(',').map(String::from).collect()
    } else {
        a.selector.clone()
    };
    raw.iter()
        .map(|r| {
            if r == "tl0" {
                Ok(Selector::ThresholdedL0 { epsilon: a.epsilon })
            } else {
                r.parse().map_err(|e: Error| config("--selector", e))
            }
        })
        .collect()
}

fn generate(a: GenerateArgs) -> CliResult<()> {
    check_instance(&a.inst)?;
    prepare_out(&a.out)?;
    let write = |name: &str, m: &Matrix| write_matrix(m, &a.out.join(name)).map_err(runtime);
    match a.model.as_str() {
        "planted" => {
            let inst = seeded_instance(&a.inst)?;
            write("basis.txt", &inst.w)?;
            write("vector.txt", &DenseMatrix::from_columns(std::slice::from_ref(&inst.v)).map_err(runtime)?)?;
            write("vtilde.txt", &inst.vtilde)?;
            write("mix.txt", &inst.mix)?;
            let meta = serde_json::json!({
                "n": inst.n, "k": inst.k, "s": a.inst.s, "delta": a.inst.delta,
                "seed": a.inst.seed, "i_star": inst.i_star, "support": inst.support,
            });
            experiments::io::write_atomic(&a.out.join("instance.json"), format!("{meta:#}\n").as_bytes())
                .map_err(runtime)?;
            println!("planted instance n = {} k = {} i* = {} written to {}", inst.n, inst.k, inst.i_star, a.out.display());
        }
        "random" => {
            let b: Matrix = pure_random_basis(a.inst.n, a.inst.k, &mut RngStream::new(a.inst.seed)).map_err(runtime)?;
            write("basis.txt", &b)?;
            println!("random basis {}x{} written to {}", b.rows(), b.cols(), a.out.display());
        }
        "bernoulli" => {
            if !(a.theta > 0.0 && a.theta <= 1.0) {
                return Err(config("--theta", "must lie in (0, 1]"));
            }
            let m: Matrix = bernoulli_gaussian(a.inst.n, a.inst.k, a.theta, &mut RngStream::new(a.inst.seed))
                .map_err(runtime)?;
            write("matrix.txt", &m)?;
            println!("bernoulli-gaussian matrix {}x{} written to {}", m.rows(), m.cols(), a.out.display());
        }
        other => return Err(config("--model", format!("unknown model {other:?} (planted, random, bernoulli)"))),
    }
    Ok(())
}

fn recover(a: RecoverArgs) -> CliResult<()> {
    let selectors = parse_selectors(&a.sel, "l1linf")?;
    if let Some(path) = &a.basis {
        if selectors.contains(&Selector::Oracle) {
            return Err(config("--selector", "oracle needs a generated instance, not --basis"));
        }
        let w: Matrix = read_matrix(path).map_err(|e| config("--basis", e))?;
        if w.cols() == 0 || w.cols() > w.rows() {
            return Err(config("--basis", format!("need 1 <= d <= n columns, got {}x{}", w.rows(), w.cols())));
        }
        let cands = recover_all(&w).map_err(runtime)?;
        for sel in &selectors {
            let pick = select(&cands, sel, None).map_err(runtime)?;
            println!(
                "selector {sel}: chosen index {}, score {:.6e}",
                pick.chosen_index, pick.scores[pick.chosen_index]
            );
        }
        return Ok(());
    }
    check_instance(&a.inst)?;
    let inst = seeded_instance(&a.inst)?;
    let cands = recover_all(&inst.w).map_err(runtime)?;
    println!("instance n = {} k = {} s = {} i* = {}", inst.n, inst.k, a.inst.s, inst.i_star);
    for sel in &selectors {
        let out = judge(&cands, sel, &inst.v, a.sel.tau).map_err(runtime)?;
        println!(
            "selector {sel}: chosen index {}, error {:.6e}, success {}",
            out.chosen_index, out.error, out.success
        );
    }
    Ok(())
}

/// Loads a manifest for replay and checks it belongs to `kind`.
fn replay(run: &RunArgs, kind: &str) -> CliResult<Option<Experiment>> {
    let Some(path) = &run.manifest else {
        return Ok(None);
    };
    let m = experiments::read_manifest(path).map_err(|e| config("--manifest", e))?;
    let got = match &m.experiment {
        Experiment::Phase(_) => "phase",
        Experiment::Baseline(_) => "baseline",
        Experiment::Scaling(_) => "scaling",
        Experiment::Stability(_) => "stability",
    };
    if got != kind {
        return Err(config("--manifest", format!("records a {got} run, not {kind}")));
    }
    Ok(Some(m.experiment))
}

fn check_run(run: &RunArgs) -> CliResult<()> {
    if run.trials == 0 {
        return Err(config("--trials", "must be at least 1"));
    }
    if run.workers == 0 {
        return Err(config("--workers", "must be at least 1"));
    }
    Ok(())
}

fn axis(lo: usize, hi: usize, step: usize, flag: &str) -> CliResult<Vec<usize>> {
    grid(lo, hi, step).map_err(|e| config(flag, e))
}

fn save_manifest(dir: &Path, m: &RunManifest) -> CliResult<()> {
    experiments::write_manifest(&dir.join("manifest.json"), m).map_err(runtime)
}

fn phase(a: PhaseArgs) -> CliResult<()> {
    let mut cfg = match replay(&a.run, "phase")? {
        Some(Experiment::Phase(c)) => c,
        _ => {
            check_run(&a.run)?;
            let selectors = parse_selectors(&a.sel, ALL_SELECTORS)?;
            if a.n < 2 {
                return Err(config("--n", "must be at least 2"));
            }
            let k_grid = axis(a.kmin, a.kmax, a.kstep, "--kmin/--kmax/--kstep")?;
            if k_grid[0] == 0 || a.kmax >= a.n {
                return Err(config("--kmax", format!("k must lie in 1..={}", a.n - 1)));
            }
            let s_grid = axis(a.smin, a.smax, a.sstep, "--smin/--smax/--sstep")?;
            if s_grid[0] == 0 || a.smax > a.n {
                return Err(config("--smax", format!("s must lie in 1..={}", a.n)));
            }
            if !(a.delta >= 0.0 && a.delta.is_finite()) {
                return Err(config("--delta", "must be finite and nonnegative"));
            }
            PhaseConfig {
                n: a.n,
                k_grid,
                s_grid,
                trials: a.run.trials,
                delta: a.delta,
                tau: a.sel.tau,
                selectors,
                seed: a.run.seed,
                audit: a.audit,
                workers: a.run.workers,
            }
        }
    };
    cfg.workers = a.run.workers;
    cfg.validate().map_err(|e| config("--manifest", e))?;
    let out = run_out(&a.run)?;
    let r = phase_diagram(&cfg).map_err(runtime)?;
    experiments::write_phase_csv(&out.join("phase.csv"), &r).map_err(runtime)?;
    if !a.no_heatmaps {
        experiments::write_phase_heatmaps(&out, &r).map_err(runtime)?;
    }
    let mut m = RunManifest::new(Experiment::Phase(cfg.clone()));
    let failures: usize = r.rows().iter().map(|row| row.failures_numerical).sum();
    m.note("failures_numerical", failures);
    m.note("candidate_failures", r.candidate_failures);
    if let Some(audit) = r.audit {
        m.note("audit_checked", audit.checked);
        m.note("audit_violations", audit.violations);
        m.note("audit_skipped", audit.skipped);
    }
    save_manifest(&out, &m)?;
    println!(
        "phase diagram: {} selectors x {} k x {} s, {} trials; written to {}",
        cfg.selectors.len(),
        cfg.k_grid.len(),
        cfg.s_grid.len(),
        cfg.trials,
        out.display()
    );
    if let Some(audit) = r.audit {
        println!("audit: {} checked, {} violations", audit.checked, audit.violations);
    }
    Ok(())
}

fn baseline(a: BaselineArgs) -> CliResult<()> {
    let mut cfg = match replay(&a.run, "baseline")? {
        Some(Experiment::Baseline(c)) => c,
        _ => {
            check_run(&a.run)?;
            let mode: BaselineMode = a.mode.parse().map_err(|e| config("--mode", e))?;
            let k_grid = axis(a.kmin, a.kmax, a.kstep, "--kmin/--kmax/--kstep")?;
            if k_grid[0] == 0 || a.kmax > a.n {
                return Err(config("--kmax", format!("k must lie in 1..={}", a.n)));
            }
            BaselineConfig {
                n: a.n,
                k_grid,
                trials: a.run.trials,
                mode,
                seed: a.run.seed,
                workers: a.run.workers,
            }
        }
    };
    cfg.workers = a.run.workers;
    cfg.validate().map_err(|e| config("--manifest", e))?;
    let out = run_out(&a.run)?;
    let r = baseline_curve(&cfg).map_err(runtime)?;
    let rows: Vec<CurveRow> = cfg
        .k_grid
        .iter()
        .zip(&r.median_value)
        .map(|(&k, &v)| CurveRow { x: k, trials: cfg.trials, median_value: v })
        .collect();
    experiments::write_curve_csv(&out.join("baseline.csv"), "k", &rows).map_err(runtime)?;
    let mut m = RunManifest::new(Experiment::Baseline(cfg.clone()));
    m.note("failures", r.failures.iter().sum::<usize>());
    m.note("median_score", r.median_score.clone());
    save_manifest(&out, &m)?;
    for row in &rows {
        println!("k = {:3}: median {:.6}", row.x, row.median_value);
    }
    Ok(())
}

fn scaling(a: ScalingArgs) -> CliResult<()> {
    let mut cfg = match replay(&a.run, "scaling")? {
        Some(Experiment::Scaling(c)) => c,
        _ => {
            check_run(&a.run)?;
            ScalingConfig {
                n_fixed: a.n,
                k_grid: axis(a.kmin, a.kmax, a.kstep, "--kmin/--kmax/--kstep")?,
                k_fixed: a.k,
                n_grid: a.ns.clone(),
                trials: a.run.trials,
                seed: a.run.seed,
                workers: a.run.workers,
            }
        }
    };
    cfg.workers = a.run.workers;
    cfg.validate().map_err(|e| config("--kmax/--ns/--k", e))?;
    let out = run_out(&a.run)?;
    let r = scaling_fit(&cfg).map_err(runtime)?;
    let k_rows: Vec<CurveRow> = cfg
        .k_grid
        .iter()
        .zip(&r.k_curve.median_value)
        .map(|(&k, &v)| CurveRow { x: k, trials: cfg.trials, median_value: v })
        .collect();
    let n_rows: Vec<CurveRow> = cfg
        .n_grid
        .iter()
        .zip(&r.n_medians)
        .map(|(&n, &v)| CurveRow { x: n, trials: cfg.trials, median_value: v })
        .collect();
    experiments::write_curve_csv(&out.join("scaling_k.csv"), "k", &k_rows).map_err(runtime)?;
    experiments::write_curve_csv(&out.join("scaling_n.csv"), "n", &n_rows).map_err(runtime)?;
    let mut m = RunManifest::new(Experiment::Scaling(cfg.clone()));
    m.note("slope_k", r.slope_k);
    m.note("slope_n", r.slope_n);
    save_manifest(&out, &m)?;
    println!("slope vs k at n = {}: {:.4}", cfg.n_fixed, r.slope_k);
    println!("slope vs n at k = {}: {:.4}", cfg.k_fixed, r.slope_n);
    Ok(())
}

fn stability(a: StabilityArgs) -> CliResult<()> {
    let mut cfg = match replay(&a.run, "stability")? {
        Some(Experiment::Stability(c)) => c,
        _ => {
            check_run(&a.run)?;
            StabilityConfig {
                n: a.n,
                k: a.k,
                s: a.s,
                delta_grid: a.deltas.clone(),
                trials: a.run.trials,
                seed: a.run.seed,
                workers: a.run.workers,
            }
        }
    };
    cfg.workers = a.run.workers;
    cfg.validate().map_err(|e| config("--n/--k/--s/--deltas", e))?;
    let out = run_out(&a.run)?;
    let r = stability_sweep(&cfg).map_err(runtime)?;
    experiments::write_stability_csv(&out.join("stability.csv"), &r).map_err(runtime)?;
    let mut m = RunManifest::new(Experiment::Stability(cfg.clone()));
    m.note("failures", r.failures.iter().sum::<usize>());
    save_manifest(&out, &m)?;
    for (i, d) in cfg.delta_grid.iter().enumerate() {
        println!("delta = {d:<8} median error {:.6e}  error/delta {:.6}", r.median_error[i], r.ratio[i]);
    }
    Ok(())
}

fn certify(a: CertifyArgs) -> CliResult<()> {
    check_instance(&a.inst)?;
    if !(a.alpha > 0.0 && a.alpha.is_finite()) {
        return Err(config("--alpha", "must be positive"));
    }
    if a.inst.k > crate::lp::MAX_EXACT_GAIN_COLS {
        return Err(config("--k", format!("certificates need k <= {}", crate::lp::MAX_EXACT_GAIN_COLS)));
    }
    let inst = seeded_instance(&a.inst)?;
    let terms = certificate_terms(&inst.v, &inst.vtilde, &inst.support).map_err(runtime)?;
    println!("instance n = {} k = {} s = {} i* = {}", inst.n, inst.k, a.inst.s, inst.i_star);
    println!(
        "inside norm {:.6} (bound {}), outside gain {:.6}, |a|_inf {:.6}, tail {:.6e}",
        terms.inside_norm,
        2 * terms.s,
        terms.outside_gain,
        terms.a_inf,
        terms.tail
    );
    if terms.tail == 0.0 {
        let exact = certify_exact(&inst.v, &inst.vtilde, &inst.support).map_err(runtime)?;
        println!("exact certificate: {exact}");
    }
    match certify_stable(&inst.v, &inst.vtilde, &inst.support, a.alpha).map_err(runtime)? {
        Some(b) => println!("stable certificate (alpha = {}): |x0 - 1| <= {:.6e}, |x_rest|_1 <= {:.6e}", a.alpha, b.b1, b.b2),
        None => println!("stable certificate (alpha = {}): hypotheses fail", a.alpha),
    }
    let sol = solve_l1_program(&inst.w, inst.i_star).map_err(runtime)?;
    if sol.is_optimal() {
        let err = sol.z.sub(&inst.target()).norm(crate::numerics::NormKind::L2);
        println!("program at i*: objective {:.6}, error {:.6e}", sol.objective, err);
    } else {
        println!("program at i*: {:?}", sol.status);
    }
    Ok(())
}
