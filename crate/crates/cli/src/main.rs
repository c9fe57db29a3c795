//! `claimcheck` — command-line front end for the false-outperformance-claim
//! models: single-comparison probabilities, (n, Δ) grid sweeps with CSV/SVG
//! emission, spread calibration, batch claim audits, and the built-in
//! seed-variance dataset.
//!
//! Exit codes: 0 success, 1 partial failure (audit rows skipped),
//! 2 validation error, 3 IO error. Probabilities print with 4 decimals;
//! CSV artifacts carry full double precision.

mod audit;
mod config;
mod csvio;
mod deltas;
mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use claimcheck::{
    calibrate_s_trace, clf_false_claim_underspec_stats, compare_grids, run_grid, seg_false_claim_prob,
    CalibrationSpec, ClfComparison, ClfParams, FixedParams, GridSpec, ModelParams, SegComparison,
    SegParams, Task,
};

use audit::AuditOptions;
use config::{defaults, Config};

/// Failures that abort a command, mapped onto process exit codes:
/// validation problems exit 2, IO problems exit 3. (Partial audit failure
/// exits 1 and is reported by the audit command itself.)
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
}

impl From<claimcheck::Error> for CliError {
    fn from(e: claimcheck::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "claimcheck",
    version,
    about = "Probability that a claimed model improvement is a false outperformance claim"
)]
struct Cli {
    /// Seed for all stochastic paths.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML configuration file mirroring the flags (flags take precedence).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Probability threshold separating OK from CONCERNING verdicts.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// False-claim probability for a single reported comparison.
    #[command(subcommand)]
    Prob(ProbCommand),
    /// Sweep the (n, Δ) plane; write grid/contour CSVs and an SVG heatmap.
    Grid(GridArgs),
    /// Fit the spread parameter s to reference probabilities.
    Calibrate(CalibrateArgs),
    /// Annotate a CSV of claimed improvements with false-claim probabilities.
    Audit(AuditArgs),
    /// Print the built-in seed-variance dataset behind the default delta.
    Deltas,
}

#[derive(Subcommand)]
enum ProbCommand {
    /// Segmentation: paired comparison of mean scores.
    Seg(ProbSegArgs),
    /// Classification: paired comparison of accuracies.
    Clf(ProbClfArgs),
}

#[derive(Args)]
struct ProbSegArgs {
    /// Observed mean score of method A (the claimed-better method).
    #[arg(long)]
    mu_a: f64,
    /// Observed mean score of method B.
    #[arg(long)]
    mu_b: f64,
    /// Number of test cases.
    #[arg(long)]
    n: u32,
    /// Per-case score spread of both methods.
    #[arg(long)]
    spread: Option<f64>,
    /// Per-case spread of method A alone (overrides --spread).
    #[arg(long)]
    spread_a: Option<f64>,
    /// Per-case spread of method B alone (overrides --spread).
    #[arg(long)]
    spread_b: Option<f64>,
    /// Per-case score correlation between the methods.
    #[arg(long)]
    corr: Option<f64>,
    /// Run-to-run (seed) standard deviation of both reported means.
    #[arg(long)]
    delta: Option<f64>,
    /// Seed standard deviation of method A alone (overrides --delta).
    #[arg(long)]
    delta_a: Option<f64>,
    /// Seed standard deviation of method B alone (overrides --delta).
    #[arg(long)]
    delta_b: Option<f64>,
}

#[derive(Args)]
struct ProbClfArgs {
    /// Observed accuracy of method A (the claimed-better method).
    #[arg(long)]
    acc_a: f64,
    /// Observed accuracy of method B.
    #[arg(long)]
    acc_b: f64,
    /// Number of test cases.
    #[arg(long)]
    n: u32,
    /// Probability that both classifiers are correct on the same case.
    #[arg(long)]
    congruence: Option<f64>,
    /// Dirichlet prior weights for the four table cells (n11,n10,n01,n00).
    #[arg(long, value_delimiter = ',', num_args = 4)]
    prior: Option<Vec<f64>>,
    /// Run-to-run (seed) standard deviation of both reported accuracies.
    #[arg(long)]
    delta: Option<f64>,
    /// Seed standard deviation of method A alone (overrides --delta).
    #[arg(long)]
    delta_a: Option<f64>,
    /// Seed standard deviation of method B alone (overrides --delta).
    #[arg(long)]
    delta_b: Option<f64>,
    /// Outer perturbation draws (used when delta > 0).
    #[arg(long)]
    outer: Option<u32>,
    /// Inner Monte Carlo draws (used with --inner-mc).
    #[arg(long)]
    mc_samples: Option<u32>,
    /// Estimate the inner posterior by Monte Carlo instead of the exact
    /// incomplete-beta path.
    #[arg(long)]
    inner_mc: bool,
}

#[derive(Args)]
struct GridArgs {
    /// Task family: seg(mentation) or clf/classification.
    #[arg(long)]
    task: Task,
    /// Comma-separated test-set sizes (default: 30 log-spaced in [10, 10000]).
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<u32>>,
    /// Comma-separated observed differences (default: 50 linear in [0, 0.10]).
    #[arg(long, value_delimiter = ',')]
    delta_values: Option<Vec<f64>>,
    /// Run-to-run (seed) standard deviation applied to both methods.
    #[arg(long)]
    delta: Option<f64>,
    /// Segmentation: per-case score spread of both methods.
    #[arg(long)]
    spread: Option<f64>,
    /// Segmentation: per-case score correlation.
    #[arg(long)]
    corr: Option<f64>,
    /// Classification: congruence p11.
    #[arg(long)]
    congruence: Option<f64>,
    /// Classification: baseline accuracy of method B.
    #[arg(long)]
    baseline: Option<f64>,
    /// Classification: outer perturbation draws per cell.
    #[arg(long)]
    outer: Option<u32>,
    /// Grid CSV output path.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Contour CSV output path.
    #[arg(long, value_name = "PATH")]
    contour_out: Option<PathBuf>,
    /// Heatmap SVG output path.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Also sweep the delta = 0 baseline: print the contour-shift table and
    /// overlay the baseline contour (dashed) in the SVG.
    #[arg(long)]
    with_baseline: bool,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Task family: seg(mentation) or clf/classification.
    #[arg(long)]
    task: Task,
    /// Reference CSV with header n,delta,target_prob.
    #[arg(long, value_name = "PATH")]
    refs: PathBuf,
    /// Lower end of the s search range.
    #[arg(long)]
    s_min: f64,
    /// Upper end of the s search range.
    #[arg(long)]
    s_max: f64,
    /// Number of grid candidates (uniform over [s-min, s-max]).
    #[arg(long)]
    steps: u32,
    /// Add a half-step refinement pass around the grid optimum.
    #[arg(long)]
    refine: bool,
    /// Per-candidate SSE trace CSV output path.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Segmentation: per-case score correlation.
    #[arg(long)]
    corr: Option<f64>,
    /// Classification: congruence p11.
    #[arg(long)]
    congruence: Option<f64>,
    /// Run-to-run (seed) standard deviation of both methods.
    #[arg(long)]
    delta: Option<f64>,
    /// Classification: outer perturbation draws (when delta > 0).
    #[arg(long)]
    outer: Option<u32>,
}

#[derive(Args)]
struct AuditArgs {
    /// Input CSV with header task,mu_a,mu_b,n,spread_or_congruence,delta_a,delta_b.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Annotated output CSV path.
    #[arg(long, value_name = "PATH")]
    output: PathBuf,
    /// Segmentation rows: per-case score correlation.
    #[arg(long)]
    corr: Option<f64>,
    /// Classification rows: Dirichlet prior weights (n11,n10,n01,n00).
    #[arg(long, value_delimiter = ',', num_args = 4)]
    prior: Option<Vec<f64>>,
    /// Classification rows: outer perturbation draws.
    #[arg(long)]
    outer: Option<u32>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(CliError::Validation(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(CliError::Io(message)) => {
            eprintln!("error: {message}");
            std::process::exit(3);
        }
    }
}

/// flag > config file > built-in default.
fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn prior_array(flag: Option<Vec<f64>>, file: Option<[f64; 4]>) -> [f64; 4] {
    match flag {
        Some(values) => {
            let mut prior = [0.0; 4];
            prior.copy_from_slice(&values);
            prior
        }
        None => file.unwrap_or(defaults::CLF_PRIOR),
    }
}

fn verdict(p: f64, threshold: f64) -> &'static str {
    if p >= threshold {
        "CONCERNING"
    } else {
        "OK"
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = Config::load(cli.config.as_deref())?;
    let seed = pick(cli.seed, cfg.seed, defaults::SEED);
    let threshold = pick(cli.threshold, cfg.threshold, defaults::THRESHOLD);
    if !(0.0..=1.0).contains(&threshold) {
        return Err(CliError::Validation(format!(
            "threshold must lie in [0, 1], got {threshold}"
        )));
    }
    if let Some(workers) = cli.workers.or(cfg.workers) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| CliError::Validation(format!("cannot set worker count: {e}")))?;
    }
    match cli.command {
        Command::Prob(ProbCommand::Seg(args)) => cmd_prob_seg(&args, &cfg, threshold),
        Command::Prob(ProbCommand::Clf(args)) => cmd_prob_clf(&args, &cfg, threshold, seed),
        Command::Grid(args) => cmd_grid(&args, &cfg, threshold, seed),
        Command::Calibrate(args) => cmd_calibrate(&args, &cfg, seed),
        Command::Audit(args) => cmd_audit(&args, &cfg, threshold, seed),
        Command::Deltas => {
            print!("{}", deltas::render());
            Ok(0)
        }
    }
}

fn seg_params_from(
    spread: Option<f64>,
    spread_a: Option<f64>,
    spread_b: Option<f64>,
    corr: Option<f64>,
    delta: Option<f64>,
    delta_a: Option<f64>,
    delta_b: Option<f64>,
    cfg: &Config,
) -> SegParams {
    let spread = pick(spread, cfg.seg.spread, defaults::SEG_SPREAD);
    let delta = delta.unwrap_or(0.0);
    SegParams {
        s_a: spread_a.unwrap_or(spread),
        s_b: spread_b.unwrap_or(spread),
        r_ab: pick(corr, cfg.seg.corr, defaults::SEG_CORR),
        delta_a: delta_a.unwrap_or(delta),
        delta_b: delta_b.unwrap_or(delta),
    }
}

fn cmd_prob_seg(args: &ProbSegArgs, cfg: &Config, threshold: f64) -> Result<i32, CliError> {
    let params = seg_params_from(
        args.spread,
        args.spread_a,
        args.spread_b,
        args.corr,
        args.delta,
        args.delta_a,
        args.delta_b,
        cfg,
    );
    let cmp = SegComparison {
        mu_hat_a: args.mu_a,
        mu_hat_b: args.mu_b,
        n: args.n,
    };
    let outcome = seg_false_claim_prob(&cmp, &params)?;
    let p = outcome.prob.value();
    println!("task = segmentation");
    println!("p_false = {p:.4}");
    println!("verdict = {} (threshold {threshold})", verdict(p, threshold));
    if outcome.degenerate {
        println!("note = degenerate comparison: zero standard error");
    }
    if params.delta_a > 0.0 || params.delta_b > 0.0 {
        let baseline = seg_false_claim_prob(
            &cmp,
            &SegParams {
                delta_a: 0.0,
                delta_b: 0.0,
                ..params
            },
        )?;
        println!(
            "p_false_baseline = {:.4} (delta = 0)",
            baseline.prob.value()
        );
    }
    Ok(0)
}

fn cmd_prob_clf(
    args: &ProbClfArgs,
    cfg: &Config,
    threshold: f64,
    seed: u64,
) -> Result<i32, CliError> {
    let delta = args.delta.unwrap_or(0.0);
    let params = ClfParams {
        congruence_p11: pick(args.congruence, cfg.clf.congruence, defaults::CLF_CONGRUENCE),
        prior_alphas: prior_array(args.prior.clone(), cfg.clf.prior),
        delta_a: args.delta_a.unwrap_or(delta),
        delta_b: args.delta_b.unwrap_or(delta),
        mc_samples: pick(args.mc_samples, cfg.clf.mc_samples, defaults::CLF_MC_SAMPLES),
        outer_samples: pick(args.outer, cfg.clf.outer_samples, defaults::CLF_OUTER_SAMPLES),
        inner_mc: args.inner_mc,
        seed,
    };
    let cmp = ClfComparison {
        p_hat_a: args.acc_a,
        p_hat_b: args.acc_b,
        n: args.n,
    };
    let estimate = clf_false_claim_underspec_stats(&cmp, &params)?;
    let p = estimate.prob.value();
    println!("task = classification");
    println!("p_false = {p:.4}");
    println!("verdict = {} (threshold {threshold})", verdict(p, threshold));
    if estimate.mc_se > 0.0 {
        println!("mc_se = {:.4}", estimate.mc_se);
    }
    if params.delta_a > 0.0 || params.delta_b > 0.0 {
        let baseline = clf_false_claim_underspec_stats(
            &cmp,
            &ClfParams {
                delta_a: 0.0,
                delta_b: 0.0,
                ..params
            },
        )?;
        println!(
            "p_false_baseline = {:.4} (delta = 0)",
            baseline.prob.value()
        );
    }
    Ok(0)
}

fn cmd_grid(args: &GridArgs, cfg: &Config, threshold: f64, seed: u64) -> Result<i32, CliError> {
    let delta_seed = args.delta.unwrap_or(0.0);
    let baseline = pick(args.baseline, cfg.clf.baseline, defaults::CLF_BASELINE);
    let params = |delta: f64| match args.task {
        Task::Segmentation => ModelParams::Seg(seg_params_from(
            args.spread,
            None,
            None,
            args.corr,
            Some(delta),
            None,
            None,
            cfg,
        )),
        Task::Classification => ModelParams::Clf(ClfParams {
            congruence_p11: pick(args.congruence, cfg.clf.congruence, defaults::CLF_CONGRUENCE),
            prior_alphas: prior_array(None, cfg.clf.prior),
            delta_a: delta,
            delta_b: delta,
            mc_samples: pick(None, cfg.clf.mc_samples, defaults::CLF_MC_SAMPLES),
            outer_samples: pick(args.outer, cfg.clf.outer_samples, defaults::CLF_OUTER_SAMPLES),
            inner_mc: false,
            seed,
        }),
    };
    let spec_for = |delta: f64| {
        GridSpec::new(
            args.task,
            args.n_values
                .clone()
                .unwrap_or_else(claimcheck::grid::default_n_values),
            args.delta_values
                .clone()
                .unwrap_or_else(claimcheck::grid::default_delta_values),
            baseline,
            params(delta),
            threshold,
        )
    };
    let result = run_grid(&spec_for(delta_seed)?)?;
    csvio::write_grid_csv(&args.out, &result, delta_seed)?;
    println!(
        "grid: {} cells ({} delta x {} n), task {}, delta_seed {delta_seed}",
        result.delta_values.len() * result.n_values.len(),
        result.delta_values.len(),
        result.n_values.len(),
        result.task,
    );
    println!("wrote {}", args.out.display());
    if let Some(path) = &args.contour_out {
        csvio::write_contour_csv(path, &result)?;
        println!("wrote {}", path.display());
    }

    let comparison = if args.with_baseline && delta_seed > 0.0 {
        Some(run_grid(&spec_for(0.0)?)?)
    } else {
        None
    };
    if let Some(base) = &comparison {
        println!("contour shift at threshold {threshold} (baseline delta = 0):");
        println!("n, delta_baseline, delta_underspec, shift");
        for row in compare_grids(base, &result)? {
            let fmt = |v: Option<f64>| v.map_or("-".to_string(), |d| format!("{d:.4}"));
            println!(
                "{}, {}, {}, {}",
                row.n,
                fmt(row.baseline),
                fmt(row.underspec),
                fmt(row.shift)
            );
        }
    }
    if let Some(path) = &args.svg {
        let title = format!(
            "{}: p(false claim), delta_seed = {delta_seed}, threshold = {threshold}",
            result.task
        );
        svg::write_svg(path, &result, comparison.as_ref(), &title)?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn cmd_calibrate(args: &CalibrateArgs, cfg: &Config, seed: u64) -> Result<i32, CliError> {
    let refs = csvio::read_reference_csv(&args.refs)?;
    let delta = args.delta.unwrap_or(0.0);
    let fixed = match args.task {
        Task::Segmentation => FixedParams::Seg {
            r_ab: pick(args.corr, cfg.seg.corr, defaults::SEG_CORR),
            delta_a: delta,
            delta_b: delta,
        },
        Task::Classification => FixedParams::Clf {
            congruence_p11: pick(args.congruence, cfg.clf.congruence, defaults::CLF_CONGRUENCE),
            prior_alphas: prior_array(None, cfg.clf.prior),
            delta_a: delta,
            delta_b: delta,
            outer_samples: pick(args.outer, cfg.clf.outer_samples, defaults::CLF_OUTER_SAMPLES),
            seed,
        },
    };
    let spec = CalibrationSpec {
        task: args.task,
        s_min: args.s_min,
        s_max: args.s_max,
        steps: args.steps,
        fixed,
        refine: args.refine,
    };
    let outcome = calibrate_s_trace(&spec, &refs)?;
    println!("s_best = {:.4}", outcome.s_best);
    println!("sse = {:.4e}", outcome.sse);
    println!(
        "evaluated {} candidates over [{}, {}] against {} reference points",
        outcome.trace.len(),
        args.s_min,
        args.s_max,
        refs.len()
    );
    if let Some(path) = &args.trace {
        csvio::write_trace_csv(path, &outcome.trace)?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn cmd_audit(args: &AuditArgs, cfg: &Config, threshold: f64, seed: u64) -> Result<i32, CliError> {
    let opts = AuditOptions {
        corr: pick(args.corr, cfg.seg.corr, defaults::SEG_CORR),
        prior: prior_array(args.prior.clone(), cfg.clf.prior),
        outer_samples: pick(args.outer, cfg.clf.outer_samples, defaults::CLF_OUTER_SAMPLES),
        mc_samples: pick(None, cfg.clf.mc_samples, defaults::CLF_MC_SAMPLES),
        threshold,
        seed,
    };
    let code = audit::run_audit(&args.input, &args.output, &opts)?;
    println!("wrote {}", args.output.display());
    Ok(code)
}
