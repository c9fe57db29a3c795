//! Sweeps of the (test-set size n, observed difference Δ) plane for either
//! task, producing the probability matrix behind a heatmap panel and the
//! extracted decision contour at a probability threshold.
//!
//! Monotonicity along a Δ-column deserves a note. The segmentation model
//! is continuous and strictly monotone, so any uptick there is a numerical
//! bug and aborts the sweep. The classification model passes through an
//! integer table imputation, which makes its exact path a staircase in Δ
//! with occasional genuine upticks where the largest-remainder rounding
//! reallocates a count between the off-diagonal cells; those are model
//! structure, not noise, and are reported as computed. For Monte Carlo
//! columns (δ > 0), upticks within twice the cell's standard error are
//! sampler jitter and are clipped to keep the column non-increasing;
//! anything larger is again genuine quantization structure and is kept.

use rayon::prelude::*;

use crate::clf::{clf_false_claim_underspec_stats, ClfComparison, ClfParams};
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::seg::{seg_false_claim_prob, SegComparison, SegParams};
use crate::Task;

/// Default probability threshold for contour extraction.
pub const DEFAULT_THRESHOLD: f64 = 0.05;
/// Default baseline accuracy of method B for classification sweeps.
pub const DEFAULT_BASELINE: f64 = 0.737;

/// 30 log-spaced test-set sizes covering [10, 10^4].
pub fn default_n_values() -> Vec<u32> {
    (0..30)
        .map(|i| 10f64.powf(1.0 + 3.0 * f64::from(i) / 29.0).round() as u32)
        .collect()
}

/// 50 linearly spaced observed differences covering [0, 0.10].
pub fn default_delta_values() -> Vec<f64> {
    (0..50).map(|j| 0.10 * f64::from(j) / 49.0).collect()
}

/// Model parameters for one sweep, selecting the task family.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelParams {
    Seg(SegParams),
    Clf(ClfParams),
}

/// Definition of one sweep: the two axes, the model, the classification
/// baseline accuracy, and the contour threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub task: Task,
    pub n_values: Vec<u32>,
    pub delta_values: Vec<f64>,
    /// Baseline accuracy of method B; classification only (the
    /// segmentation model depends on the difference alone).
    pub baseline: f64,
    pub params: ModelParams,
    pub threshold: f64,
}

impl GridSpec {
    pub fn new(
        task: Task,
        n_values: Vec<u32>,
        delta_values: Vec<f64>,
        baseline: f64,
        params: ModelParams,
        threshold: f64,
    ) -> Result<Self> {
        let spec = GridSpec {
            task,
            n_values,
            delta_values,
            baseline,
            params,
            threshold,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Default axes (30 log-spaced n in [10, 10^4], 50 linear Δ in
    /// [0, 0.10]), baseline 0.737, threshold 0.05.
    pub fn with_defaults(task: Task, params: ModelParams) -> Result<Self> {
        GridSpec::new(
            task,
            default_n_values(),
            default_delta_values(),
            DEFAULT_BASELINE,
            params,
            DEFAULT_THRESHOLD,
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.check(true)
    }

    /// Everything `validate` checks except the classification feasibility
    /// cap: [`run_grid`] accepts hand-built specs whose upper Δ range walks
    /// past baseline + Δ = 1 and marks those cells invalid instead of
    /// rejecting the sweep.
    fn validate_lenient(&self) -> Result<()> {
        self.check(false)
    }

    fn check(&self, strict_feasibility: bool) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::Domain("GridSpec.n_values must be non-empty".into()));
        }
        if self.n_values[0] < 2 {
            return Err(Error::Domain(format!(
                "GridSpec.n_values must all be >= 2, got {}",
                self.n_values[0]
            )));
        }
        if !self.n_values.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "GridSpec.n_values must be strictly increasing".into(),
            ));
        }
        if self.delta_values.is_empty() {
            return Err(Error::Domain(
                "GridSpec.delta_values must be non-empty".into(),
            ));
        }
        if !self.delta_values.iter().all(|d| d.is_finite()) || self.delta_values[0] < 0.0 {
            return Err(Error::Domain(
                "GridSpec.delta_values must all be finite and >= 0".into(),
            ));
        }
        if !self.delta_values.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "GridSpec.delta_values must be strictly increasing".into(),
            ));
        }
        if !self.threshold.is_finite() || !(0.0..=1.0).contains(&self.threshold) {
            return Err(Error::Domain(format!(
                "GridSpec.threshold must lie in [0, 1], got {}",
                self.threshold
            )));
        }
        let max_delta = *self.delta_values.last().expect("checked non-empty");
        match (&self.task, &self.params) {
            (Task::Segmentation, ModelParams::Seg(params)) => {
                params.validate()?;
                if max_delta > 1.0 {
                    return Err(Error::Domain(format!(
                        "segmentation sweeps need delta <= 1 (DSC differences), got {max_delta}"
                    )));
                }
            }
            (Task::Classification, ModelParams::Clf(params)) => {
                params.validate()?;
                if !self.baseline.is_finite() || !(0.0..=1.0).contains(&self.baseline) {
                    return Err(Error::Domain(format!(
                        "GridSpec.baseline must lie in [0, 1], got {}",
                        self.baseline
                    )));
                }
                if strict_feasibility && self.baseline + max_delta > 1.0 {
                    return Err(Error::Domain(format!(
                        "infeasible classification sweep: baseline {} + max delta {max_delta} exceeds 1",
                        self.baseline
                    )));
                }
            }
            _ => {
                return Err(Error::Usage(
                    "GridSpec.task does not match the model parameter family".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Result of one sweep: the probability matrix (indexed `[delta][n]`; an
/// infeasible cell is NaN and excluded from the contour) and, per n, the
/// minimal Δ at which the probability reaches the threshold, linearly
/// interpolated between the bracketing grid rows (`None` when no Δ in
/// range qualifies).
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub task: Task,
    pub n_values: Vec<u32>,
    pub delta_values: Vec<f64>,
    pub threshold: f64,
    pub probs: Vec<Vec<f64>>,
    pub contour: Vec<Option<f64>>,
}

/// One Δ-column of the sweep: raw probabilities plus, for Monte Carlo
/// cells, the standard error used by the monotone cleanup.
struct Column {
    probs: Vec<f64>,
    ses: Vec<f64>,
    mc: bool,
}

fn seg_column(n: u32, deltas: &[f64], params: &SegParams) -> Result<Column> {
    let probs = deltas
        .iter()
        .map(|&delta| {
            let cmp = SegComparison {
                mu_hat_a: delta,
                mu_hat_b: 0.0,
                n,
            };
            Ok(seg_false_claim_prob(&cmp, params)?.prob.value())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Column {
        ses: vec![0.0; probs.len()],
        probs,
        mc: false,
    })
}

fn clf_column(n: u32, deltas: &[f64], baseline: f64, params: &ClfParams) -> Result<Column> {
    let mut probs = Vec::with_capacity(deltas.len());
    let mut ses = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let p_hat_a = baseline + delta;
        if p_hat_a > 1.0 {
            // Infeasible cell; spec validation prevents this for grids built
            // through the constructor, but hand-built specs are tolerated.
            probs.push(f64::NAN);
            ses.push(0.0);
            continue;
        }
        // Each cell owns a generator keyed by its content (n, Δ) rather
        // than its position, so subsetting the axes never changes a cell.
        let cell_params = ClfParams {
            seed: Rng::fold_seed(params.seed, &[u64::from(n), delta.to_bits()]),
            ..*params
        };
        let cmp = ClfComparison {
            p_hat_a,
            p_hat_b: baseline,
            n,
        };
        let estimate = clf_false_claim_underspec_stats(&cmp, &cell_params)?;
        probs.push(estimate.prob.value());
        ses.push(estimate.mc_se);
    }
    Ok(Column {
        probs,
        ses,
        mc: params.delta_a > 0.0 || params.delta_b > 0.0,
    })
}

/// Tolerance for upticks in a column that is analytically monotone;
/// anything above this is a numerical bug, not rounding noise.
const CONTINUOUS_UPTICK_TOL: f64 = 1e-12;

/// Enforces the non-increasing column invariant where it is enforceable;
/// see the module docs for the classification exemption.
fn clean_column(column: &mut Column, n: u32, deltas: &[f64], continuous: bool) -> Result<()> {
    let mut running_min = f64::INFINITY;
    for i in 0..column.probs.len() {
        let p = column.probs[i];
        if p.is_nan() {
            continue;
        }
        if p > running_min {
            let jump = p - running_min;
            if continuous {
                if jump > CONTINUOUS_UPTICK_TOL {
                    return Err(Error::Monotonicity {
                        n,
                        delta: deltas[i],
                        jump,
                    });
                }
                column.probs[i] = running_min;
            } else if column.mc && jump <= 2.0 * column.ses[i] {
                column.probs[i] = running_min;
            }
            // Larger classification upticks are genuine quantization
            // structure and stay as computed.
        }
        running_min = running_min.min(column.probs[i]);
    }
    Ok(())
}

/// First Δ (interpolated) at which the column reaches the threshold.
fn extract_contour(column: &[f64], deltas: &[f64], threshold: f64) -> Option<f64> {
    let mut prev: Option<(f64, f64)> = None;
    for (i, &p) in column.iter().enumerate() {
        if p.is_nan() {
            continue;
        }
        if p <= threshold {
            return Some(match prev {
                None => deltas[i],
                Some((d_prev, p_prev)) => {
                    d_prev + (p_prev - threshold) * (deltas[i] - d_prev) / (p_prev - p)
                }
            });
        }
        prev = Some((deltas[i], p));
    }
    None
}

/// Evaluates the model at every (Δ, n) cell and extracts the threshold
/// contour. Deterministic for a fixed seed regardless of worker count:
/// cells are keyed by content and assembled by index.
pub fn run_grid(spec: &GridSpec) -> Result<GridResult> {
    spec.validate_lenient()?;
    let deltas = &spec.delta_values;
    let columns: Vec<Column> = spec
        .n_values
        .par_iter()
        .map(|&n| {
            let mut column = match &spec.params {
                ModelParams::Seg(params) => seg_column(n, deltas, params)?,
                ModelParams::Clf(params) => clf_column(n, deltas, spec.baseline, params)?,
            };
            clean_column(&mut column, n, deltas, spec.task == Task::Segmentation)?;
            Ok(column)
        })
        .collect::<Result<Vec<Column>>>()?;
    let contour = columns
        .iter()
        .map(|c| extract_contour(&c.probs, deltas, spec.threshold))
        .collect();
    let mut probs = vec![vec![0.0; spec.n_values.len()]; deltas.len()];
    for (ni, column) in columns.iter().enumerate() {
        for (di, &p) in column.probs.iter().enumerate() {
            probs[di][ni] = p;
        }
    }
    Ok(GridResult {
        task: spec.task,
        n_values: spec.n_values.clone(),
        delta_values: spec.delta_values.clone(),
        threshold: spec.threshold,
        probs,
        contour,
    })
}

/// One row of the contour-shift table: the two contour values at a given n
/// and their difference (present only when both contours exist).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourShift {
    pub n: u32,
    pub baseline: Option<f64>,
    pub underspec: Option<f64>,
    pub shift: Option<f64>,
}

/// Pairs up the contours of two sweeps over identical axes — typically a
/// δ = 0 baseline and its seed-variance counterpart.
pub fn compare_grids(baseline: &GridResult, underspec: &GridResult) -> Result<Vec<ContourShift>> {
    if baseline.task != underspec.task
        || baseline.n_values != underspec.n_values
        || baseline.delta_values != underspec.delta_values
        || baseline.threshold != underspec.threshold
    {
        return Err(Error::Usage(
            "compare_grids requires identical axes, task, and threshold".into(),
        ));
    }
    Ok(baseline
        .n_values
        .iter()
        .zip(baseline.contour.iter().zip(&underspec.contour))
        .map(|(&n, (&base, &under))| ContourShift {
            n,
            baseline: base,
            underspec: under,
            shift: match (base, under) {
                (Some(b), Some(u)) => Some(u - b),
                _ => None,
            },
        })
        .collect())
}
