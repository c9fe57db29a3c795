//! Grid-search estimation of the spread parameter s (with s_A = s_B) that
//! best reproduces a set of reference false-claim probabilities.
//!
//! For segmentation s is the per-case score standard deviation of both
//! methods. The classification model has no score-spread parameter, so
//! there s is interpreted as the baseline operating accuracy of method B
//! (the comparison is evaluated at accuracies (s + Δ, s)); this
//! interpretation is configurable rather than baked in — see the grid
//! module's `baseline` field for the same convention.

use rayon::prelude::*;

use crate::clf::{
    clf_false_claim_exact, clf_false_claim_underspec, impute_table, ClfComparison, ClfParams,
};
use crate::error::{Error, Result};
use crate::prob::Probability;
use crate::seg::{seg_false_claim_prob, SegComparison, SegParams};
use crate::Task;

/// One fitting target: the false-claim probability the model should
/// reproduce at a given test-set size and observed difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint {
    pub n: u32,
    pub delta_obs: f64,
    pub target_prob: Probability,
}

impl ReferencePoint {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Domain(format!(
                "ReferencePoint.n must be at least 2, got {}",
                self.n
            )));
        }
        if !self.delta_obs.is_finite() || !(0.0..=1.0).contains(&self.delta_obs) {
            return Err(Error::Domain(format!(
                "ReferencePoint.delta_obs must lie in [0, 1], got {}",
                self.delta_obs
            )));
        }
        Ok(())
    }
}

/// The non-searched model parameters held fixed during calibration.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedParams {
    Seg {
        r_ab: f64,
        delta_a: f64,
        delta_b: f64,
    },
    Clf {
        congruence_p11: f64,
        prior_alphas: [f64; 4],
        delta_a: f64,
        delta_b: f64,
        outer_samples: u32,
        seed: u64,
    },
}

impl FixedParams {
    fn task(&self) -> Task {
        match self {
            FixedParams::Seg { .. } => Task::Segmentation,
            FixedParams::Clf { .. } => Task::Classification,
        }
    }
}

/// Search definition: a uniform grid of `steps` candidate values of s on
/// `[s_min, s_max]`, with an optional half-step refinement pass around the
/// best candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationSpec {
    pub task: Task,
    pub s_min: f64,
    pub s_max: f64,
    pub steps: u32,
    pub fixed: FixedParams,
    pub refine: bool,
}

impl CalibrationSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.s_min.is_finite() || !self.s_max.is_finite() || self.s_min <= 0.0 {
            return Err(Error::Domain(format!(
                "CalibrationSpec search bounds must be positive reals, got [{}, {}]",
                self.s_min, self.s_max
            )));
        }
        if self.s_min >= self.s_max {
            return Err(Error::Domain(format!(
                "CalibrationSpec requires s_min < s_max, got [{}, {}]",
                self.s_min, self.s_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::Domain(format!(
                "CalibrationSpec.steps must be at least 2, got {}",
                self.steps
            )));
        }
        if self.task != self.fixed.task() {
            return Err(Error::Usage(
                "CalibrationSpec.task does not match the fixed parameter set".into(),
            ));
        }
        if self.task == Task::Classification && self.s_max > 1.0 {
            return Err(Error::Domain(format!(
                "classification calibration searches a baseline accuracy; s_max must be <= 1, got {}",
                self.s_max
            )));
        }
        Ok(())
    }
}

/// Model probability at one reference point for a candidate s.
fn model_prob(fixed: &FixedParams, s: f64, point: &ReferencePoint) -> Result<f64> {
    match fixed {
        FixedParams::Seg {
            r_ab,
            delta_a,
            delta_b,
        } => {
            let params = SegParams {
                s_a: s,
                s_b: s,
                r_ab: *r_ab,
                delta_a: *delta_a,
                delta_b: *delta_b,
            };
            let cmp = SegComparison {
                mu_hat_a: point.delta_obs,
                mu_hat_b: 0.0,
                n: point.n,
            };
            Ok(seg_false_claim_prob(&cmp, &params)?.prob.value())
        }
        FixedParams::Clf {
            congruence_p11,
            prior_alphas,
            delta_a,
            delta_b,
            outer_samples,
            seed,
        } => {
            let cmp = ClfComparison {
                p_hat_a: (s + point.delta_obs).clamp(0.0, 1.0),
                p_hat_b: s,
                n: point.n,
            };
            if *delta_a == 0.0 && *delta_b == 0.0 {
                let table = impute_table(cmp.p_hat_a, cmp.p_hat_b, *congruence_p11, cmp.n)?;
                Ok(clf_false_claim_exact(&table, prior_alphas)?.value())
            } else {
                let params = ClfParams {
                    congruence_p11: *congruence_p11,
                    prior_alphas: *prior_alphas,
                    delta_a: *delta_a,
                    delta_b: *delta_b,
                    outer_samples: *outer_samples,
                    seed: *seed,
                    ..ClfParams::default()
                };
                Ok(clf_false_claim_underspec(&cmp, &params)?.value())
            }
        }
    }
}

fn sse(fixed: &FixedParams, s: f64, refs: &[ReferencePoint]) -> Result<f64> {
    let mut total = 0.0;
    for point in refs {
        let err = model_prob(fixed, s, point)? - point.target_prob.value();
        total += err * err;
    }
    Ok(total)
}

/// Evaluates the SSE at every candidate (assumed ascending), in parallel.
fn scan(fixed: &FixedParams, candidates: &[f64], refs: &[ReferencePoint]) -> Result<Vec<f64>> {
    candidates
        .par_iter()
        .map(|&s| sse(fixed, s, refs))
        .collect()
}

/// Index of the minimal score; ties break toward the earlier (smaller-s)
/// candidate because the comparison is strict.
fn argmin(scores: &[f64]) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &score) in scores.iter().enumerate() {
        if best.map_or(true, |(_, b)| score < b) {
            best = Some((i, score));
        }
    }
    best.map(|(i, _)| i)
        .ok_or_else(|| Error::Usage("no calibration candidates to evaluate".into()))
}

/// Full calibration output: the optimum plus every (s, sse) pair the search
/// evaluated, grid pass first, refinement pass (if any) appended.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationOutcome {
    pub s_best: f64,
    pub sse: f64,
    pub trace: Vec<(f64, f64)>,
}

/// Exhaustive grid search for the s minimizing the sum of squared errors
/// over the reference points. Returns `(s_best, sse)`.
pub fn calibrate_s(spec: &CalibrationSpec, refs: &[ReferencePoint]) -> Result<(f64, f64)> {
    calibrate_s_trace(spec, refs).map(|outcome| (outcome.s_best, outcome.sse))
}

/// As [`calibrate_s`], but also returns the per-candidate SSE trace.
pub fn calibrate_s_trace(
    spec: &CalibrationSpec,
    refs: &[ReferencePoint],
) -> Result<CalibrationOutcome> {
    spec.validate()?;
    if refs.is_empty() {
        return Err(Error::Usage(
            "calibrate_s requires at least one reference point".into(),
        ));
    }
    for point in refs {
        point.validate()?;
    }
    let step = (spec.s_max - spec.s_min) / f64::from(spec.steps - 1);
    let candidates: Vec<f64> = (0..spec.steps)
        .map(|i| spec.s_min + f64::from(i) * step)
        .collect();
    let scores = scan(&spec.fixed, &candidates, refs)?;
    let best = argmin(&scores)?;
    let mut s_best = candidates[best];
    let mut best_sse = scores[best];
    let mut trace: Vec<(f64, f64)> = candidates.into_iter().zip(scores).collect();
    if spec.refine {
        // One half-step pass around the optimum, clamped to the search range.
        let mut refined: Vec<f64> = [-1.0f64, -0.5, 0.0, 0.5, 1.0]
            .iter()
            .map(|&k| (s_best + k * step).clamp(spec.s_min, spec.s_max))
            .collect();
        refined.dedup();
        let scores = scan(&spec.fixed, &refined, refs)?;
        let best = argmin(&scores)?;
        if scores[best] < best_sse || (scores[best] == best_sse && refined[best] < s_best) {
            s_best = refined[best];
            best_sse = scores[best];
        }
        trace.extend(refined.into_iter().zip(scores));
    }
    Ok(CalibrationOutcome {
        s_best,
        sse: best_sse,
        trace,
    })
}
