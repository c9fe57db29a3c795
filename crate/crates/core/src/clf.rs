//! Classification comparisons: a 2×2 joint-correctness table is imputed
//! from the two reported accuracies and a congruence assumption, and the
//! false-claim probability is the Dirichlet-posterior probability that the
//! "only B correct" rate exceeds the "only A correct" rate.
//!
//! The posterior probability has an exact incomplete-beta form, which both
//! serves as the oracle for the Monte Carlo estimator and keeps the nested
//! seed-variance extension to a single sampling layer.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::prob::Probability;
use crate::rng::{sample_dirichlet, sample_normal, Rng};
use crate::special::{normal_cdf, reg_inc_beta};

/// One reported classification comparison: accuracies and test-set size.
/// For an outperformance claim A is the claimed-better method; the model is
/// total in the difference and reversed inputs yield mirrored results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClfComparison {
    pub p_hat_a: f64,
    pub p_hat_b: f64,
    pub n: u32,
}

impl ClfComparison {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p_hat_a", self.p_hat_a), ("p_hat_b", self.p_hat_b)] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!(
                    "ClfComparison.{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        if self.n == 0 {
            return Err(Error::Domain("ClfComparison.n must be at least 1".into()));
        }
        Ok(())
    }
}

/// Joint correctness counts of the two classifiers over one test set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContingencyTable {
    /// Both correct.
    pub n11: u32,
    /// Only A correct.
    pub n10: u32,
    /// Only B correct.
    pub n01: u32,
    /// Both wrong.
    pub n00: u32,
}

impl ContingencyTable {
    pub fn total(&self) -> u32 {
        self.n11 + self.n10 + self.n01 + self.n00
    }
}

/// Model hyperparameters for classification comparisons.
///
/// `congruence_p11` is the assumed probability that both classifiers are
/// correct on the same case (clamped per comparison to the feasible
/// bounds), `prior_alphas` the Dirichlet prior weights in table order
/// (n11, n10, n01, n00), and `delta_a`/`delta_b` the run-to-run standard
/// deviations of the reported accuracies. `mc_samples` budgets the inner
/// Dirichlet estimator, `outer_samples` the accuracy-perturbation layer.
/// `inner_mc` switches the perturbation layer from the exact inner
/// posterior to nested Monte Carlo; it exists for fidelity testing and is
/// off by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClfParams {
    pub congruence_p11: f64,
    pub prior_alphas: [f64; 4],
    pub delta_a: f64,
    pub delta_b: f64,
    pub mc_samples: u32,
    pub outer_samples: u32,
    pub inner_mc: bool,
    pub seed: u64,
}

impl Default for ClfParams {
    fn default() -> Self {
        ClfParams {
            congruence_p11: 0.67,
            prior_alphas: [1.0; 4],
            delta_a: 0.0,
            delta_b: 0.0,
            mc_samples: 100_000,
            outer_samples: 10_000,
            inner_mc: false,
            seed: 42,
        }
    }
}

impl ClfParams {
    pub fn validate(&self) -> Result<()> {
        if !self.congruence_p11.is_finite() || !(0.0..=1.0).contains(&self.congruence_p11) {
            return Err(Error::Domain(format!(
                "ClfParams.congruence_p11 must lie in [0, 1], got {}",
                self.congruence_p11
            )));
        }
        for (i, &alpha) in self.prior_alphas.iter().enumerate() {
            if !alpha.is_finite() || alpha <= 0.0 {
                return Err(Error::Domain(format!(
                    "ClfParams.prior_alphas[{i}] must be positive, got {alpha}"
                )));
            }
        }
        for (name, v) in [("delta_a", self.delta_a), ("delta_b", self.delta_b)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "ClfParams.{name} must be a finite non-negative number, got {v}"
                )));
            }
        }
        if self.mc_samples == 0 {
            return Err(Error::Domain("ClfParams.mc_samples must be at least 1".into()));
        }
        if self.outer_samples == 0 {
            return Err(Error::Domain(
                "ClfParams.outer_samples must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Fréchet feasibility bounds for the joint probability p11 given the two
/// marginal accuracies: [max(0, p_a + p_b − 1), min(p_a, p_b)].
pub fn congruence_bounds(p_a: f64, p_b: f64) -> Result<(f64, f64)> {
    for (name, v) in [("p_a", p_a), ("p_b", p_b)] {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!(
                "congruence_bounds requires {name} in [0, 1], got {v}"
            )));
        }
    }
    let hi = p_a.min(p_b);
    // p_b − (1 − p_a) rather than p_a + p_b − 1: algebraically the same
    // lower bound, but exact when p_a = 1 (a perfect classifier forces
    // p11 = p_b) and never above hi by a rounding residue, so lo ≤ hi
    // holds unconditionally.
    let lo = (p_b - (1.0 - p_a)).max(0.0).min(hi);
    Ok((lo, hi))
}

/// Imputes integer joint-correctness counts from marginal accuracies and a
/// congruence target.
///
/// `p11` is clamped into the Fréchet bounds, the four resulting cell
/// probabilities are scaled by `n`, and the fractional counts are rounded
/// by the largest-remainder method (remainder ties favor the cell earlier
/// in (n11, n10, n01, n00) order), which preserves the total exactly.
pub fn impute_table(p_a: f64, p_b: f64, p11: f64, n: u32) -> Result<ContingencyTable> {
    if n == 0 {
        return Err(Error::Domain("impute_table requires n >= 1".into()));
    }
    if !p11.is_finite() || !(0.0..=1.0).contains(&p11) {
        return Err(Error::Domain(format!(
            "impute_table requires p11 in [0, 1], got {p11}"
        )));
    }
    let (lo, hi) = congruence_bounds(p_a, p_b)?;
    let p11 = p11.clamp(lo, hi);
    let probs = [
        p11,
        p_a - p11,
        p_b - p11,
        1.0 - p_a - p_b + p11,
    ];
    let nf = f64::from(n);
    let mut cells = [0u32; 4];
    let mut rems = [0.0f64; 4];
    let mut assigned: u32 = 0;
    for i in 0..4 {
        // Clamping handles the tiny negative residues rounding can leave
        // when p11 sits exactly on a Fréchet bound.
        let quota = (probs[i] * nf).max(0.0);
        let base = quota.floor();
        cells[i] = base as u32;
        rems[i] = quota - base;
        assigned += cells[i];
    }
    let short = i64::from(n) - i64::from(assigned);
    debug_assert!((0..=4).contains(&short), "largest-remainder shortfall {short}");
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| rems[j].partial_cmp(&rems[i]).unwrap().then(i.cmp(&j)));
    for &cell in order.iter().take(short.max(0) as usize) {
        cells[cell] += 1;
    }
    Ok(ContingencyTable {
        n11: cells[0],
        n10: cells[1],
        n01: cells[2],
        n00: cells[3],
    })
}

/// Exact posterior probability of a false claim, P(θ10 < θ01), under the
/// Dirichlet posterior over the table: I_½(n10 + α10, n01 + α01).
///
/// The marginal of θ10/(θ10 + θ01) under the posterior is
/// Beta(n10 + α10, n01 + α01), so the probability that B's exclusive
/// correctness rate exceeds A's is the incomplete beta at ½. This is the
/// quantity the Monte Carlo path estimates, evaluated in closed form.
pub fn clf_false_claim_exact(
    table: &ContingencyTable,
    prior_alphas: &[f64; 4],
) -> Result<Probability> {
    let a = f64::from(table.n10) + prior_alphas[1];
    let b = f64::from(table.n01) + prior_alphas[2];
    reg_inc_beta(0.5, a, b)
}

/// Monte Carlo estimate of the same posterior probability: draws from
/// Dirichlet(prior + counts) and counts the fraction of draws with
/// θ01 > θ10 (exact ties, a probability-zero event, count ½).
pub fn clf_false_claim_mc(
    table: &ContingencyTable,
    prior_alphas: &[f64; 4],
    mc_samples: u32,
    rng: &mut Rng,
) -> Result<Probability> {
    if mc_samples == 0 {
        return Err(Error::Domain(
            "clf_false_claim_mc requires mc_samples >= 1".into(),
        ));
    }
    let posterior = [
        f64::from(table.n11) + prior_alphas[0],
        f64::from(table.n10) + prior_alphas[1],
        f64::from(table.n01) + prior_alphas[2],
        f64::from(table.n00) + prior_alphas[3],
    ];
    // Wins are tallied in half-units (2 = win, 1 = tie) so that partial
    // tallies merge by exact integer addition.
    let mut half_units: u64 = 0;
    for _ in 0..mc_samples {
        let theta = sample_dirichlet(&posterior, rng)?;
        half_units += match theta[2].partial_cmp(&theta[1]).expect("Dirichlet draws are finite")
        {
            std::cmp::Ordering::Greater => 2,
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Less => 0,
        };
    }
    Ok(Probability::from_computed(
        half_units as f64 / (2.0 * f64::from(mc_samples)),
    ))
}

/// Outer draws are processed in fixed-size batches, each with its own
/// ChaCha stream, so the partition across workers never changes the draws
/// and batch sums merge in index order — parallel runs are bit-identical
/// to serial ones.
const OUTER_BATCH: u32 = 1024;

/// Point estimate plus the Monte Carlo standard error of its mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnderspecEstimate {
    pub prob: Probability,
    pub mc_se: f64,
}

/// Seed-variance extension of the classification model, with the Monte
/// Carlo standard error of the estimate. See [`clf_false_claim_underspec`].
pub fn clf_false_claim_underspec_stats(
    cmp: &ClfComparison,
    params: &ClfParams,
) -> Result<UnderspecEstimate> {
    cmp.validate()?;
    params.validate()?;
    if params.delta_a == 0.0 && params.delta_b == 0.0 {
        // Degenerate Gaussians: every outer draw reproduces the unperturbed
        // comparison, so the estimate is the baseline value itself — equal
        // bit-for-bit, not just statistically.
        let mut rng = Rng::with_stream(params.seed, 0);
        let prob = eval_inner(cmp.p_hat_a, cmp.p_hat_b, cmp, params, &mut rng)?;
        return Ok(UnderspecEstimate { prob, mc_se: 0.0 });
    }
    let outer = params.outer_samples;
    let batches = outer.div_ceil(OUTER_BATCH);
    let partials: Vec<Result<(f64, f64)>> = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = Rng::with_stream(params.seed, u64::from(batch));
            let in_batch = (outer - batch * OUTER_BATCH).min(OUTER_BATCH);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..in_batch {
                let p_a = sample_normal(cmp.p_hat_a, params.delta_a, &mut rng)?.clamp(0.0, 1.0);
                let p_b = sample_normal(cmp.p_hat_b, params.delta_b, &mut rng)?.clamp(0.0, 1.0);
                let value = eval_inner(p_a, p_b, cmp, params, &mut rng)?.value();
                sum += value;
                sum_sq += value * value;
            }
            Ok((sum, sum_sq))
        })
        .collect();
    let mut total = 0.0;
    let mut total_sq = 0.0;
    for partial in partials {
        let (sum, sum_sq) = partial?;
        total += sum;
        total_sq += sum_sq;
    }
    let count = f64::from(outer);
    let mean = total / count;
    let variance = (total_sq / count - mean * mean).max(0.0);
    Ok(UnderspecEstimate {
        prob: Probability::from_computed(mean),
        mc_se: (variance / count).sqrt(),
    })
}

/// Probability of a false outperformance claim with reported accuracies
/// treated as draws p̃ ~ N(p̂, δ²).
///
/// Each outer draw perturbs both accuracies, clamps them into [0, 1],
/// re-clamps the congruence into the draw's own Fréchet bounds, imputes
/// the table at size n, and evaluates the posterior probability (exact
/// inner path unless `inner_mc` is set); the result is the mean over
/// `outer_samples` draws. With δ_a = δ_b = 0 this reduces exactly to the
/// baseline model.
pub fn clf_false_claim_underspec(cmp: &ClfComparison, params: &ClfParams) -> Result<Probability> {
    clf_false_claim_underspec_stats(cmp, params).map(|estimate| estimate.prob)
}

fn eval_inner(
    p_a: f64,
    p_b: f64,
    cmp: &ClfComparison,
    params: &ClfParams,
    rng: &mut Rng,
) -> Result<Probability> {
    let table = impute_table(p_a, p_b, params.congruence_p11, cmp.n)?;
    if params.inner_mc {
        clf_false_claim_mc(&table, &params.prior_alphas, params.mc_samples, rng)
    } else {
        clf_false_claim_exact(&table, &params.prior_alphas)
    }
}

/// Large-n limit of the perturbed-accuracy model: Φ(−Δ / sqrt(δ_a² + δ_b²)).
///
/// As the test set grows the posterior concentrates and only the seed
/// variance of the reported accuracies remains, leaving the same normal
/// floor as in the segmentation model. A heuristic limit: the imputation
/// quantization vanishes only as n → ∞.
pub fn clf_asymptotic_floor(delta_obs: f64, delta_a: f64, delta_b: f64) -> Result<Probability> {
    if !delta_obs.is_finite() {
        return Err(Error::Domain(format!(
            "clf_asymptotic_floor requires finite delta_obs, got {delta_obs}"
        )));
    }
    for (name, v) in [("delta_a", delta_a), ("delta_b", delta_b)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Domain(format!(
                "clf_asymptotic_floor requires {name} >= 0, got {v}"
            )));
        }
    }
    let spread = (delta_a * delta_a + delta_b * delta_b).sqrt();
    if spread == 0.0 {
        return Err(Error::Domain(
            "clf_asymptotic_floor is undefined with delta_a = delta_b = 0".into(),
        ));
    }
    normal_cdf(-delta_obs / spread)
}
