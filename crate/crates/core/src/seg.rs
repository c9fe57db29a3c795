//! Segmentation comparisons: closed-form false-claim probability from the
//! paired t model, optionally inflated by seed variance, plus the large-n
//! asymptotic floor of the inflated model.

use crate::error::{Error, Result};
use crate::prob::Probability;
use crate::special::{normal_cdf, student_t_cdf};

/// Model hyperparameters for segmentation comparisons.
///
/// `s_a`/`s_b` are per-case score standard deviations (DSC units), `r_ab`
/// the correlation of the two methods' paired per-case scores, and
/// `delta_a`/`delta_b` the run-to-run (seed) standard deviations of the
/// reported mean scores. Defaults are the calibrated spread s = 0.197 and
/// the median congruence r = 0.67, with seed variance off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegParams {
    pub s_a: f64,
    pub s_b: f64,
    pub r_ab: f64,
    pub delta_a: f64,
    pub delta_b: f64,
}

impl Default for SegParams {
    fn default() -> Self {
        SegParams {
            s_a: 0.197,
            s_b: 0.197,
            r_ab: 0.67,
            delta_a: 0.0,
            delta_b: 0.0,
        }
    }
}

impl SegParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("s_a", self.s_a),
            ("s_b", self.s_b),
            ("delta_a", self.delta_a),
            ("delta_b", self.delta_b),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "SegParams.{name} must be a finite non-negative number, got {v}"
                )));
            }
        }
        if !self.r_ab.is_finite() || !(-1.0..=1.0).contains(&self.r_ab) {
            return Err(Error::Domain(format!(
                "SegParams.r_ab must lie in [-1, 1], got {}",
                self.r_ab
            )));
        }
        Ok(())
    }
}

/// One reported segmentation comparison: observed mean DSCs and the
/// test-set size. For an outperformance claim A is the claimed-better
/// method (`mu_hat_a >= mu_hat_b`); the model itself is total in the
/// difference, so reversed means are allowed and yield the mirrored
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegComparison {
    pub mu_hat_a: f64,
    pub mu_hat_b: f64,
    pub n: u32,
}

impl SegComparison {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mu_hat_a", self.mu_hat_a), ("mu_hat_b", self.mu_hat_b)] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!(
                    "SegComparison.{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        if self.n < 2 {
            return Err(Error::Domain(format!(
                "SegComparison.n must be at least 2 (t needs n-1 >= 1 degrees of freedom), got {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// Result of a segmentation false-claim evaluation. `degenerate` flags the
/// SE = 0 corner where the model collapses to a step function and the
/// returned probability is the boundary value rather than a t CDF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegOutcome {
    pub prob: Probability,
    pub degenerate: bool,
}

/// Standard error of the observed mean difference:
/// sqrt((s_a² + s_b² − 2 s_a s_b r_ab)/n + δ_a² + δ_b²).
///
/// With δ_a = δ_b = 0 this is exactly the paired-comparison SE_AB; the seed
/// variances add to the squared SE and survive the n → ∞ limit.
pub fn seg_standard_error(params: &SegParams, n: u32) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::Domain("seg_standard_error requires n >= 1".into()));
    }
    let paired =
        (params.s_a * params.s_a + params.s_b * params.s_b
            - 2.0 * params.s_a * params.s_b * params.r_ab)
            / f64::from(n);
    // paired is a variance and mathematically >= 0; guard the tiny negative
    // rounding residue of s_a = s_b with r_ab = 1.
    let variance = paired.max(0.0) + params.delta_a * params.delta_a
        + params.delta_b * params.delta_b;
    Ok(variance.sqrt())
}

/// Probability of a false outperformance claim for a segmentation
/// comparison: the t CDF with n−1 degrees of freedom evaluated at
/// (μ̂_B − μ̂_A)/SE, where SE includes the seed-variance terms.
///
/// SE = 0 cannot feed the t CDF; those comparisons come back flagged with
/// the boundary probability (0 for a positive difference, 0.5 for equal
/// means) so grid sweeps survive corner cells.
pub fn seg_false_claim_prob(cmp: &SegComparison, params: &SegParams) -> Result<SegOutcome> {
    cmp.validate()?;
    let se = seg_standard_error(params, cmp.n)?;
    let diff = cmp.mu_hat_a - cmp.mu_hat_b;
    if se == 0.0 {
        let prob = if diff == 0.0 {
            Probability::HALF
        } else if diff > 0.0 {
            Probability::ZERO
        } else {
            Probability::ONE
        };
        return Ok(SegOutcome {
            prob,
            degenerate: true,
        });
    }
    let t = -diff / se;
    Ok(SegOutcome {
        prob: student_t_cdf(t, f64::from(cmp.n - 1))?,
        degenerate: false,
    })
}

/// Large-n limit of the seed-variance-inflated model:
/// Φ(−Δ / sqrt(δ_a² + δ_b²)).
///
/// This is the floor the false-claim probability approaches as the test
/// set grows while run-to-run variance persists. Undefined when both
/// deltas are zero (the probability degenerates to a step function).
pub fn seg_asymptotic_floor(delta_obs: f64, delta_a: f64, delta_b: f64) -> Result<Probability> {
    if !delta_obs.is_finite() || delta_obs < 0.0 {
        return Err(Error::Domain(format!(
            "seg_asymptotic_floor requires delta_obs >= 0, got {delta_obs}"
        )));
    }
    for (name, v) in [("delta_a", delta_a), ("delta_b", delta_b)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Domain(format!(
                "seg_asymptotic_floor requires {name} >= 0, got {v}"
            )));
        }
    }
    let spread = (delta_a * delta_a + delta_b * delta_b).sqrt();
    if spread == 0.0 {
        return Err(Error::Domain(
            "seg_asymptotic_floor is undefined with delta_a = delta_b = 0".into(),
        ));
    }
    normal_cdf(-delta_obs / spread)
}
