//! How likely is a reported "method A beats method B" result to be a false
//! outperformance claim? This crate models that probability for paired
//! comparisons of medical-imaging models under two task families:
//!
//! * **Segmentation** — a closed-form paired t model over mean score
//!   differences ([`seg`]).
//! * **Classification** — a Dirichlet posterior over an imputed 2×2
//!   joint-correctness table ([`clf`]), with both an exact incomplete-beta
//!   path and a Monte Carlo path.
//!
//! Both models are extended with a run-to-run seed-variance term δ
//! ("underspecification"): equally trained models spread across reruns, so
//! small observed differences stay uncertain no matter how large the test
//! set. The [`grid`] module sweeps the (n, Δ) plane to map the resulting
//! decision contours, and [`calibrate`] fits the spread parameter against
//! reference probabilities by grid search.
//!
//! All sampling flows through a seedable, splittable generator ([`rng`]),
//! and every stochastic path is bit-reproducible for a fixed seed
//! regardless of worker count.

pub mod calibrate;
pub mod clf;
pub mod error;
pub mod grid;
pub mod prob;
pub mod rng;
pub mod seg;
pub mod special;

pub use calibrate::{
    calibrate_s, calibrate_s_trace, CalibrationOutcome, CalibrationSpec, FixedParams,
    ReferencePoint,
};
pub use clf::{
    clf_asymptotic_floor, clf_false_claim_exact, clf_false_claim_mc, clf_false_claim_underspec,
    clf_false_claim_underspec_stats, congruence_bounds, impute_table, ClfComparison, ClfParams,
    ContingencyTable, UnderspecEstimate,
};
pub use error::{Error, Result};
pub use grid::{
    compare_grids, run_grid, ContourShift, GridResult, GridSpec, ModelParams,
};
pub use prob::Probability;
pub use rng::{sample_dirichlet, sample_gamma, sample_normal, Rng};
pub use seg::{
    seg_asymptotic_floor, seg_false_claim_prob, seg_standard_error, SegComparison, SegOutcome,
    SegParams,
};
pub use special::{log_gamma, normal_cdf, reg_inc_beta, student_t_cdf};

/// The two task families the models cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    Segmentation,
    Classification,
}

impl std::fmt::Display for Task {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Task::Segmentation => write!(f, "segmentation"),
            Task::Classification => write!(f, "classification"),
        }
    }
}

impl std::str::FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "seg" | "segmentation" => Ok(Task::Segmentation),
            "clf" | "classification" => Ok(Task::Classification),
            other => Err(Error::Usage(format!(
                "unknown task '{other}' (expected seg(mentation) or clf/classification)"
            ))),
        }
    }
}
