use std::fmt;

use crate::error::{Error, Result};

/// A probability, guaranteed to lie in `[0, 1]`.
///
/// Construction through [`Probability::new`] rejects NaN and out-of-range
/// values, so downstream code can consume the inner value without
/// re-validating it.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const HALF: Probability = Probability(0.5);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain(format!(
                "probability {value} outside [0, 1]"
            )));
        }
        Ok(Probability(value))
    }

    /// Wraps a value that is mathematically guaranteed to lie in `[0, 1]`
    /// but may have drifted out by a rounding error (e.g. the tail of a
    /// continued fraction). Anything further out than noise is a bug.
    pub(crate) fn from_computed(value: f64) -> Self {
        debug_assert!(
            value > -1e-9 && value < 1.0 + 1e-9,
            "computed probability {value} far outside [0, 1]"
        );
        Probability(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.value()
    }
}
