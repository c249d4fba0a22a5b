use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrapolation<T> {
    pub estimate: T,
    /// Magnitude of the Richardson correction.
    pub error_gauge: T,
}

/// Richardson extrapolation for a second-order sequence whose mesh size
/// halves per level: `μ_fine + (μ_fine − μ_coarse)/3`.
///
/// Needs at least three consecutive levels; a sequence that is not monotone
/// is rejected with [`Error::NonMonotone`], which still carries the estimate.
pub fn extrapolate<T: Real>(values: &[(usize, T)]) -> Result<Extrapolation<T>> {
    if values.len() < 3 {
        return Err(Error::TooFewLevels(values.len()));
    }
    if values.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::Unsorted("levels must be consecutive and ascending".into()));
    }
    let fine = values[values.len() - 1].1;
    let coarse = values[values.len() - 2].1;
    let correction = (fine - coarse) / T::lit(3.0);
    let out = Extrapolation {
        estimate: fine + correction,
        error_gauge: correction.abs(),
    };
    let steps: Vec<T> = values.windows(2).map(|w| w[1].1 - w[0].1).collect();
    let up = steps.iter().all(|&d| d >= T::zero());
    let down = steps.iter().all(|&d| d <= T::zero());
    if up || down {
        Ok(out)
    } else {
        Err(Error::NonMonotone {
            estimate: out.estimate.to_f64_lossy(),
            error_gauge: out.error_gauge.to_f64_lossy(),
        })
    }
}
