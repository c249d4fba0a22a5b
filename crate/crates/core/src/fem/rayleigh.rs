use super::sparse::{dot, SparseSym};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Discrete Rayleigh quotient `uᵀKu / u₀ᵀMu₀`, where `u₀` is `u` with its
/// mass-weighted mean removed. Bounded below by the discrete `μ₁`.
pub fn rayleigh_quotient<T: Real>(stiffness: &SparseSym<T>, mass: &SparseSym<T>, nodal: &[T]) -> Result<T> {
    let m_one = mass.row_sums();
    let total = m_one.iter().copied().sum::<T>();
    let mean = dot(&m_one, nodal) / total;
    let mut centered: Vec<T> = nodal.iter().map(|&v| v - mean).collect();
    // second pass removes the rounding left by the first
    let residual = dot(&m_one, &centered) / total;
    centered.iter_mut().for_each(|v| *v -= residual);
    let raw = mass.bilinear(nodal, nodal);
    let denom = mass.bilinear(&centered, &centered);
    let floor = (T::epsilon() * T::lit(100.0)).powi(2) * raw;
    if !(denom > floor) {
        return Err(Error::ZeroAfterDeflation);
    }
    Ok(stiffness.bilinear(&centered, &centered) / denom)
}
