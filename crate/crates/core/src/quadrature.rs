//! Adaptive Simpson quadrature.

use crate::scalar::Real;

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol` (with a tiny
/// absolute floor so integrals that vanish terminate).
pub fn adaptive_simpson<T, F>(f: F, a: T, b: T, rel_tol: T) -> T
where
    T: Real,
    F: Fn(T) -> T,
{
    if a == b {
        return T::zero();
    }
    // Seed on a coarse composite rule so oscillation on the first panel
    // cannot fool the error estimate.
    let panels = 8;
    let width = (b - a) / T::of(panels);
    let mut rough = T::zero();
    let mut pieces = Vec::with_capacity(panels);
    for i in 0..panels {
        let lo = a + width * T::of(i);
        let hi = if i + 1 == panels { b } else { lo + width };
        let mid = (lo + hi) * T::lit(0.5);
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        let whole = simpson(lo, hi, flo, fmid, fhi);
        rough += whole.abs();
        pieces.push((lo, hi, flo, fmid, fhi, whole));
    }
    let abs_tol = (rel_tol * rough).max(T::min_positive_value());
    let share = abs_tol / T::of(panels);
    pieces
        .into_iter()
        .map(|(lo, hi, flo, fmid, fhi, whole)| recurse(&f, lo, hi, flo, fmid, fhi, whole, share, MAX_DEPTH))
        .sum()
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<T, F>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T
where
    T: Real,
    F: Fn(T) -> T,
{
    let m = (a + b) * T::lit(0.5);
    let lm = (a + m) * T::lit(0.5);
    let rm = (m + b) * T::lit(0.5);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol || m <= a || m >= b {
        return left + right + delta / T::lit(15.0);
    }
    let half = tol * T::lit(0.5);
    recurse(f, a, m, fa, flm, fm, left, half, depth - 1) + recurse(f, m, b, fm, frm, fb, right, half, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = adaptive_simpson(|x: f64| x * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        // ∫₀¹ √x dx = 2/3, derivative blows up at 0
        let v = adaptive_simpson(|x: f64| x.sqrt(), 0.0, 1.0, 1e-11);
        assert!((v - 2.0 / 3.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn quarter_circle_area() {
        let v = adaptive_simpson(|x: f64| (1.0 - x * x).max(0.0).sqrt(), 0.0, 1.0, 1e-12);
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }
}
