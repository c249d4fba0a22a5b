//! First positive zero of `J₁'` from the ascending series of `J₀`, `J₁`.

use crate::scalar::Real;

/// `J_n(x) = Σ_k (−1)^k (x/2)^{2k+n} / (k! (k+n)!)`, summed until terms
/// drop below `1e-18` of the running sum.
pub fn bessel_j<T: Real>(order: u32, x: T) -> T {
    let half = x * T::lit(0.5);
    let mut term = T::one();
    for j in 1..=order {
        term *= half / T::of(j as usize);
    }
    let mut sum = term;
    let q = -half * half;
    let stop = T::lit(1e-18);
    for k in 1..500usize {
        term *= q / (T::of(k) * T::of(k + order as usize));
        sum += term;
        if term.abs() <= stop * sum.abs() {
            break;
        }
    }
    sum
}

/// `J₁'(x) = J₀(x) − J₁(x)/x`
pub fn bessel_j1_prime<T: Real>(x: T) -> T {
    bessel_j(0, x) - bessel_j(1, x) / x
}

/// `j'₁,₁ ≈ 1.8411837813`, by bisection of `J₁'` on `[1.5, 2.5]` to width
/// `1e-13`.
pub fn j1prime_zero<T: Real>() -> T {
    let (mut lo, mut hi) = (T::lit(1.5), T::lit(2.5));
    let f_lo = bessel_j1_prime(lo);
    let width = T::lit(1e-13);
    while hi - lo > width {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = bessel_j1_prime(mid);
        if f_mid == T::zero() {
            return mid;
        }
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * T::lit(0.5)
}

/// The sharp constants of the four inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselConstant<T> {
    pub j1p1: T,
}

impl<T: Real> BesselConstant<T> {
    pub fn compute() -> Self {
        BesselConstant { j1p1: j1prime_zero() }
    }

    /// `16π²`
    pub fn perimeter_neumann_bound(&self) -> T {
        T::lit(16.0) * T::PI() * T::PI()
    }

    /// `4π`
    pub fn perimeter_sloshing_bound(&self) -> T {
        T::lit(4.0) * T::PI()
    }

    /// `π (j'₁,₁)²`
    pub fn area_neumann_bound(&self) -> T {
        T::PI() * self.j1p1 * self.j1p1
    }

    /// `√π j'₁,₁`
    pub fn area_sloshing_bound(&self) -> T {
        T::PI().sqrt() * self.j1p1
    }
}
