//! Lowest nonzero Neumann eigenpairs by block inverse subspace iteration
//! with the constant mode deflated.

use serde::Serialize;

use super::dense::{generalized_eigen, Dense};
use super::precond::IncompleteCholesky;
use super::sparse::{axpy, dot, norm, SparseSym};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_SEED: u64 = 0x5EED;

/// Tolerances and limits for [`neumann_eigs_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub seed: u64,
    pub max_sweeps: usize,
    /// Relative change of successive Ritz values.
    pub ritz_tol: f64,
    /// `‖Ku − μMu‖ / ‖Mu‖ ≤ residual_tol · μ`.
    pub residual_tol: f64,
    /// Relative residual of the inner conjugate-gradient solves.
    pub cg_tol: f64,
    /// Ritz values within this relative gap of the last requested one are
    /// returned with it.
    pub cluster_tol: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            seed: DEFAULT_SEED,
            max_sweeps: 500,
            ritz_tol: 1e-10,
            residual_tol: 1e-8,
            cg_tol: 1e-12,
            cluster_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum<T> {
    /// Ascending, all positive.
    pub values: Vec<T>,
    /// Nodal eigenvectors, mass-orthonormal and mass-orthogonal to constants.
    pub vectors: Vec<Vec<T>>,
    pub residuals: Vec<T>,
    pub iterations: usize,
    pub deflated_constant: bool,
}

impl<T: Real> Spectrum<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Seeded linear congruential generator (Knuth's MMIX constants).
#[derive(Debug, Clone)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    /// Uniform in `[-0.5, 0.5)`.
    pub fn next_centered(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    }
}

/// The `k` smallest positive eigenvalues of `K u = μ M u`, with the default
/// options and the given seed.
pub fn neumann_eigs<T: Real>(
    stiffness: &SparseSym<T>,
    mass: &SparseSym<T>,
    k: usize,
    seed: u64,
) -> Result<Spectrum<T>> {
    neumann_eigs_with(
        stiffness,
        mass,
        k,
        &EigenOptions {
            seed,
            ..Default::default()
        },
    )
}

struct Deflation<T> {
    // M·1 and 1ᵀM1
    m_one: Vec<T>,
    one_m_one: T,
}

impl<T: Real> Deflation<T> {
    fn new(mass: &SparseSym<T>) -> Self {
        let m_one = mass.row_sums();
        let one_m_one = m_one.iter().copied().sum();
        Deflation { m_one, one_m_one }
    }

    /// Removes the mass-weighted mean.
    fn apply(&self, x: &mut [T]) {
        let mean = dot(&self.m_one, x) / self.one_m_one;
        x.iter_mut().for_each(|v| *v -= mean);
    }
}

pub fn neumann_eigs_with<T: Real>(
    stiffness: &SparseSym<T>,
    mass: &SparseSym<T>,
    k: usize,
    opts: &EigenOptions,
) -> Result<Spectrum<T>> {
    let n = stiffness.dimension;
    assert_eq!(n, mass.dimension, "stiffness and mass dimensions differ");
    let available = n.saturating_sub(1);
    if k == 0 || k > available {
        return Err(Error::TooManyModes {
            requested: k,
            available,
        });
    }
    let block = (k + 2).max(4).min(available);
    let ritz_tol = T::tol(opts.ritz_tol);
    let residual_tol = T::tol(opts.residual_tol).max(T::epsilon().cbrt().powi(2));
    let cg_tol = T::tol(opts.cg_tol);
    let cluster_tol = T::lit(opts.cluster_tol);

    let deflation = Deflation::new(mass);
    let precond = IncompleteCholesky::new(stiffness);

    let mut rng = Lcg::new(opts.seed);
    let mut x: Dense<T> = (0..block)
        .map(|_| {
            let mut v: Vec<T> = (0..n).map(|_| T::lit(rng.next_centered())).collect();
            deflation.apply(&mut v);
            v
        })
        .collect();

    let mut previous: Option<Vec<T>> = None;
    let mut best_residuals = vec![T::infinity(); k];
    for sweep in 1..=opts.max_sweeps {
        // Y = K⁻¹ M X on the complement of the constants.
        let mut y: Dense<T> = Vec::with_capacity(block);
        for (j, xj) in x.iter().enumerate() {
            let rhs = mass.mul_vec(xj);
            let guess = previous.as_ref().map(|theta| {
                let inv = theta[j].recip();
                xj.iter().map(|&v| v * inv).collect::<Vec<T>>()
            });
            let mut yj = deflated_cg(stiffness, &precond, rhs, guess, cg_tol, 20 * n + 100);
            deflation.apply(&mut yj);
            y.push(yj);
        }

        let ky: Dense<T> = y.iter().map(|v| stiffness.mul_vec(v)).collect();
        let my: Dense<T> = y.iter().map(|v| mass.mul_vec(v)).collect();
        let kr = gram(&y, &ky);
        let mr = gram(&y, &my);
        let (theta, coeffs) = generalized_eigen(&kr, &mr).ok_or_else(|| Error::NoConvergence {
            sweeps: sweep,
            residuals: best_residuals.iter().map(|r| r.to_f64_lossy()).collect(),
        })?;

        x = combine(&y, &coeffs);
        let mut kx = combine(&ky, &coeffs);
        let mut mx = combine(&my, &coeffs);
        for j in 0..block {
            if leading_negative(&x[j]) {
                for v in [&mut x[j], &mut kx[j], &mut mx[j]] {
                    v.iter_mut().for_each(|e| *e = -*e);
                }
            }
        }

        let mut count = k;
        while count < block - 1 && theta[count] - theta[k - 1] <= cluster_tol * theta[k - 1].abs() {
            count += 1;
        }
        let residuals: Vec<T> = (0..count)
            .map(|j| {
                let r: Vec<T> = kx[j].iter().zip(&mx[j]).map(|(&a, &b)| a - theta[j] * b).collect();
                norm(&r) / norm(&mx[j])
            })
            .collect();
        for (b, r) in best_residuals.iter_mut().zip(&residuals) {
            *b = b.min(*r);
        }

        let drift_ok = previous
            .as_ref()
            .is_some_and(|prev| (0..count).all(|j| (theta[j] - prev[j]).abs() <= ritz_tol * theta[j].abs()));
        let residual_ok = (0..count).all(|j| residuals[j] <= residual_tol * theta[j].abs());
        if drift_ok && residual_ok {
            return Ok(Spectrum {
                values: theta[..count].to_vec(),
                vectors: x.into_iter().take(count).collect(),
                residuals,
                iterations: sweep,
                deflated_constant: true,
            });
        }
        previous = Some(theta);
    }
    Err(Error::NoConvergence {
        sweeps: opts.max_sweeps,
        residuals: best_residuals.iter().map(|r| r.to_f64_lossy()).collect(),
    })
}

// Sign convention: the entry of largest magnitude is positive.
fn leading_negative<T: Real>(x: &[T]) -> bool {
    let mut best = T::zero();
    for &v in x {
        if v.abs() > best.abs() {
            best = v;
        }
    }
    best < T::zero()
}

fn gram<T: Real>(a: &Dense<T>, b: &Dense<T>) -> Dense<T> {
    let p = a.len();
    let mut g = vec![vec![T::zero(); p]; p];
    for i in 0..p {
        for j in 0..=i {
            let v = (dot(&a[i], &b[j]) + dot(&a[j], &b[i])) * T::lit(0.5);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

// Columns Σᵢ vᵢ · c[i][j].
fn combine<T: Real>(v: &Dense<T>, c: &Dense<T>) -> Dense<T> {
    let n = v.first().map_or(0, Vec::len);
    (0..c[0].len())
        .map(|j| {
            let mut out = vec![T::zero(); n];
            for (i, vi) in v.iter().enumerate() {
                axpy(c[i][j], vi, &mut out);
            }
            out
        })
        .collect()
}

/// Preconditioned conjugate gradients for the consistent singular
/// system `K y = b`, `b ⟂ 1`. Iterates stay in the range of `K` up to the
/// constant component, which the caller removes.
pub(crate) fn deflated_cg<T: Real>(
    k: &SparseSym<T>,
    precond: &IncompleteCholesky<T>,
    mut b: Vec<T>,
    guess: Option<Vec<T>>,
    rel_tol: T,
    max_iter: usize,
) -> Vec<T> {
    let n = b.len();
    let mean = b.iter().copied().sum::<T>() / T::of(n);
    b.iter_mut().for_each(|v| *v -= mean);
    let b_norm = norm(&b);
    if b_norm == T::zero() {
        return vec![T::zero(); n];
    }
    let mut y = guess.unwrap_or_else(|| vec![T::zero(); n]);
    let mut r = b.clone();
    let ky = k.mul_vec(&y);
    axpy(-T::one(), &ky, &mut r);
    let mut z = vec![T::zero(); n];
    precond.apply_deflated(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut kp = vec![T::zero(); n];
    for _ in 0..max_iter {
        if norm(&r) <= rel_tol * b_norm {
            break;
        }
        k.mul_vec_into(&p, &mut kp);
        let pkp = dot(&p, &kp);
        if !(pkp > T::zero()) {
            break;
        }
        let alpha = rz / pkp;
        axpy(alpha, &p, &mut y);
        axpy(-alpha, &kp, &mut r);
        precond.apply_deflated(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    y
}
