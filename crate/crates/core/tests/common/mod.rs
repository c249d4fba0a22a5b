//! Dense reference eigensolver and hand-built radial matrices, written
//! independently of the library's solvers.
#![allow(dead_code)]

use slosh_iso::fem::SparseSym;

pub type Dense = Vec<Vec<f64>>;

pub fn to_dense(a: &SparseSym<f64>) -> Dense {
    let n = a.dimension;
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in a.row_offsets[i]..a.row_offsets[i + 1] {
            let j = a.col_indices[k];
            out[i][j] = a.values[k];
            out[j][i] = a.values[k];
        }
    }
    out
}

pub fn tridiagonal(diag: &[f64], off: &[f64]) -> Dense {
    let n = diag.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        out[i][i] = diag[i];
        if i + 1 < n {
            out[i][i + 1] = off[i];
            out[i + 1][i] = off[i];
        }
    }
    out
}

/// Lower Cholesky factor, row by row.
fn cholesky(a: &Dense) -> Dense {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                assert!(d > 0.0, "matrix is not positive definite");
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    l
}

/// `L⁻¹ A L⁻ᵀ`
fn reduce(a: &Dense, l: &Dense) -> Dense {
    let n = a.len();
    // Y = L⁻¹ A, column by column via forward substitution
    let mut y = vec![vec![0.0; n]; n];
    for c in 0..n {
        for i in 0..n {
            let s: f64 = (0..i).map(|k| l[i][k] * y[k][c]).sum();
            y[i][c] = (a[i][c] - s) / l[i][i];
        }
    }
    // C = Y L⁻ᵀ, i.e. Cᵀ = L⁻¹ Yᵀ
    let mut c = vec![vec![0.0; n]; n];
    for r in 0..n {
        for i in 0..n {
            let s: f64 = (0..i).map(|k| l[i][k] * c[r][k]).sum();
            c[r][i] = (y[r][i] - s) / l[i][i];
        }
    }
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (c[i][j] + c[j][i]);
            c[i][j] = v;
            c[j][i] = v;
        }
    }
    c
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Dense) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    vals
}

/// All eigenvalues of `K u = λ M u` with `M` positive definite.
pub fn generalized_eigenvalues(k: &Dense, m: &Dense) -> Vec<f64> {
    let l = cholesky(m);
    jacobi_eigenvalues(reduce(k, &l))
}

/// Nonzero Neumann eigenvalues: the generalized spectrum minus its
/// (numerically) zero member.
pub fn neumann_oracle(k: &SparseSym<f64>, m: &SparseSym<f64>) -> Vec<f64> {
    let vals = generalized_eigenvalues(&to_dense(k), &to_dense(m));
    let top = vals.last().copied().unwrap_or(1.0).abs();
    assert!(
        vals[0].abs() < 1e-9 * top,
        "expected one zero eigenvalue, got {}",
        vals[0]
    );
    assert!(vals[1] > 1e-9 * top, "zero eigenvalue is not simple");
    vals[1..].to_vec()
}

/// P1 radial matrices for `∫h(f′g′ + m²fg/r²) r dr` and `∫fg r dr` on the
/// uniform grid of `n` points over `[0, r0]`, two Gauss points per element,
/// restricted to the free unknowns (node 0 dropped for `m ≥ 1`).
pub fn radial_matrices(h: impl Fn(f64) -> f64, r0: f64, m: usize, n: usize) -> (Dense, Dense) {
    let dx = r0 / (n - 1) as f64;
    let mut k = vec![vec![0.0; n]; n];
    let mut mm = vec![vec![0.0; n]; n];
    let g = 1.0 / 3f64.sqrt();
    for e in 0..n - 1 {
        let left = e as f64 * dx;
        for xi in [-g, g] {
            let t = 0.5 * (1.0 + xi);
            let r = left + t * dx;
            let w = 0.5 * dx;
            let phi = [1.0 - t, t];
            let dphi = [-1.0 / dx, 1.0 / dx];
            for a in 0..2 {
                for b in 0..2 {
                    let stiff = h(r) * (dphi[a] * dphi[b] + (m * m) as f64 * phi[a] * phi[b] / (r * r)) * r;
                    k[e + a][e + b] += w * stiff;
                    mm[e + a][e + b] += w * phi[a] * phi[b] * r;
                }
            }
        }
    }
    let first = usize::from(m >= 1);
    let cut = |a: Dense| -> Dense { a[first..].iter().map(|row| row[first..].to_vec()).collect() };
    (cut(k), cut(mm))
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
