//! Small dense symmetric kernels for the Rayleigh–Ritz step.

use crate::scalar::Real;

pub(crate) type Dense<T> = Vec<Vec<T>>;

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub(crate) fn cholesky<T: Real>(a: &Dense<T>) -> Option<Dense<T>> {
    let n = a.len();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Returns
/// ascending eigenvalues and the eigenvectors as columns.
pub(crate) fn jacobi_eigen<T: Real>(a: &Dense<T>) -> (Vec<T>, Dense<T>) {
    let n = a.len();
    let mut a = a.clone();
    let mut v: Dense<T> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    for _ in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let diag: T = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= T::epsilon() * T::epsilon() * diag || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::lit(2.0) * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
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
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = (0..n).map(|r| order.iter().map(|&c| v[r][c]).collect()).collect();
    (values, vectors)
}

/// Solves `A c = θ B c` with `B` positive definite. Columns of the returned
/// matrix are `B`-orthonormal.
pub(crate) fn generalized_eigen<T: Real>(a: &Dense<T>, b: &Dense<T>) -> Option<(Vec<T>, Dense<T>)> {
    let n = a.len();
    let l = cholesky(b)?;
    // C = L⁻¹ A L⁻ᵀ, by forward substitution on columns then rows.
    let mut w = a.clone(); // W = L⁻¹ A
    for col in 0..n {
        for i in 0..n {
            let mut s = w[i][col];
            for k in 0..i {
                s -= l[i][k] * w[k][col];
            }
            w[i][col] = s / l[i][i];
        }
    }
    let mut c = vec![vec![T::zero(); n]; n]; // C = W L⁻ᵀ  ⇔  L Cᵀ = Wᵀ
    for row in 0..n {
        for i in 0..n {
            let mut s = w[row][i];
            for k in 0..i {
                s -= l[i][k] * c[row][k];
            }
            c[row][i] = s / l[i][i];
        }
    }
    for i in 0..n {
        for j in 0..i {
            let avg = (c[i][j] + c[j][i]) * T::lit(0.5);
            c[i][j] = avg;
            c[j][i] = avg;
        }
    }
    let (values, y) = jacobi_eigen(&c);
    // x = L⁻ᵀ y
    let mut x = vec![vec![T::zero(); n]; n];
    for col in 0..n {
        for i in (0..n).rev() {
            let mut s = y[i][col];
            for k in i + 1..n {
                s -= l[k][i] * x[k][col];
            }
            x[i][col] = s / l[i][i];
        }
    }
    Some((values, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_diagonalizes() {
        let a = vec![vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]];
        let (vals, _) = jacobi_eigen(&a);
        let s2 = 2f64.sqrt();
        let expected = [2.0 - s2, 2.0, 2.0 + s2];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-14);
        }
    }

    #[test]
    fn generalized_b_orthonormal() {
        let a = vec![vec![4.0, 1.0], vec![1.0, 3.0]];
        let b = vec![vec![2.0, 0.5], vec![0.5, 1.0]];
        let (vals, x) = generalized_eigen(&a, &b).unwrap();
        for c in 0..2 {
            for d in 0..2 {
                let mut bxx = 0.0f64;
                let mut axx = 0.0f64;
                for i in 0..2 {
                    for j in 0..2 {
                        bxx += x[i][c] * b[i][j] * x[j][d];
                        axx += x[i][c] * a[i][j] * x[j][d];
                    }
                }
                let delta = if c == d { 1.0 } else { 0.0 };
                assert!((bxx - delta).abs() < 1e-13);
                assert!((axx - delta * vals[c]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        assert!(cholesky(&vec![vec![1.0, 2.0], vec![2.0, 1.0]]).is_none());
    }
}
