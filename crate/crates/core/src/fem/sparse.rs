//! Symmetric sparse matrices stored as the lower triangle in CSR form.

use std::fmt::Write as _;

use crate::scalar::Real;

/// Row `i` holds columns `j ≤ i` in ascending order; the diagonal is always
/// present and stored last.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSym<T> {
    pub dimension: usize,
    pub row_offsets: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub values: Vec<T>,
}

impl<T: Real> SparseSym<T> {
    /// Zero matrix with the given lower-triangle pattern (`rows[i]` lists
    /// columns `≤ i`, sorted, including `i`).
    pub fn with_pattern(rows: &[Vec<usize>]) -> Self {
        let mut row_offsets = Vec::with_capacity(rows.len() + 1);
        row_offsets.push(0);
        let mut col_indices = Vec::new();
        for (i, cols) in rows.iter().enumerate() {
            debug_assert_eq!(cols.last(), Some(&i));
            col_indices.extend_from_slice(cols);
            row_offsets.push(col_indices.len());
        }
        let values = vec![T::zero(); col_indices.len()];
        SparseSym {
            dimension: rows.len(),
            row_offsets,
            col_indices,
            values,
        }
    }

    pub fn nnz_stored(&self) -> usize {
        self.values.len()
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = if j > i { (j, i) } else { (i, j) };
        let range = self.row_offsets[i]..self.row_offsets[i + 1];
        self.col_indices[range.clone()]
            .binary_search(&j)
            .ok()
            .map(|k| range.start + k)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.slot(i, j).map_or(T::zero(), |k| self.values[k])
    }

    /// Adds `v` to entry `(i, j)` (and implicitly `(j, i)`). Panics when the
    /// entry is outside the pattern.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        let k = self.slot(i, j).expect("entry outside sparsity pattern");
        self.values[k] += v;
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dimension)
            .map(|i| self.values[self.row_offsets[i + 1] - 1])
            .collect()
    }

    /// `y = A x`
    pub fn mul_vec_into(&self, x: &[T], y: &mut [T]) {
        y.iter_mut().for_each(|v| *v = T::zero());
        for i in 0..self.dimension {
            let (start, end) = (self.row_offsets[i], self.row_offsets[i + 1] - 1);
            let xi = x[i];
            let mut acc = self.values[end] * xi;
            for k in start..end {
                let j = self.col_indices[k];
                let a = self.values[k];
                acc += a * x[j];
                y[j] += a * xi;
            }
            y[i] += acc;
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.dimension];
        self.mul_vec_into(x, &mut y);
        y
    }

    /// `xᵀ A y`
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        dot(x, &self.mul_vec(y))
    }

    /// Full row sums (both triangles).
    pub fn row_sums(&self) -> Vec<T> {
        self.mul_vec(&vec![T::one(); self.dimension])
    }

    /// Sum of all entries of the full matrix, `1ᵀ A 1`.
    pub fn total(&self) -> T {
        self.row_sums().into_iter().sum()
    }

    pub fn scaled(&self, s: T) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// Coordinate-format dump of the full symmetric matrix: one zero-based
    /// `row col value` triple per line.
    pub fn to_coordinate_text(&self) -> String {
        let mut full: Vec<(usize, usize, T)> = Vec::with_capacity(2 * self.values.len());
        for i in 0..self.dimension {
            for k in self.row_offsets[i]..self.row_offsets[i + 1] {
                let j = self.col_indices[k];
                full.push((i, j, self.values[k]));
                if j != i {
                    full.push((j, i, self.values[k]));
                }
            }
        }
        full.sort_by_key(|&(i, j, _)| (i, j));
        let mut out = String::with_capacity(full.len() * 32);
        for (i, j, v) in full {
            writeln!(out, "{i} {j} {v:.17e}").unwrap();
        }
        out
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub(crate) fn axpy<T: Real>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
