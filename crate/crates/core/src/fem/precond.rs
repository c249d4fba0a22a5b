//! Incomplete Cholesky preconditioner on the stored lower-triangle pattern.

use super::sparse::SparseSym;
use crate::scalar::Real;

/// `L Lᵀ ≈ P (A + shift·diag(A)) Pᵀ` with `L` restricted to the pattern of
/// the reordered `A`.
#[derive(Debug, Clone)]
pub(crate) struct IncompleteCholesky<T> {
    factor: SparseSym<T>,
    /// `order[new] = old`
    order: Vec<usize>,
}

impl<T: Real> IncompleteCholesky<T> {
    /// Factors in line order (see [`line_order`]), retrying with a growing
    /// diagonal shift until every pivot is positive.
    pub(crate) fn new(a: &SparseSym<T>) -> Self {
        let order = line_order(a);
        let permuted = permute(a, &order);
        let mut shift = T::lit(1e-6);
        loop {
            if let Some(factor) = Self::try_factor(&permuted, shift) {
                return IncompleteCholesky { factor, order };
            }
            shift *= T::lit(10.0);
        }
    }

    fn try_factor(a: &SparseSym<T>, shift: T) -> Option<SparseSym<T>> {
        let mut l = a.clone();
        let rows = &l.row_offsets;
        let cols = &l.col_indices;
        for i in 0..l.dimension {
            let (start, diag) = (rows[i], rows[i + 1] - 1);
            for p in start..diag {
                let k = cols[p];
                // Σ_{j<k} L_ij L_kj over the shared pattern.
                let (mut a_ptr, mut b_ptr) = (start, rows[k]);
                let b_end = rows[k + 1] - 1;
                let mut s = T::zero();
                while a_ptr < p && b_ptr < b_end {
                    let (ca, cb) = (cols[a_ptr], cols[b_ptr]);
                    if ca == cb {
                        s += l.values[a_ptr] * l.values[b_ptr];
                        a_ptr += 1;
                        b_ptr += 1;
                    } else if ca < cb {
                        a_ptr += 1;
                    } else {
                        b_ptr += 1;
                    }
                }
                l.values[p] = (l.values[p] - s) / l.values[b_end];
            }
            let sq: T = l.values[start..diag].iter().map(|&v| v * v).sum();
            let pivot = l.values[diag] * (T::one() + shift) - sq;
            if !(pivot > T::zero()) {
                return None;
            }
            l.values[diag] = pivot.sqrt();
        }
        Some(l)
    }

    /// `z = Π (L Lᵀ)⁻¹ Π r` with `Π` the orthogonal projector off the
    /// constants, so the preconditioner acts on the range of a singular
    /// Neumann stiffness.
    pub(crate) fn apply_deflated(&self, r: &[T], z: &mut [T]) {
        let n = T::of(r.len());
        let mean = r.iter().copied().sum::<T>() / n;
        let centered: Vec<T> = self.order.iter().map(|&old| r[old] - mean).collect();
        let mut w = vec![T::zero(); r.len()];
        self.apply(&centered, &mut w);
        let mean = w.iter().copied().sum::<T>() / n;
        for (&old, &v) in self.order.iter().zip(&w) {
            z[old] = v - mean;
        }
    }

    /// `z = (L Lᵀ)⁻¹ r` in the factor's ordering.
    fn apply(&self, r: &[T], z: &mut [T]) {
        let l = &self.factor;
        z.copy_from_slice(r);
        for i in 0..l.dimension {
            let (start, diag) = (l.row_offsets[i], l.row_offsets[i + 1] - 1);
            let mut s = z[i];
            for p in start..diag {
                s -= l.values[p] * z[l.col_indices[p]];
            }
            z[i] = s / l.values[diag];
        }
        for i in (0..l.dimension).rev() {
            let (start, diag) = (l.row_offsets[i], l.row_offsets[i + 1] - 1);
            let zi = z[i] / l.values[diag];
            z[i] = zi;
            for p in start..diag {
                z[l.col_indices[p]] -= l.values[p] * zi;
            }
        }
    }
}

/// Symmetric permutation `B[i][j] = A[order[i]][order[j]]`.
fn permute<T: Real>(a: &SparseSym<T>, order: &[usize]) -> SparseSym<T> {
    let n = a.dimension;
    let mut new_of = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for i in 0..n {
        for k in a.row_offsets[i]..a.row_offsets[i + 1] {
            let (ni, nj) = (new_of[i], new_of[a.col_indices[k]]);
            let (r, c) = if ni >= nj { (ni, nj) } else { (nj, ni) };
            rows[r].push((c, a.values[k]));
        }
    }
    let mut pattern = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(a.values.len());
    for row in &mut rows {
        row.sort_by_key(|e| e.0);
        pattern.push(row.iter().map(|e| e.0).collect::<Vec<_>>());
        values.extend(row.iter().map(|e| e.1));
    }
    let mut out = SparseSym::with_pattern(&pattern);
    out.values = values;
    out
}

/// Node order that keeps strongly coupled neighbours adjacent: breadth-first
/// rings from the node of highest degree, each ring walked as chains that
/// follow the largest off-diagonal magnitude.
pub(crate) fn line_order<T: Real>(a: &SparseSym<T>) -> Vec<usize> {
    let n = a.dimension;
    let mut adj: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for i in 0..n {
        for k in a.row_offsets[i]..a.row_offsets[i + 1] - 1 {
            let j = a.col_indices[k];
            let w = a.values[k].abs();
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
    }
    let mut ring = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seeds: Vec<usize> = (0..n).collect();
    // Stable: highest degree first, then lowest index.
    seeds.sort_by(|&x, &y| adj[y].len().cmp(&adj[x].len()).then(x.cmp(&y)));
    for &seed in &seeds {
        if ring[seed] != usize::MAX {
            continue;
        }
        ring[seed] = 0;
        let mut current = vec![seed];
        let mut depth = 0;
        while !current.is_empty() {
            let mut next = Vec::new();
            for &u in &current {
                for &(v, _) in &adj[u] {
                    if ring[v] == usize::MAX {
                        ring[v] = depth + 1;
                        next.push(v);
                    }
                }
            }
            // chains inside the ring
            current.sort_unstable();
            let mut placed = vec![false; current.len()];
            let pos = |v: usize, cur: &[usize]| cur.binary_search(&v).ok();
            for start in 0..current.len() {
                if placed[start] {
                    continue;
                }
                let mut u = current[start];
                placed[start] = true;
                order.push(u);
                loop {
                    let step = adj[u]
                        .iter()
                        .filter(|&&(v, _)| ring[v] == depth)
                        .filter_map(|&(v, w)| pos(v, &current).filter(|&p| !placed[p]).map(|p| (p, v, w)))
                        .fold(None, |best: Option<(usize, usize, T)>, c| match best {
                            Some(b) if b.2 > c.2 || (b.2 == c.2 && b.1 < c.1) => Some(b),
                            _ => Some(c),
                        });
                    match step {
                        Some((p, v, _)) => {
                            placed[p] = true;
                            order.push(v);
                            u = v;
                        }
                        None => break,
                    }
                }
            }
            current = next;
            depth += 1;
        }
    }
    order
}
