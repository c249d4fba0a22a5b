//! P1 stiffness and consistent mass assembly.

use super::sparse::SparseSym;
use crate::error::{Error, Result};
use crate::geometry::{signed_area, TriMesh};
use crate::scalar::Real;

const DEGENERATE_REL: f64 = 1e-14;

/// Element stiffness `A ∇λᵢ·∇λⱼ` of a counterclockwise triangle.
pub fn element_stiffness<T: Real>(p: [[T; 2]; 3]) -> [[T; 3]; 3] {
    let area = signed_area(p[0], p[1], p[2]);
    // Edge opposite vertex i, rotated, is 2A ∇λᵢ.
    let e: [[T; 2]; 3] = std::array::from_fn(|i| {
        let (a, b) = (p[(i + 1) % 3], p[(i + 2) % 3]);
        [b[0] - a[0], b[1] - a[1]]
    });
    let scale = (T::lit(4.0) * area).recip();
    std::array::from_fn(|i| std::array::from_fn(|j| (e[i][0] * e[j][0] + e[i][1] * e[j][1]) * scale))
}

/// Consistent element mass: `A/6` on the diagonal, `A/12` off it.
pub fn element_mass<T: Real>(area: T) -> [[T; 3]; 3] {
    let (d, o) = (area / T::lit(6.0), area / T::lit(12.0));
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { d } else { o }))
}

fn pattern<T>(mesh: &TriMesh<T>) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = (0..mesh.nodes.len()).map(|i| vec![i]).collect();
    for t in &mesh.triangles {
        for &a in t {
            for &b in t {
                if b < a {
                    rows[a].push(b);
                }
            }
        }
    }
    for r in &mut rows {
        r.sort_unstable();
        r.dedup();
    }
    rows
}

/// Returns `(stiffness, mass)`, the discrete forms of `∫|∇u|²` and `∫u²`.
pub fn assemble<T: Real>(mesh: &TriMesh<T>) -> Result<(SparseSym<T>, SparseSym<T>)> {
    let total = mesh.area();
    let threshold = T::lit(DEGENERATE_REL) * total.abs();
    let rows = pattern(mesh);
    let mut stiffness = SparseSym::with_pattern(&rows);
    let mut mass = SparseSym::with_pattern(&rows);
    for (index, tri) in mesh.triangles.iter().enumerate() {
        let p = tri.map(|i| mesh.nodes[i]);
        let area = signed_area(p[0], p[1], p[2]);
        if !(area > threshold) {
            return Err(Error::DegenerateTriangle {
                index,
                area: area.to_f64_lossy(),
                threshold: threshold.to_f64_lossy(),
            });
        }
        let ke = element_stiffness(p);
        let me = element_mass(area);
        for a in 0..3 {
            for b in 0..3 {
                if tri[b] <= tri[a] {
                    stiffness.add(tri[a], tri[b], ke[a][b]);
                    mass.add(tri[a], tri[b], me[a][b]);
                }
            }
        }
    }
    Ok((stiffness, mass))
}
