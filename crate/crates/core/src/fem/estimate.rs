//! Mesh hierarchy → eigensolve → extrapolated `μ₁` for one shape.

use serde::Serialize;

use super::{assemble, extrapolate, neumann_eigs, Extrapolation, Spectrum};
use crate::error::{Error, Result};
use crate::geometry::{triangulate, Shape, TriMesh};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mu1Estimate<T> {
    pub mu1: T,
    pub error_gauge: T,
    /// `(level, discrete μ₁)` on the levels used.
    pub levels: Vec<(usize, T)>,
    /// False when the level sequence was not monotone and the finest value
    /// is reported with the last level gap as its gauge.
    pub extrapolated: bool,
}

/// Solves on the mesh hierarchy `finest_level − 2 ..= finest_level` and
/// extrapolates `μ₁`.
pub fn estimate_mu1<T: Real>(shape: &Shape<T>, finest_level: usize, seed: u64) -> Result<Mu1Estimate<T>> {
    if finest_level < 2 {
        return Err(Error::TooFewLevels(finest_level + 1));
    }
    let finest = triangulate(shape, finest_level);
    let mut meshes: Vec<&TriMesh<T>> = vec![&finest];
    while meshes.len() < 3 {
        let parent = meshes.last().unwrap().parent.as_deref().expect("mesh lineage");
        meshes.push(parent);
    }
    meshes.reverse();
    let mut levels = Vec::with_capacity(3);
    for mesh in meshes {
        let spectrum = solve_mesh(mesh, 1, seed)?;
        levels.push((mesh.refinement_level, spectrum.values[0]));
    }
    Ok(from_levels(levels))
}

/// Extrapolates, falling back to the finest value when the sequence is not
/// monotone.
pub fn from_levels<T: Real>(levels: Vec<(usize, T)>) -> Mu1Estimate<T> {
    match extrapolate(&levels) {
        Ok(Extrapolation { estimate, error_gauge }) => Mu1Estimate {
            mu1: estimate,
            error_gauge,
            levels,
            extrapolated: true,
        },
        Err(_) => {
            let n = levels.len();
            let fine = levels[n - 1].1;
            let gap = (fine - levels[n - 2].1).abs();
            Mu1Estimate {
                mu1: fine,
                error_gauge: gap,
                levels,
                extrapolated: false,
            }
        }
    }
}

pub fn solve_mesh<T: Real>(mesh: &TriMesh<T>, k: usize, seed: u64) -> Result<Spectrum<T>> {
    let (stiffness, mass) = assemble(mesh)?;
    neumann_eigs(&stiffness, &mass, k, seed)
}
