//! P1 finite elements for the Neumann Laplacian on a free surface.

mod assemble;
mod dense;
mod eigen;
mod estimate;
mod extrapolate;
mod precond;
mod rayleigh;
mod sparse;

pub use assemble::{assemble, element_mass, element_stiffness};
pub(crate) use dense::generalized_eigen as dense_generalized_eigen;
pub use eigen::{neumann_eigs, neumann_eigs_with, EigenOptions, Lcg, Spectrum, DEFAULT_SEED};
pub use estimate::{estimate_mu1, from_levels, solve_mesh, Mu1Estimate};
pub use extrapolate::{extrapolate, Extrapolation};
pub use rayleigh::rayleigh_quotient;
pub use sparse::SparseSym;
