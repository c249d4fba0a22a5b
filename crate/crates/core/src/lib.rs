//! Neumann-Laplacian and sloshing eigenvalues for containers with vertical
//! side walls, and numerical checks of the isoperimetric inequalities they
//! satisfy.
//!
//! The numerics are generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.
//!
//! ```
//! use slosh_iso::{build_shape, estimate_mu1, evaluate, DepthSpec, ShapeSpec, DEFAULT_SEED};
//!
//! let square = build_shape::<f64>(&ShapeSpec::rectangle(1.0, 1.0)).unwrap();
//! let est = estimate_mu1(&square, 4, DEFAULT_SEED).unwrap();
//! let report = evaluate("square", &square, est.mu1, est.error_gauge, DepthSpec::Infinite).unwrap();
//! assert!((est.mu1 - std::f64::consts::PI.powi(2)).abs() < 0.01);
//! assert_eq!(report.records.len(), 4);
//! ```

pub mod error;
pub mod fem;
pub mod geometry;
pub mod inequalities;
pub mod quadrature;
pub mod scalar;
pub mod sloshing;
pub mod troesch;

pub use error::{Error, Result};
pub use fem::{
    assemble, estimate_mu1, extrapolate, neumann_eigs, neumann_eigs_with, rayleigh_quotient, solve_mesh, EigenOptions,
    DEFAULT_SEED,
};
pub use geometry::{build_shape, check_symmetry, refine, triangulate, ShapeSpec};
pub use inequalities::{
    evaluate, j1prime_zero, parse_csv, sweep_family, write_csv, InequalityKind, ShapeFamily, Verdict,
};
pub use scalar::Real;
pub use sloshing::{angular_frequency, depth_curve, slosh_eig, spectral_parameter, DepthSpec};
pub use troesch::{parabolic_basin, radial_slosh_eig, radial_slosh_eigs, troesch_bound, verify_troesch, Profile};

pub type Shape = geometry::Shape<f64>;
pub type TriMesh = geometry::TriMesh<f64>;
pub type SymmetryReport = geometry::SymmetryReport<f64>;
pub type SparseSym = fem::SparseSym<f64>;
pub type Spectrum = fem::Spectrum<f64>;
pub type Mu1Estimate = fem::Mu1Estimate<f64>;
pub type PhysicalContext = sloshing::PhysicalContext<f64>;
pub type InequalityReport = inequalities::InequalityReport<f64>;
pub type InequalityRecord = inequalities::InequalityRecord<f64>;
pub type SweepTable = inequalities::SweepTable<f64>;
pub type RadialBasin = troesch::RadialBasin<f64>;
pub type RadialSpectrum = troesch::RadialSpectrum<f64>;
pub type TroeschReport = troesch::TroeschReport<f64>;
