//! Free-surface shapes, symmetry checks and triangle meshes.

mod mesh;
mod shape;
mod symmetry;

pub use mesh::{refine, triangulate, TriMesh};
pub use shape::{
    build_shape, polygon_area, polygon_centroid, polygon_perimeter, Curve, Shape, ShapeSpec, DEFAULT_BOUNDARY_POINTS,
    MIN_BOUNDARY_POINTS,
};
pub use symmetry::{check_symmetry, is_convex, Axis, SymmetryReport};

pub(crate) use mesh::signed_area;
