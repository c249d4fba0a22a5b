//! Scale-invariant isoperimetric functionals of the free surface and the
//! container, checked against their sharp constants.

mod bessel;
mod csv;
mod report;
mod sweep;

pub use self::csv::{csv_record, format_value, parse_csv, write_csv, CSV_HEADER};
pub use bessel::{bessel_j, bessel_j1_prime, j1prime_zero, BesselConstant};
pub use report::{evaluate, InequalityKind, InequalityRecord, InequalityReport, Verdict, EQUALITY_REL_TOL};
pub use sweep::{sweep_family, Argmax, ShapeFamily, SweepRow, SweepTable};
