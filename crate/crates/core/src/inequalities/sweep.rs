//! Parametric shape families evaluated in one pass.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{evaluate, InequalityKind, InequalityReport};
use crate::fem::estimate_mu1;
use crate::geometry::{build_shape, ShapeSpec};
use crate::scalar::Real;
use crate::sloshing::DepthSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ShapeFamily {
    /// `aspect × 1` rectangles.
    Rectangles { aspects: Vec<f64> },
    /// Unit-side regular polygons.
    RegularPolygons { sides: Vec<usize> },
    /// Ellipses with `a = 1`, `b = ratio`.
    Ellipses { ratios: Vec<f64>, boundary_points: usize },
}

impl ShapeFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeFamily::Rectangles { .. } => "rectangles",
            ShapeFamily::RegularPolygons { .. } => "regular_polygons",
            ShapeFamily::Ellipses { .. } => "ellipses",
        }
    }

    /// `(parameter, spec)` pairs sorted by parameter.
    pub fn members(&self) -> Vec<(f64, ShapeSpec)> {
        let mut out: Vec<(f64, ShapeSpec)> = match self {
            ShapeFamily::Rectangles { aspects } => aspects.iter().map(|&a| (a, ShapeSpec::rectangle(a, 1.0))).collect(),
            ShapeFamily::RegularPolygons { sides } => sides
                .iter()
                .map(|&n| (n as f64, ShapeSpec::regular_polygon(n, 1.0)))
                .collect(),
            ShapeFamily::Ellipses {
                ratios,
                boundary_points,
            } => ratios
                .iter()
                .map(|&r| (r, ShapeSpec::ellipse(1.0, r, *boundary_points)))
                .collect(),
        };
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub parameter: f64,
    pub shape_id: String,
    /// Error text for shapes that failed; the sweep carries on.
    pub outcome: std::result::Result<InequalityReport<T>, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Argmax<T> {
    pub name: InequalityKind,
    pub shape_id: String,
    pub parameter: f64,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable<T> {
    pub family: String,
    pub rows: Vec<SweepRow<T>>,
    pub argmax: Vec<Argmax<T>>,
}

impl<T: Real> SweepTable<T> {
    pub fn reports(&self) -> impl Iterator<Item = &InequalityReport<T>> {
        self.rows.iter().filter_map(|r| r.outcome.as_ref().ok())
    }

    pub fn argmax_of(&self, kind: InequalityKind) -> Option<&Argmax<T>> {
        self.argmax.iter().find(|a| a.name == kind)
    }
}

/// One report per family member at `mesh_level` (with extrapolation over
/// the two coarser levels). Members run on the current rayon pool; rows
/// keep family order.
pub fn sweep_family<T: Real>(family: &ShapeFamily, depth: DepthSpec<T>, mesh_level: usize, seed: u64) -> SweepTable<T> {
    let members = family.members();
    let rows: Vec<SweepRow<T>> = members
        .par_iter()
        .map(|(parameter, spec)| {
            let shape_id = spec.label();
            let outcome = build_shape::<T>(spec)
                .and_then(|shape| {
                    let est = estimate_mu1(&shape, mesh_level, seed)?;
                    evaluate(&shape_id, &shape, est.mu1, est.error_gauge, depth)
                })
                .map_err(|e| format!("{}: {e}", e.code()));
            SweepRow {
                parameter: *parameter,
                shape_id,
                outcome,
            }
        })
        .collect();
    let argmax = argmax_rows(&rows);
    SweepTable {
        family: family.name().to_string(),
        rows,
        argmax,
    }
}

fn argmax_rows<T: Real>(rows: &[SweepRow<T>]) -> Vec<Argmax<T>> {
    InequalityKind::ALL
        .iter()
        .filter_map(|&kind| {
            rows.iter()
                .filter_map(|row| row.outcome.as_ref().ok().map(|rep| (row, rep.record(kind).value)))
                // first maximum wins ties
                .fold(None, |best: Option<(&SweepRow<T>, T)>, (row, v)| match best {
                    Some((_, bv)) if bv >= v => best,
                    _ => Some((row, v)),
                })
                .map(|(row, value)| Argmax {
                    name: kind,
                    shape_id: row.shape_id.clone(),
                    parameter: row.parameter,
                    value,
                })
        })
        .collect()
}
