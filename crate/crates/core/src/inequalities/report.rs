//! The four scale-invariant functionals and their margins.

use serde::{Deserialize, Serialize};

use super::bessel::BesselConstant;
use crate::error::{Error, Result};
use crate::geometry::{check_symmetry, Shape, SymmetryReport};
use crate::scalar::Real;
use crate::sloshing::{slosh_eig, DepthSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityKind {
    /// `P² μ₁ ≤ 16π²`, convex with two symmetry axes.
    Conj,
    /// `P ν₁ ≤ 4π`, same hypotheses.
    Iso,
    /// `|F| μ₁ ≤ π (j'₁,₁)²`, simply connected.
    Szego,
    /// `√|F| ν₁ ≤ √π j'₁,₁`, simply connected.
    Isop,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 4] = [
        InequalityKind::Conj,
        InequalityKind::Iso,
        InequalityKind::Szego,
        InequalityKind::Isop,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InequalityKind::Conj => "conj",
            InequalityKind::Iso => "iso",
            InequalityKind::Szego => "szego",
            InequalityKind::Isop => "isop",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityRecord<T> {
    pub name: InequalityKind,
    pub value: T,
    pub bound: T,
    /// `bound − value`
    pub margin: T,
    /// Uncertainty of `value` propagated from the `μ₁` error gauge.
    pub band: T,
    pub applicable: bool,
    pub applicability_reason: String,
}

/// Relative closeness to the bound that still counts as attaining it.
pub const EQUALITY_REL_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    PassEquality,
    Conjectural,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::PassEquality => "PASS(equality)",
            Verdict::Conjectural => "CONJECTURAL",
            Verdict::Fail => "FAIL",
        })
    }
}

impl<T: Real> InequalityRecord<T> {
    /// Slack allowed around the bound: the uncertainty band, floored at
    /// [`EQUALITY_REL_TOL`] of the bound.
    pub fn tolerance(&self) -> T {
        self.band.max(T::lit(EQUALITY_REL_TOL) * self.bound)
    }

    pub fn holds_within_band(&self) -> bool {
        self.value <= self.bound + self.band
    }

    pub fn verdict(&self) -> Verdict {
        if !self.applicable {
            return Verdict::Conjectural;
        }
        let tol = self.tolerance();
        if self.margin.abs() <= tol {
            Verdict::PassEquality
        } else if self.margin > T::zero() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport<T> {
    pub shape_id: String,
    #[serde(rename = "P")]
    pub perimeter: T,
    #[serde(rename = "A")]
    pub area: T,
    pub mu1: T,
    pub mu1_err: T,
    pub depth: DepthSpec<T>,
    /// `ν₁` at `depth`.
    pub nu1: T,
    pub nu1_inf: T,
    pub records: Vec<InequalityRecord<T>>,
}

impl<T: Real> InequalityReport<T> {
    pub fn record(&self, kind: InequalityKind) -> &InequalityRecord<T> {
        self.records
            .iter()
            .find(|r| r.name == kind)
            .expect("all four records present")
    }
}

/// `dν/dμ` of `ν = √μ tanh(d√μ)`.
pub(crate) fn dnu_dmu<T: Real>(mu: T, depth: DepthSpec<T>) -> T {
    let root = mu.sqrt();
    let half_inv = (T::lit(2.0) * root).recip();
    match depth {
        DepthSpec::Infinite => half_inv,
        DepthSpec::Finite(d) => {
            let x = d * root;
            let t = x.tanh();
            (t + x * (T::one() - t * t)) * half_inv
        }
    }
}

pub(crate) fn applicability<T: Real>(sym: &SymmetryReport<T>) -> [(bool, String); 2] {
    let two_axes = if !sym.is_convex {
        (false, "conjectural regime: free surface is not convex".to_string())
    } else if !sym.has_two_axes {
        (
            false,
            format!(
                "conjectural regime: {} symmetry axes found, two required",
                sym.axes.len()
            ),
        )
    } else {
        (true, format!("convex with {} symmetry axes", sym.axes.len()))
    };
    let simple = if sym.is_simply_connected {
        (true, "simply connected".to_string())
    } else {
        (false, "not simply connected".to_string())
    };
    [two_axes, simple]
}

/// Evaluates the four functionals for a shape with Neumann estimate
/// `mu1 ± mu1_err` over a container of the given depth.
pub fn evaluate<T: Real>(
    shape_id: &str,
    shape: &Shape<T>,
    mu1: T,
    mu1_err: T,
    depth: DepthSpec<T>,
) -> Result<InequalityReport<T>> {
    if !(mu1 > T::zero()) {
        return Err(Error::NonPositive {
            what: "mu1",
            value: mu1.to_f64_lossy(),
        });
    }
    if !(mu1_err >= T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "mu1 error gauge must be >= 0, got {mu1_err}"
        )));
    }
    let sym = check_symmetry(shape);
    build_report(
        shape_id.to_string(),
        shape.perimeter_exact,
        shape.area_exact,
        mu1,
        mu1_err,
        depth,
        applicability(&sym),
    )
}

pub(crate) fn build_report<T: Real>(
    shape_id: String,
    perimeter: T,
    area: T,
    mu1: T,
    mu1_err: T,
    depth: DepthSpec<T>,
    flags: [(bool, String); 2],
) -> Result<InequalityReport<T>> {
    let constants = BesselConstant::<T>::compute();
    let nu1 = slosh_eig(mu1, depth)?;
    let nu1_inf = slosh_eig(mu1, DepthSpec::Infinite)?;
    let dnu = dnu_dmu(mu1, depth) * mu1_err;
    let sqrt_area = area.sqrt();
    let [(sym_ok, sym_reason), (simple_ok, simple_reason)] = flags;
    let make = |name, value: T, bound: T, band: T, applicable: bool, reason: &str| InequalityRecord {
        name,
        value,
        bound,
        margin: bound - value,
        band,
        applicable,
        applicability_reason: reason.to_string(),
    };
    let records = vec![
        make(
            InequalityKind::Conj,
            perimeter * perimeter * mu1,
            constants.perimeter_neumann_bound(),
            perimeter * perimeter * mu1_err,
            sym_ok,
            &sym_reason,
        ),
        make(
            InequalityKind::Iso,
            perimeter * nu1,
            constants.perimeter_sloshing_bound(),
            perimeter * dnu,
            sym_ok,
            &sym_reason,
        ),
        make(
            InequalityKind::Szego,
            area * mu1,
            constants.area_neumann_bound(),
            area * mu1_err,
            simple_ok,
            &simple_reason,
        ),
        make(
            InequalityKind::Isop,
            sqrt_area * nu1,
            constants.area_sloshing_bound(),
            sqrt_area * dnu,
            simple_ok,
            &simple_reason,
        ),
    ];
    Ok(InequalityReport {
        shape_id,
        perimeter,
        area,
        mu1,
        mu1_err,
        depth,
        nu1,
        nu1_inf,
        records,
    })
}
