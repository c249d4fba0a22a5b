//! Sloshing eigenvalues of vertical-wall containers `F × (−d, 0)` from the
//! Neumann eigenvalues of the free surface `F`.
//!
//! A Neumann eigenfunction `u` of `F` with eigenvalue `μ` lifts to the
//! potential `u(x, z)·cosh(√μ (y + d))`, which gives
//! `ν = √μ · tanh(d √μ)`, and `ν = √μ` for infinite depth.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Flat-bottomed container depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthSpec<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> DepthSpec<T> {
    pub fn finite(d: T) -> Result<Self> {
        if d > T::zero() && d.is_finite() {
            Ok(DepthSpec::Finite(d))
        } else {
            Err(Error::NonPositive {
                what: "depth",
                value: d.to_f64_lossy(),
            })
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DepthSpec::Infinite)
    }
}

impl<T: Real> std::fmt::Display for DepthSpec<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DepthSpec::Finite(d) => write!(f, "{d}"),
            DepthSpec::Infinite => f.write_str("inf"),
        }
    }
}

impl<T: Real> std::str::FromStr for DepthSpec<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" | "Infinity" | "infinity" => Ok(DepthSpec::Infinite),
            other => {
                let d: f64 = other.parse().map_err(|_| Error::Parse(format!("bad depth: {other}")))?;
                DepthSpec::finite(T::lit(d))
            }
        }
    }
}

/// Gravitational setting, `ν = ω²/g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalContext<T> {
    pub g: T,
}

impl<T: Real> Default for PhysicalContext<T> {
    fn default() -> Self {
        PhysicalContext { g: T::lit(9.81) }
    }
}

impl<T: Real> PhysicalContext<T> {
    pub fn new(g: T) -> Result<Self> {
        positive("g", g)?;
        Ok(PhysicalContext { g })
    }
}

fn positive<T: Real>(what: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive {
            what,
            value: v.to_f64_lossy(),
        })
    }
}

// Beyond this argument tanh rounds to 1 in f64.
const SATURATION: f64 = 20.0;

/// Sloshing eigenvalue of the vertical-wall container over a free surface
/// with Neumann eigenvalue `mu`.
pub fn slosh_eig<T: Real>(mu: T, depth: DepthSpec<T>) -> Result<T> {
    positive("mu", mu)?;
    let root = mu.sqrt();
    match depth {
        DepthSpec::Infinite => Ok(root),
        DepthSpec::Finite(d) => {
            positive("depth", d)?;
            let x = d * root;
            if x > T::lit(SATURATION) {
                Ok(root)
            } else {
                Ok(root * x.tanh())
            }
        }
    }
}

/// `(d, ν(d))` rows for ascending depths.
pub fn depth_curve<T: Real>(mu: T, depths: &[T]) -> Result<Vec<(T, T)>> {
    positive("mu", mu)?;
    if let Some(w) = depths.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::Unsorted(format!("depth {} followed by {}", w[0], w[1])));
    }
    depths
        .iter()
        .map(|&d| Ok((d, slosh_eig(mu, DepthSpec::finite(d)?)?)))
        .collect()
}

/// `ω = √(g ν)`
pub fn angular_frequency<T: Real>(nu: T, ctx: &PhysicalContext<T>) -> Result<T> {
    positive("nu", nu)?;
    positive("g", ctx.g)?;
    Ok((ctx.g * nu).sqrt())
}

/// `ν = ω² / g`
pub fn spectral_parameter<T: Real>(omega: T, ctx: &PhysicalContext<T>) -> Result<T> {
    positive("omega", omega)?;
    positive("g", ctx.g)?;
    Ok(omega * omega / ctx.g)
}
