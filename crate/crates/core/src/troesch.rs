//! Axisymmetric shallow-water sloshing in a radial basin and the
//! volume-constrained upper bound `ν₁ ≤ (8/r₀⁴)∫₀^{r₀} h r dr`.
//!
//! Modes `f(r) cos(mθ)` of `∇·(h∇u) + νu = 0` on the disk of radius `r₀`
//! satisfy the weak form
//!
//! ```text
//! ∫ h (f′g′ + m² f g / r²) r dr = ν ∫ f g r dr
//! ```
//!
//! which is discretized with P1 elements on a uniform grid. For `m ≥ 1` the
//! axis condition `f(0) = 0` is imposed; the rim carries no condition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fem::Lcg;
use crate::fem::DEFAULT_SEED;
use crate::quadrature::adaptive_simpson;
use crate::scalar::Real;

pub const MIN_GRID: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "snake_case")]
pub enum Profile<T> {
    /// `h0 (1 − (r/r₀)²)`
    Parabolic { h0: T },
    /// `h0 (1 − r/r₀)`
    Conical { h0: T },
    /// `h0`
    Flat { h0: T },
    /// `h0 (1 − (r/r₀)⁴)`
    Quartic { h0: T },
    /// Linear interpolation of `(r, h)` samples from `r = 0` to `r = r₀`.
    Tabulated { samples: Vec<(T, T)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialBasin<T> {
    pub r0: T,
    pub profile: Profile<T>,
}

impl<T: Real> RadialBasin<T> {
    pub fn new(r0: T, profile: Profile<T>) -> Result<Self> {
        positive("r0", r0)?;
        match &profile {
            Profile::Parabolic { h0 } | Profile::Conical { h0 } | Profile::Flat { h0 } | Profile::Quartic { h0 } => {
                positive("h0", *h0)?
            }
            Profile::Tabulated { samples } => validate_table(r0, samples)?,
        }
        Ok(RadialBasin { r0, profile })
    }

    /// Reads two-column `r h` text; `r` must rise strictly from 0, and the
    /// last sample fixes `r₀`. Blank lines and `#` comments are skipped.
    pub fn from_table(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .collect();
            if cols.len() != 2 {
                return Err(Error::Parse(format!("line {}: expected two columns", no + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map(T::lit)
                    .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))
            };
            samples.push((parse(cols[0])?, parse(cols[1])?));
        }
        let r0 = samples
            .last()
            .map(|s| s.0)
            .ok_or_else(|| Error::Parse("empty profile table".into()))?;
        Self::new(r0, Profile::Tabulated { samples })
    }

    pub fn depth(&self, r: T) -> T {
        let x = r / self.r0;
        match &self.profile {
            Profile::Parabolic { h0 } => *h0 * (T::one() - x * x),
            Profile::Conical { h0 } => *h0 * (T::one() - x),
            Profile::Flat { h0 } => *h0,
            Profile::Quartic { h0 } => *h0 * (T::one() - x.powi(4)),
            Profile::Tabulated { samples } => interpolate(samples, r),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.profile {
            Profile::Parabolic { .. } => "parabolic",
            Profile::Conical { .. } => "conical",
            Profile::Flat { .. } => "flat",
            Profile::Quartic { .. } => "quartic",
            Profile::Tabulated { .. } => "tabulated",
        }
    }

    /// True when the depth vanishes at the rim, the regime of the bound.
    pub fn vanishes_at_rim(&self) -> bool {
        self.depth(self.r0).abs() <= T::tol(1e-12) * self.max_depth()
    }

    fn max_depth(&self) -> T {
        match &self.profile {
            Profile::Tabulated { samples } => samples.iter().map(|s| s.1).fold(T::zero(), T::max),
            Profile::Parabolic { h0 } | Profile::Conical { h0 } | Profile::Flat { h0 } | Profile::Quartic { h0 } => *h0,
        }
    }

    /// `∫₀^{r₀} h r dr`
    pub fn moment(&self) -> T {
        let tol = T::tol(1e-12);
        let f = |r: T| self.depth(r) * r;
        match &self.profile {
            Profile::Tabulated { samples } => samples
                .windows(2)
                .map(|w| adaptive_simpson(f, w[0].0, w[1].0, tol))
                .sum(),
            _ => adaptive_simpson(f, T::zero(), self.r0, tol),
        }
    }

    /// `2π ∫ h r dr`
    pub fn volume(&self) -> T {
        T::lit(2.0) * T::PI() * self.moment()
    }

    /// Same basin with every depth multiplied by `c`.
    pub fn scaled_depth(&self, c: T) -> Self {
        let profile = match &self.profile {
            Profile::Parabolic { h0 } => Profile::Parabolic { h0: *h0 * c },
            Profile::Conical { h0 } => Profile::Conical { h0: *h0 * c },
            Profile::Flat { h0 } => Profile::Flat { h0: *h0 * c },
            Profile::Quartic { h0 } => Profile::Quartic { h0: *h0 * c },
            Profile::Tabulated { samples } => Profile::Tabulated {
                samples: samples.iter().map(|&(r, h)| (r, h * c)).collect(),
            },
        };
        RadialBasin { r0: self.r0, profile }
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

fn validate_table<T: Real>(r0: T, samples: &[(T, T)]) -> Result<()> {
    if samples.len() < 2 {
        return Err(Error::InvalidParameter(
            "profile table needs at least two samples".into(),
        ));
    }
    if samples[0].0 != T::zero() {
        return Err(Error::InvalidParameter("profile table must start at r = 0".into()));
    }
    if let Some(w) = samples.windows(2).find(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Unsorted(format!("r = {} followed by r = {}", w[0].0, w[1].0)));
    }
    if samples.last().unwrap().0 != r0 {
        return Err(Error::InvalidParameter("profile table must end at r = r0".into()));
    }
    if let Some(&(r, h)) = samples.iter().find(|s| !(s.1 >= T::zero())) {
        return Err(Error::NonPositiveProfile {
            r: r.to_f64_lossy(),
            h: h.to_f64_lossy(),
        });
    }
    if samples.iter().all(|s| s.1 == T::zero()) {
        return Err(Error::InvalidParameter("profile table has zero volume".into()));
    }
    Ok(())
}

fn interpolate<T: Real>(samples: &[(T, T)], r: T) -> T {
    let k = samples.partition_point(|s| s.0 <= r);
    if k == 0 {
        return samples[0].1;
    }
    if k == samples.len() {
        return samples[k - 1].1;
    }
    let (a, b) = (samples[k - 1], samples[k]);
    a.1 + (b.1 - a.1) * (r - a.0) / (b.0 - a.0)
}

/// The equality-case basin `h(r) = ν (r₀² − r²)/2`.
pub fn parabolic_basin<T: Real>(nu: T, r0: T) -> Result<RadialBasin<T>> {
    positive("nu", nu)?;
    positive("r0", r0)?;
    RadialBasin::new(
        r0,
        Profile::Parabolic {
            h0: nu * r0 * r0 * T::lit(0.5),
        },
    )
}

/// Tridiagonal stiffness and mass on the free unknowns of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSystem<T> {
    /// Full grid `r_i = r₀ i/(n−1)`.
    pub grid: Vec<T>,
    /// Grid index of the first unknown (1 when `f(0) = 0` is imposed).
    pub first_unknown: usize,
    pub stiffness_diag: Vec<T>,
    /// `stiffness_off[i]` couples unknowns `i` and `i + 1`.
    pub stiffness_off: Vec<T>,
    pub mass_diag: Vec<T>,
    pub mass_off: Vec<T>,
}

impl<T: Real> RadialSystem<T> {
    pub fn dimension(&self) -> usize {
        self.stiffness_diag.len()
    }
}

pub fn assemble_radial<T: Real>(basin: &RadialBasin<T>, m: usize, n: usize) -> Result<RadialSystem<T>> {
    if n < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least {MIN_GRID} points, got {n}"
        )));
    }
    let grid: Vec<T> = (0..n).map(|i| basin.r0 * T::of(i) / T::of(n - 1)).collect();
    let mut kd = vec![T::zero(); n];
    let mut ko = vec![T::zero(); n - 1];
    let mut md = vec![T::zero(); n];
    let mut mo = vec![T::zero(); n - 1];
    let m2 = T::of(m * m);
    let gauss = T::lit(3.0).sqrt().recip();
    let mut any_positive = false;
    for e in 0..n - 1 {
        let (a, b) = (grid[e], grid[e + 1]);
        let len = b - a;
        let mid = (a + b) * T::lit(0.5);
        let w = len * T::lit(0.5);
        for s in [-gauss, gauss] {
            let r = mid + s * w;
            let h = basin.depth(r);
            if h < T::zero() {
                return Err(Error::NonPositiveProfile {
                    r: r.to_f64_lossy(),
                    h: h.to_f64_lossy(),
                });
            }
            any_positive |= h > T::zero();
            let (pa, pb) = ((b - r) / len, (r - a) / len);
            let d = len.recip();
            let grad = w * h * r * d * d;
            let ang = w * m2 * h / r;
            kd[e] += grad + ang * pa * pa;
            kd[e + 1] += grad + ang * pb * pb;
            ko[e] += -grad + ang * pa * pb;
            md[e] += w * r * pa * pa;
            md[e + 1] += w * r * pb * pb;
            mo[e] += w * r * pa * pb;
        }
    }
    if !any_positive {
        return Err(Error::NonPositiveProfile { r: 0.0, h: 0.0 });
    }
    let first = usize::from(m >= 1);
    Ok(RadialSystem {
        grid,
        first_unknown: first,
        stiffness_diag: kd[first..].to_vec(),
        stiffness_off: ko[first..].to_vec(),
        mass_diag: md[first..].to_vec(),
        mass_off: mo[first..].to_vec(),
    })
}

fn tri_mul<T: Real>(diag: &[T], off: &[T], x: &[T]) -> Vec<T> {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let mut v = diag[i] * x[i];
            if i > 0 {
                v += off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += off[i] * x[i + 1];
            }
            v
        })
        .collect()
}

// LDLᵀ of a symmetric tridiagonal matrix, without pivoting.
struct TriFactor<T> {
    d: Vec<T>,
    l: Vec<T>,
}

impl<T: Real> TriFactor<T> {
    fn new(diag: &[T], off: &[T]) -> Option<Self> {
        let n = diag.len();
        let mut d = Vec::with_capacity(n);
        let mut l = Vec::with_capacity(n.saturating_sub(1));
        d.push(diag[0]);
        for i in 1..n {
            let li = off[i - 1] / d[i - 1];
            l.push(li);
            d.push(diag[i] - li * off[i - 1]);
        }
        d.iter().all(|&v| v > T::zero()).then_some(TriFactor { d, l })
    }

    fn solve(&self, b: &[T]) -> Vec<T> {
        let n = b.len();
        let mut y = b.to_vec();
        for i in 1..n {
            let prev = y[i - 1];
            y[i] -= self.l[i - 1] * prev;
        }
        for i in 0..n {
            y[i] /= self.d[i];
        }
        for i in (0..n - 1).rev() {
            let next = y[i + 1];
            y[i] -= self.l[i] * next;
        }
        y
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialSpectrum<T> {
    pub m: usize,
    /// Ascending.
    pub values: Vec<T>,
    /// Nodal values on the full grid, normalized by `∫ f² r dr = 1`.
    pub eigenfunctions: Vec<Vec<T>>,
    pub grid: Vec<T>,
    pub n: usize,
    pub iterations: usize,
}

pub const DEFAULT_RADIAL_MODES: usize = 3;

/// Lowest radial eigenvalues for azimuthal index `m` on an `n`-point grid.
pub fn radial_slosh_eig<T: Real>(basin: &RadialBasin<T>, m: usize, n: usize) -> Result<RadialSpectrum<T>> {
    radial_slosh_eigs(basin, m, n, DEFAULT_RADIAL_MODES)
}

pub fn radial_slosh_eigs<T: Real>(
    basin: &RadialBasin<T>,
    m: usize,
    n: usize,
    count: usize,
) -> Result<RadialSpectrum<T>> {
    let sys = assemble_radial(basin, m, n)?;
    let dim = sys.dimension();
    // m = 0 keeps the constant mode, which is removed below.
    let deflate = m == 0;
    let available = if deflate { dim - 1 } else { dim };
    if count == 0 || count > available {
        return Err(Error::TooManyModes {
            requested: count,
            available,
        });
    }
    let block = (count + 2).max(4).min(available);

    let m_one = if deflate {
        tri_mul(&sys.mass_diag, &sys.mass_off, &vec![T::one(); dim])
    } else {
        Vec::new()
    };
    let one_m_one: T = m_one.iter().copied().sum();
    let project = |x: &mut Vec<T>| {
        if deflate {
            let mean = dot(&m_one, x) / one_m_one;
            x.iter_mut().for_each(|v| *v -= mean);
        }
    };
    // For m = 0 the singular system is solved with the axis value pinned;
    // consistency makes the dropped row redundant.
    let offset = usize::from(deflate);
    let factor = TriFactor::new(&sys.stiffness_diag[offset..], &sys.stiffness_off[offset..])
        .ok_or(Error::NonPositiveProfile { r: 0.0, h: 0.0 })?;
    let solve = |b: &[T]| -> Vec<T> {
        let mut x = vec![T::zero(); offset];
        x.extend(factor.solve(&b[offset..]));
        x
    };

    let ritz_tol = T::tol(1e-13);
    let residual_tol = T::tol(1e-8).max(T::epsilon().cbrt().powi(2));
    let mut rng = Lcg::new(DEFAULT_SEED);
    let mut x: Vec<Vec<T>> = (0..block)
        .map(|_| {
            let mut v: Vec<T> = (0..dim).map(|_| T::lit(rng.next_centered())).collect();
            project(&mut v);
            v
        })
        .collect();
    let mut previous: Option<Vec<T>> = None;
    let max_sweeps = 500;
    let mut best = vec![T::infinity(); count];
    for sweep in 1..=max_sweeps {
        let y: Vec<Vec<T>> = x
            .iter()
            .map(|xj| {
                let mut b = tri_mul(&sys.mass_diag, &sys.mass_off, xj);
                if deflate {
                    let mean = b.iter().copied().sum::<T>() / T::of(dim);
                    b.iter_mut().for_each(|v| *v -= mean);
                }
                let mut yj = solve(&b);
                project(&mut yj);
                yj
            })
            .collect();
        let ky: Vec<Vec<T>> = y
            .iter()
            .map(|v| tri_mul(&sys.stiffness_diag, &sys.stiffness_off, v))
            .collect();
        let my: Vec<Vec<T>> = y.iter().map(|v| tri_mul(&sys.mass_diag, &sys.mass_off, v)).collect();
        let kr = gram(&y, &ky);
        let mr = gram(&y, &my);
        let (theta, c) = crate::fem::dense_generalized_eigen(&kr, &mr).ok_or_else(|| Error::NoConvergence {
            sweeps: sweep,
            residuals: best.iter().map(|r| r.to_f64_lossy()).collect(),
        })?;
        x = combine(&y, &c);
        let kx = combine(&ky, &c);
        let mx = combine(&my, &c);
        let residuals: Vec<T> = (0..count)
            .map(|j| {
                let r: Vec<T> = kx[j].iter().zip(&mx[j]).map(|(&a, &b)| a - theta[j] * b).collect();
                dot(&r, &r).sqrt() / dot(&mx[j], &mx[j]).sqrt()
            })
            .collect();
        for (b, r) in best.iter_mut().zip(&residuals) {
            *b = b.min(*r);
        }
        let drift_ok = previous
            .as_ref()
            .is_some_and(|p| (0..count).all(|j| (theta[j] - p[j]).abs() <= ritz_tol * theta[j].abs()));
        let res_ok = (0..count).all(|j| residuals[j] <= residual_tol * theta[j].abs());
        if drift_ok && res_ok {
            let eigenfunctions = x
                .into_iter()
                .take(count)
                .map(|mut v| {
                    if v.iter()
                        .copied()
                        .fold(T::zero(), |acc, e| if e.abs() > acc.abs() { e } else { acc })
                        < T::zero()
                    {
                        v.iter_mut().for_each(|e| *e = -*e);
                    }
                    let mut full = vec![T::zero(); sys.first_unknown];
                    full.extend(v);
                    full
                })
                .collect();
            return Ok(RadialSpectrum {
                m,
                values: theta[..count].to_vec(),
                eigenfunctions,
                grid: sys.grid,
                n,
                iterations: sweep,
            });
        }
        previous = Some(theta);
    }
    Err(Error::NoConvergence {
        sweeps: max_sweeps,
        residuals: best.iter().map(|r| r.to_f64_lossy()).collect(),
    })
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn gram<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let p = a.len();
    let mut g = vec![vec![T::zero(); p]; p];
    for i in 0..p {
        for j in 0..=i {
            let v = (dot(&a[i], &b[j]) + dot(&a[j], &b[i])) * T::lit(0.5);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

fn combine<T: Real>(v: &[Vec<T>], c: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = v[0].len();
    (0..c[0].len())
        .map(|j| {
            let mut out = vec![T::zero(); n];
            for (i, vi) in v.iter().enumerate() {
                for (o, &e) in out.iter_mut().zip(vi) {
                    *o += c[i][j] * e;
                }
            }
            out
        })
        .collect()
}

/// `(8/r₀⁴) ∫₀^{r₀} h r dr`
pub fn troesch_bound<T: Real>(basin: &RadialBasin<T>) -> T {
    T::lit(8.0) * basin.moment() / basin.r0.powi(4)
}

/// Relative closeness of `ν₁/bound` to 1 reported as equality.
pub const TROESCH_EQUALITY_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TroeschReport<T> {
    pub profile: String,
    pub nu1: T,
    pub bound: T,
    pub ratio: T,
    pub equality: bool,
    /// False for basins whose depth does not vanish at the rim.
    pub in_regime: bool,
}

/// Lowest `m = 1` eigenvalue against the bound.
pub fn verify_troesch<T: Real>(basin: &RadialBasin<T>, n: usize) -> Result<TroeschReport<T>> {
    let spectrum = radial_slosh_eigs(basin, 1, n, 1)?;
    let nu1 = spectrum.values[0];
    let bound = troesch_bound(basin);
    let ratio = nu1 / bound;
    Ok(TroeschReport {
        profile: basin.kind_name().to_string(),
        nu1,
        bound,
        ratio,
        equality: (ratio - T::one()).abs() < T::lit(TROESCH_EQUALITY_TOL),
        in_regime: basin.vanishes_at_rim(),
    })
}
