//! Free-surface shape descriptions and their exact measures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;
use crate::scalar::Real;

pub const DEFAULT_BOUNDARY_POINTS: usize = 256;
pub const MIN_BOUNDARY_POINTS: usize = 16;

fn default_boundary_points() -> usize {
    DEFAULT_BOUNDARY_POINTS
}

/// Parametric or polygonal description of a convex free surface.
///
/// Lengths are in abstract length units. Curved kinds are sampled with
/// `boundary_points` vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeSpec {
    Rectangle {
        width: f64,
        height: f64,
    },
    RegularPolygon {
        n: usize,
        side: f64,
    },
    /// Counterclockwise, strictly convex vertex list.
    ConvexPolygon {
        vertices: Vec<[f64; 2]>,
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default = "default_boundary_points")]
        boundary_points: usize,
    },
    /// Two semicircles of `radius` joined by straight sides of `length`.
    Stadium {
        length: f64,
        radius: f64,
        #[serde(default = "default_boundary_points")]
        boundary_points: usize,
    },
    /// `|x/a|^p + |y/b|^p = 1` with `p = exponent ≥ 2`.
    Superellipse {
        a: f64,
        b: f64,
        exponent: f64,
        #[serde(default = "default_boundary_points")]
        boundary_points: usize,
    },
}

impl ShapeSpec {
    pub fn rectangle(width: f64, height: f64) -> Self {
        ShapeSpec::Rectangle { width, height }
    }

    pub fn regular_polygon(n: usize, side: f64) -> Self {
        ShapeSpec::RegularPolygon { n, side }
    }

    pub fn ellipse(a: f64, b: f64, boundary_points: usize) -> Self {
        ShapeSpec::Ellipse { a, b, boundary_points }
    }

    pub fn disk(radius: f64, boundary_points: usize) -> Self {
        Self::ellipse(radius, radius, boundary_points)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ShapeSpec::Rectangle { .. } => "rectangle",
            ShapeSpec::RegularPolygon { .. } => "regular_polygon",
            ShapeSpec::ConvexPolygon { .. } => "convex_polygon",
            ShapeSpec::Ellipse { .. } => "ellipse",
            ShapeSpec::Stadium { .. } => "stadium",
            ShapeSpec::Superellipse { .. } => "superellipse",
        }
    }

    pub fn is_curved(&self) -> bool {
        matches!(
            self,
            ShapeSpec::Ellipse { .. } | ShapeSpec::Stadium { .. } | ShapeSpec::Superellipse { .. }
        )
    }

    /// Default identifier used in reports.
    pub fn label(&self) -> String {
        match self {
            ShapeSpec::Rectangle { width, height } => format!("rectangle_{width}x{height}"),
            ShapeSpec::RegularPolygon { n, side } => format!("regular_{n}gon_s{side}"),
            ShapeSpec::ConvexPolygon { vertices } => format!("polygon_{}v", vertices.len()),
            ShapeSpec::Ellipse { a, b, .. } => format!("ellipse_{a}x{b}"),
            ShapeSpec::Stadium { length, radius, .. } => format!("stadium_{length}r{radius}"),
            ShapeSpec::Superellipse { a, b, exponent, .. } => {
                format!("superellipse_{a}x{b}p{exponent}")
            }
        }
    }

    /// Same shape with every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        match self.clone() {
            ShapeSpec::Rectangle { width, height } => ShapeSpec::Rectangle {
                width: width * s,
                height: height * s,
            },
            ShapeSpec::RegularPolygon { n, side } => ShapeSpec::RegularPolygon { n, side: side * s },
            ShapeSpec::ConvexPolygon { vertices } => ShapeSpec::ConvexPolygon {
                vertices: vertices.iter().map(|&[x, y]| [x * s, y * s]).collect(),
            },
            ShapeSpec::Ellipse { a, b, boundary_points } => ShapeSpec::Ellipse {
                a: a * s,
                b: b * s,
                boundary_points,
            },
            ShapeSpec::Stadium {
                length,
                radius,
                boundary_points,
            } => ShapeSpec::Stadium {
                length: length * s,
                radius: radius * s,
                boundary_points,
            },
            ShapeSpec::Superellipse {
                a,
                b,
                exponent,
                boundary_points,
            } => ShapeSpec::Superellipse {
                a: a * s,
                b: b * s,
                exponent,
                boundary_points,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(what: &str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{what} must be a positive length, got {v}"
                )))
            }
        }
        fn points(n: usize) -> Result<()> {
            if n >= MIN_BOUNDARY_POINTS {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "boundary_points must be at least {MIN_BOUNDARY_POINTS}, got {n}"
                )))
            }
        }
        match self {
            ShapeSpec::Rectangle { width, height } => {
                positive("width", *width)?;
                positive("height", *height)
            }
            ShapeSpec::RegularPolygon { n, side } => {
                if *n < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "regular polygon needs n >= 3, got {n}"
                    )));
                }
                positive("side", *side)
            }
            ShapeSpec::ConvexPolygon { vertices } => validate_convex_ccw(vertices),
            ShapeSpec::Ellipse { a, b, boundary_points } => {
                positive("a", *a)?;
                positive("b", *b)?;
                points(*boundary_points)
            }
            ShapeSpec::Stadium {
                length,
                radius,
                boundary_points,
            } => {
                positive("length", *length)?;
                positive("radius", *radius)?;
                points(*boundary_points)?;
                if boundary_points % 2 != 0 {
                    return Err(Error::InvalidParameter("stadium boundary_points must be even".into()));
                }
                Ok(())
            }
            ShapeSpec::Superellipse {
                a,
                b,
                exponent,
                boundary_points,
            } => {
                positive("a", *a)?;
                positive("b", *b)?;
                if !(exponent.is_finite() && *exponent >= 2.0) {
                    return Err(Error::InvalidParameter(format!(
                        "superellipse exponent must be >= 2, got {exponent}"
                    )));
                }
                points(*boundary_points)
            }
        }
    }
}

fn validate_convex_ccw(vertices: &[[f64; 2]]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "convex polygon needs at least 3 vertices, got {n}"
        )));
    }
    if vertices.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter("non-finite vertex coordinate".into()));
    }
    let scale = vertices
        .iter()
        .flat_map(|a| vertices.iter().map(move |b| (a[0] - b[0]).hypot(a[1] - b[1])))
        .fold(0.0, f64::max);
    for i in 0..n {
        let [ax, ay] = vertices[i];
        let [bx, by] = vertices[(i + 1) % n];
        let [cx, cy] = vertices[(i + 2) % n];
        let cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx);
        if cross <= 1e-12 * scale * scale {
            return Err(Error::InvalidParameter(format!(
                "vertex list is not strictly convex counterclockwise at vertex {}",
                (i + 1) % n
            )));
        }
    }
    // A star polygon also has all left turns; the winding must be exactly one.
    let mut total = 0.0;
    for i in 0..n {
        let [ax, ay] = vertices[i];
        let [bx, by] = vertices[(i + 1) % n];
        let [cx, cy] = vertices[(i + 2) % n];
        let e1 = (by - ay).atan2(bx - ax);
        let e2 = (cy - by).atan2(cx - bx);
        let mut d = e2 - e1;
        while d <= -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        total += d;
    }
    if (total - 2.0 * std::f64::consts::PI).abs() > 1e-6 {
        return Err(Error::InvalidParameter(
            "vertex list winds more than once (not a simple convex polygon)".into(),
        ));
    }
    Ok(())
}

/// Smooth boundary curve, centered at the origin, that refinement projects
/// new boundary nodes onto.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve<T> {
    Ellipse { a: T, b: T },
    Stadium { length: T, radius: T },
    Superellipse { a: T, b: T, exponent: T },
}

impl<T: Real> Curve<T> {
    /// Gauge (Minkowski) function of the enclosed convex body: the boundary
    /// is the level set `gauge = 1` and `gauge` is 1-homogeneous.
    pub fn gauge(&self, p: [T; 2]) -> T {
        let [x, y] = p;
        match *self {
            Curve::Ellipse { a, b } => ((x / a).powi(2) + (y / b).powi(2)).sqrt(),
            Curve::Superellipse { a, b, exponent } => {
                ((x / a).abs().powf(exponent) + (y / b).abs().powf(exponent)).powf(exponent.recip())
            }
            Curve::Stadium { length, radius } => stadium_gauge(x.abs(), y.abs(), length, radius),
        }
    }

    /// Radial projection of `p` (not the origin) onto the curve.
    pub fn project(&self, p: [T; 2]) -> [T; 2] {
        let g = self.gauge(p);
        [p[0] / g, p[1] / g]
    }

    pub fn scaled(&self, s: T) -> Self {
        match *self {
            Curve::Ellipse { a, b } => Curve::Ellipse { a: a * s, b: b * s },
            Curve::Stadium { length, radius } => Curve::Stadium {
                length: length * s,
                radius: radius * s,
            },
            Curve::Superellipse { a, b, exponent } => Curve::Superellipse {
                a: a * s,
                b: b * s,
                exponent,
            },
        }
    }
}

// Smallest λ with dist((x, y), λ·segment) ≤ λ·radius, for x, y ≥ 0.
fn stadium_gauge<T: Real>(x: T, y: T, length: T, radius: T) -> T {
    let half = length * T::lit(0.5);
    let flat = y / radius;
    if x <= flat * half {
        return flat;
    }
    let inside = |l: T| {
        let dx = (x - l * half).max(T::zero());
        dx.hypot(y) <= l * radius
    };
    let (mut lo, mut hi) = (flat, x.hypot(y) / radius);
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// A constructed free surface with its exact measures.
#[derive(Debug, Clone, PartialEq)]
pub struct Shape<T> {
    pub spec: ShapeSpec,
    /// Counterclockwise boundary vertices.
    pub vertices: Vec<[T; 2]>,
    /// Closed form where available, high-accuracy quadrature for curved kinds.
    pub perimeter_exact: T,
    pub area_exact: T,
    pub centroid: [T; 2],
    pub curve: Option<Curve<T>>,
}

impl<T: Real> Shape<T> {
    pub fn polygon_perimeter(&self) -> T {
        polygon_perimeter(&self.vertices)
    }

    pub fn polygon_area(&self) -> T {
        polygon_area(&self.vertices)
    }

    /// `P² − 4πA`, nonnegative for every planar domain.
    pub fn isoperimetric_defect(&self) -> T {
        self.perimeter_exact.powi(2) - T::lit(4.0) * T::PI() * self.area_exact
    }

    pub fn diameter(&self) -> T {
        let mut d = T::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a[0] - b[0]).hypot(a[1] - b[1]));
            }
        }
        d
    }
}

pub fn polygon_area<T: Real>(v: &[[T; 2]]) -> T {
    let n = v.len();
    let twice: T = (0..n)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum();
    twice * T::lit(0.5)
}

pub fn polygon_perimeter<T: Real>(v: &[[T; 2]]) -> T {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % n]);
            (q[0] - p[0]).hypot(q[1] - p[1])
        })
        .sum()
}

pub fn polygon_centroid<T: Real>(v: &[[T; 2]]) -> [T; 2] {
    let n = v.len();
    // Shift to the first vertex to limit cancellation.
    let o = v[0];
    let (mut cx, mut cy, mut twice) = (T::zero(), T::zero(), T::zero());
    for i in 0..n {
        let p = [v[i][0] - o[0], v[i][1] - o[1]];
        let q = [v[(i + 1) % n][0] - o[0], v[(i + 1) % n][1] - o[1]];
        let c = p[0] * q[1] - q[0] * p[1];
        twice += c;
        cx += (p[0] + q[0]) * c;
        cy += (p[1] + q[1]) * c;
    }
    let k = T::lit(3.0) * twice;
    [o[0] + cx / k, o[1] + cy / k]
}

const QUAD_TOL: f64 = 1e-12;

/// Builds the shape: vertices, exact perimeter/area and centroid.
pub fn build_shape<T: Real>(spec: &ShapeSpec) -> Result<Shape<T>> {
    spec.validate()?;
    let two_pi = T::lit(2.0) * T::PI();
    let (vertices, perimeter, area, curve) = match *spec {
        ShapeSpec::Rectangle { width, height } => {
            let (w, h) = (T::lit(width), T::lit(height));
            let (hw, hh) = (w * T::lit(0.5), h * T::lit(0.5));
            let v = vec![[-hw, -hh], [hw, -hh], [hw, hh], [-hw, hh]];
            (v, T::lit(2.0) * (w + h), w * h, None)
        }
        ShapeSpec::RegularPolygon { n, side } => {
            let s = T::lit(side);
            let nn = T::of(n);
            let circum = s / (T::lit(2.0) * (T::PI() / nn).sin());
            // Bottom edge horizontal.
            let start = -T::FRAC_PI_2() - T::PI() / nn;
            let v = (0..n)
                .map(|k| {
                    let t = start + two_pi * T::of(k) / nn;
                    [circum * t.cos(), circum * t.sin()]
                })
                .collect();
            let area = nn * s * s / (T::lit(4.0) * (T::PI() / nn).tan());
            (v, nn * s, area, None)
        }
        ShapeSpec::ConvexPolygon { ref vertices } => {
            let v: Vec<[T; 2]> = vertices.iter().map(|&[x, y]| [T::lit(x), T::lit(y)]).collect();
            let (p, a) = (polygon_perimeter(&v), polygon_area(&v));
            (v, p, a, None)
        }
        ShapeSpec::Ellipse { a, b, boundary_points } => {
            let (a, b) = (T::lit(a), T::lit(b));
            let v = (0..boundary_points)
                .map(|k| {
                    let t = two_pi * T::of(k) / T::of(boundary_points);
                    [a * t.cos(), b * t.sin()]
                })
                .collect();
            let quarter = adaptive_simpson(
                |t: T| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt(),
                T::zero(),
                T::FRAC_PI_2(),
                T::tol(QUAD_TOL),
            );
            (v, T::lit(4.0) * quarter, T::PI() * a * b, Some(Curve::Ellipse { a, b }))
        }
        ShapeSpec::Stadium {
            length,
            radius,
            boundary_points,
        } => {
            let (l, r) = (T::lit(length), T::lit(radius));
            let per_arc = boundary_points / 2;
            let step = T::PI() / T::of(per_arc - 1);
            let half = l * T::lit(0.5);
            let mut v = Vec::with_capacity(boundary_points);
            for j in 0..per_arc {
                let t = -T::FRAC_PI_2() + step * T::of(j);
                v.push([half + r * t.cos(), r * t.sin()]);
            }
            for j in 0..per_arc {
                let t = T::FRAC_PI_2() + step * T::of(j);
                v.push([-half + r * t.cos(), r * t.sin()]);
            }
            let p = T::lit(2.0) * l + two_pi * r;
            let a = T::lit(2.0) * r * l + T::PI() * r * r;
            (v, p, a, Some(Curve::Stadium { length: l, radius: r }))
        }
        ShapeSpec::Superellipse {
            a,
            b,
            exponent,
            boundary_points,
        } => {
            let (a, b, p) = (T::lit(a), T::lit(b), T::lit(exponent));
            let radius = |t: T| superellipse_radius(a, b, p, t);
            let v = (0..boundary_points)
                .map(|k| {
                    let t = two_pi * T::of(k) / T::of(boundary_points);
                    let r = radius(t).0;
                    [r * t.cos(), r * t.sin()]
                })
                .collect();
            let tol = T::tol(QUAD_TOL);
            let quarter_area =
                adaptive_simpson(|t: T| radius(t).0.powi(2) * T::lit(0.5), T::zero(), T::FRAC_PI_2(), tol);
            let quarter_len = adaptive_simpson(
                |t: T| {
                    let (r, dr) = radius(t);
                    (r * r + dr * dr).sqrt()
                },
                T::zero(),
                T::FRAC_PI_2(),
                tol,
            );
            (
                v,
                T::lit(4.0) * quarter_len,
                T::lit(4.0) * quarter_area,
                Some(Curve::Superellipse { a, b, exponent: p }),
            )
        }
    };
    let centroid = polygon_centroid(&vertices);
    Ok(Shape {
        spec: spec.clone(),
        vertices,
        perimeter_exact: perimeter,
        area_exact: area,
        centroid,
        curve,
    })
}

// Polar radius r(θ) of the superellipse and dr/dθ, for θ in the first quadrant.
fn superellipse_radius<T: Real>(a: T, b: T, p: T, t: T) -> (T, T) {
    let (c, s) = (t.cos(), t.sin());
    let (u, w) = ((c / a).abs(), (s / b).abs());
    let g = u.powf(p) + w.powf(p);
    let r = g.powf(-p.recip());
    // d/dθ |cosθ/a|^p = -p |c/a|^(p-1) sgn(c) sinθ / a
    let dg = -p * u.powf(p - T::one()) * c.signum() * s / a + p * w.powf(p - T::one()) * s.signum() * c / b;
    let dr = -(r / (p * g)) * dg;
    (r, dr)
}
