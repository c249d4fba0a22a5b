//! Convexity and reflection-symmetry detection on the boundary vertex set.

use serde::Serialize;

use super::shape::Shape;
use crate::scalar::Real;

/// Mirror line through `point` with unit `direction` at angle in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis<T> {
    pub point: [T; 2],
    pub direction: [T; 2],
}

impl<T: Real> Axis<T> {
    pub fn angle(&self) -> T {
        self.direction[1].atan2(self.direction[0])
    }

    pub fn reflect(&self, p: [T; 2]) -> [T; 2] {
        let [dx, dy] = self.direction;
        let (rx, ry) = (p[0] - self.point[0], p[1] - self.point[1]);
        let along = rx * dx + ry * dy;
        let two = T::lit(2.0);
        [
            self.point[0] + two * along * dx - rx,
            self.point[1] + two * along * dy - ry,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport<T> {
    pub is_convex: bool,
    /// Sorted by angle in `[0, π)`.
    pub axes: Vec<Axis<T>>,
    pub has_two_axes: bool,
    /// Every supported kind is simply connected.
    pub is_simply_connected: bool,
}

const REL_TOL: f64 = 1e-9;

pub fn check_symmetry<T: Real>(shape: &Shape<T>) -> SymmetryReport<T> {
    let v = &shape.vertices;
    let n = v.len();
    let c = shape.centroid;
    let tol = T::tol(REL_TOL) * shape.diameter();

    let mut candidates: Vec<(T, Option<usize>)> = Vec::with_capacity(2 * n + 2);
    for angle in principal_angles(v, c) {
        candidates.push((angle, None));
    }
    // Vertex j sits on the axis: i ↦ 2j − i. Edge (j, j+1) midpoint: i ↦ 2j + 1 − i.
    for j in 0..n {
        candidates.push((direction_angle(c, v[j]), Some(2 * j)));
        let m = midpoint(v[j], v[(j + 1) % n]);
        candidates.push((direction_angle(c, m), Some(2 * j + 1)));
    }

    let mut axes: Vec<Axis<T>> = Vec::new();
    for (angle, shift) in candidates {
        if !angle.is_finite() {
            continue;
        }
        let axis = Axis {
            point: c,
            direction: [angle.cos(), angle.sin()],
        };
        let duplicate = axes.iter().any(|a| angle_gap(a.angle(), angle) <= T::tol(REL_TOL));
        if duplicate {
            continue;
        }
        let matched = match shift {
            Some(s) => maps_onto(v, &axis, s, tol),
            None => {
                let image = axis.reflect(v[0]);
                nearest(v, image, tol).is_some_and(|k| maps_onto(v, &axis, k, tol))
            }
        };
        if matched {
            axes.push(axis);
        }
    }
    axes.sort_by(|a, b| a.angle().partial_cmp(&b.angle()).unwrap());

    SymmetryReport {
        is_convex: is_convex(v),
        has_two_axes: axes.len() >= 2,
        axes,
        is_simply_connected: true,
    }
}

/// Cross-product sign scan; collinear runs are allowed.
pub fn is_convex<T: Real>(v: &[[T; 2]]) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    let scale = v.iter().map(|p| p[0].abs().max(p[1].abs())).fold(T::zero(), T::max);
    let tol = T::tol(1e-12) * scale * scale;
    (0..n).all(|i| {
        let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
        let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        cross >= -tol
    }) && super::shape::polygon_area(v) > T::zero()
}

// Reflection sends vertex i to vertex (shift − i) mod n.
fn maps_onto<T: Real>(v: &[[T; 2]], axis: &Axis<T>, shift: usize, tol: T) -> bool {
    let n = v.len();
    (0..n).all(|i| {
        let j = (shift + n - i % n) % n;
        let r = axis.reflect(v[i]);
        (r[0] - v[j][0]).hypot(r[1] - v[j][1]) <= tol
    })
}

fn nearest<T: Real>(v: &[[T; 2]], p: [T; 2], tol: T) -> Option<usize> {
    v.iter()
        .enumerate()
        .map(|(k, q)| (k, (q[0] - p[0]).hypot(q[1] - p[1])))
        .filter(|&(_, d)| d <= tol)
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .map(|(k, _)| k)
}

fn midpoint<T: Real>(a: [T; 2], b: [T; 2]) -> [T; 2] {
    [(a[0] + b[0]) * T::lit(0.5), (a[1] + b[1]) * T::lit(0.5)]
}

// Direction angle of the line from c through p, folded into [0, π).
fn direction_angle<T: Real>(c: [T; 2], p: [T; 2]) -> T {
    let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
    if dx == T::zero() && dy == T::zero() {
        return T::nan();
    }
    fold_angle(dy.atan2(dx))
}

fn fold_angle<T: Real>(mut a: T) -> T {
    while a < T::zero() {
        a += T::PI();
    }
    while a >= T::PI() {
        a -= T::PI();
    }
    a
}

fn angle_gap<T: Real>(a: T, b: T) -> T {
    let d = (a - b).abs();
    d.min(T::PI() - d)
}

// Eigenvector angles of the vertex second-moment tensor about the centroid.
fn principal_angles<T: Real>(v: &[[T; 2]], c: [T; 2]) -> [T; 2] {
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for p in v {
        let (x, y) = (p[0] - c[0], p[1] - c[1]);
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    let theta = T::lit(0.5) * (T::lit(2.0) * sxy).atan2(sxx - syy);
    [fold_angle(theta), fold_angle(theta + T::FRAC_PI_2())]
}
