//! Conforming triangle meshes of convex free surfaces.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::shape::{Curve, Shape};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh<T> {
    pub nodes: Vec<[T; 2]>,
    /// Counterclockwise node index triples.
    pub triangles: Vec<[usize; 3]>,
    /// Sorted ascending.
    pub boundary_nodes: Vec<usize>,
    pub refinement_level: usize,
    pub parent: Option<Arc<TriMesh<T>>>,
    /// Curve new boundary midpoints are projected onto; `None` for polygons.
    pub curve: Option<Curve<T>>,
}

impl<T: Real> TriMesh<T> {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn triangle_area(&self, t: usize) -> T {
        signed_area(
            self.nodes[self.triangles[t][0]],
            self.nodes[self.triangles[t][1]],
            self.nodes[self.triangles[t][2]],
        )
    }

    pub fn area(&self) -> T {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    /// Longest edge length.
    pub fn max_edge(&self) -> T {
        let mut h = T::zero();
        for tri in &self.triangles {
            for k in 0..3 {
                let (a, b) = (self.nodes[tri[k]], self.nodes[tri[(k + 1) % 3]]);
                h = h.max((a[0] - b[0]).hypot(a[1] - b[1]));
            }
        }
        h
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        self.boundary_nodes.binary_search(&node).is_ok()
    }

    /// Copy with every coordinate multiplied by `s`; lineage is dropped.
    pub fn scaled(&self, s: T) -> Self {
        TriMesh {
            nodes: self.nodes.iter().map(|p| [p[0] * s, p[1] * s]).collect(),
            triangles: self.triangles.clone(),
            boundary_nodes: self.boundary_nodes.clone(),
            refinement_level: self.refinement_level,
            parent: None,
            curve: self.curve.map(|c| c.scaled(s)),
        }
    }

    /// Plain-text export: `nodes N triangles M`, then `x y` per node, then
    /// zero-based `i j k` per triangle.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "nodes {} triangles {}", self.nodes.len(), self.triangles.len()).unwrap();
        for p in &self.nodes {
            writeln!(out, "{:.17e} {:.17e}", p[0], p[1]).unwrap();
        }
        for t in &self.triangles {
            writeln!(out, "{} {} {}", t[0], t[1], t[2]).unwrap();
        }
        out
    }

    /// Parses [`TriMesh::to_text`] output. Boundary nodes are recovered from
    /// edges used by a single triangle; lineage and curve are not stored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty mesh file".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let (n, m) = match h.as_slice() {
            ["nodes", n, "triangles", m] => (
                n.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?,
                m.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?,
            ),
            _ => return Err(Error::Parse(format!("bad mesh header: {header}"))),
        };
        let mut nodes = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("truncated node block".into()))?;
            let c: Vec<f64> = line
                .split_whitespace()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            if c.len() != 2 {
                return Err(Error::Parse(format!("bad node line: {line}")));
            }
            nodes.push([T::lit(c[0]), T::lit(c[1])]);
        }
        let mut triangles = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("truncated triangle block".into()))?;
            let c: Vec<usize> = line
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            if c.len() != 3 || c.iter().any(|&i| i >= n) {
                return Err(Error::Parse(format!("bad triangle line: {line}")));
            }
            triangles.push([c[0], c[1], c[2]]);
        }
        let mut boundary: Vec<usize> = edge_counts(&triangles)
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .flat_map(|((a, b), _)| [a, b])
            .collect();
        boundary.sort_unstable();
        boundary.dedup();
        Ok(TriMesh {
            nodes,
            triangles,
            boundary_nodes: boundary,
            refinement_level: 0,
            parent: None,
            curve: None,
        })
    }
}

pub(crate) fn signed_area<T: Real>(a: [T; 2], b: [T; 2], c: [T; 2]) -> T {
    ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])) * T::lit(0.5)
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn edge_counts(triangles: &[[usize; 3]]) -> HashMap<(usize, usize), usize> {
    let mut counts = HashMap::with_capacity(triangles.len() * 2);
    for t in triangles {
        for k in 0..3 {
            *counts.entry(edge_key(t[k], t[(k + 1) % 3])).or_insert(0) += 1;
        }
    }
    counts
}

/// Fan triangulation from the centroid followed by `level` uniform
/// refinements. Requires a convex shape.
pub fn triangulate<T: Real>(shape: &Shape<T>, level: usize) -> TriMesh<T> {
    let n = shape.vertices.len();
    let mut nodes = shape.vertices.clone();
    nodes.push(shape.centroid);
    let triangles = (0..n).map(|i| [i, (i + 1) % n, n]).collect();
    let mut mesh = TriMesh {
        nodes,
        triangles,
        boundary_nodes: (0..n).collect(),
        refinement_level: 0,
        parent: None,
        curve: shape.curve,
    };
    for _ in 0..level {
        mesh = refine(&Arc::new(mesh));
    }
    mesh
}

/// One uniform quadrisection. Old nodes keep their indices; edge midpoints
/// are appended in first-visit order. Boundary midpoints are projected onto
/// the curve when there is one.
pub fn refine<T: Real>(mesh: &Arc<TriMesh<T>>) -> TriMesh<T> {
    let counts = edge_counts(&mesh.triangles);
    let mut nodes = mesh.nodes.clone();
    nodes.reserve(counts.len());
    let mut boundary = mesh.boundary_nodes.clone();
    let mut mids: HashMap<(usize, usize), usize> = HashMap::with_capacity(counts.len());
    let mut triangles = Vec::with_capacity(mesh.triangles.len() * 4);

    let mut midpoint = |a: usize, b: usize, nodes: &mut Vec<[T; 2]>| -> usize {
        let key = edge_key(a, b);
        if let Some(&m) = mids.get(&key) {
            return m;
        }
        let (p, q) = (nodes[a], nodes[b]);
        let mut mid = [(p[0] + q[0]) * T::lit(0.5), (p[1] + q[1]) * T::lit(0.5)];
        if counts[&key] == 1 {
            if let Some(curve) = &mesh.curve {
                mid = curve.project(mid);
            }
            boundary.push(nodes.len());
        }
        nodes.push(mid);
        mids.insert(key, nodes.len() - 1);
        nodes.len() - 1
    };

    for &[a, b, c] in &mesh.triangles {
        let ab = midpoint(a, b, &mut nodes);
        let bc = midpoint(b, c, &mut nodes);
        let ca = midpoint(c, a, &mut nodes);
        triangles.push([a, ab, ca]);
        triangles.push([ab, b, bc]);
        triangles.push([ca, bc, c]);
        triangles.push([ab, bc, ca]);
    }
    boundary.sort_unstable();
    TriMesh {
        nodes,
        triangles,
        boundary_nodes: boundary,
        refinement_level: mesh.refinement_level + 1,
        parent: Some(Arc::clone(mesh)),
        curve: mesh.curve,
    }
}
