mod common;

use std::f64::consts::PI;

use common::{neumann_oracle, rel};
use proptest::prelude::*;
use slosh_iso::fem::{element_mass, element_stiffness, Lcg};
use slosh_iso::{
    assemble, build_shape, extrapolate, j1prime_zero, neumann_eigs, rayleigh_quotient, solve_mesh, triangulate, Error,
    ShapeSpec, SparseSym, TriMesh, DEFAULT_SEED,
};

fn mesh(spec: ShapeSpec, level: usize) -> TriMesh {
    triangulate(&build_shape(&spec).unwrap(), level)
}

fn m_inner(m: &SparseSym, a: &[f64], b: &[f64]) -> f64 {
    m.bilinear(a, b)
}

#[test]
fn reference_element() {
    let k = element_stiffness([[0.0f64, 0.0], [1.0, 0.0], [0.0, 1.0]]);
    let expect = [[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]];
    for i in 0..3 {
        for j in 0..3 {
            assert!((k[i][j] - expect[i][j]).abs() < 1e-15);
        }
    }
    let m = element_mass(0.5f64);
    assert!((m[0][0] - 0.5 / 6.0).abs() < 1e-16);
    assert!((m[0][1] - 0.5 / 12.0).abs() < 1e-16);
}

#[test]
fn assembled_matrix_invariants() {
    for spec in [
        ShapeSpec::rectangle(2.0, 1.0),
        ShapeSpec::regular_polygon(7, 0.3),
        ShapeSpec::ellipse(1.0, 0.4, 64),
    ] {
        let msh = mesh(spec, 3);
        let (k, m) = assemble(&msh).unwrap();
        for (i, s) in k.row_sums().iter().enumerate() {
            let row_max = (0..k.dimension).map(|j| k.get(i, j).abs()).fold(0.0, f64::max);
            assert!(s.abs() <= 1e-12 * row_max);
        }
        assert!(m.values.iter().all(|&v| v >= 0.0));
        assert!(rel(m.total(), msh.area()) < 1e-12);
        for i in 0..k.dimension {
            for j in 0..k.dimension {
                assert_eq!(k.get(i, j), k.get(j, i));
            }
        }
    }
}

#[test]
fn degenerate_triangle_rejected() {
    let text = "nodes 4 triangles 2\n0 0\n1 0\n1 1\n2 2\n0 1 2\n0 2 3\n";
    let msh = TriMesh::from_text(text).unwrap();
    assert!(matches!(
        assemble(&msh),
        Err(Error::DegenerateTriangle { index: 1, .. })
    ));
}

#[test]
fn dense_oracle_agrees_on_small_meshes() {
    for (spec, level) in [
        (ShapeSpec::rectangle(1.0, 1.0), 3),
        (ShapeSpec::regular_polygon(3, 1.0), 3),
        (ShapeSpec::rectangle(2.0, 1.0), 2),
        (ShapeSpec::regular_polygon(6, 1.0), 2),
        (ShapeSpec::ellipse(1.0, 0.6, 24), 2),
        (
            ShapeSpec::ConvexPolygon {
                vertices: vec![[0.0, 0.0], [3.0, 0.0], [2.5, 1.8], [0.4, 1.5]],
            },
            3,
        ),
    ] {
        let msh = mesh(spec.clone(), level);
        assert!(msh.nodes.len() <= 300);
        let (k, m) = assemble(&msh).unwrap();
        let oracle = neumann_oracle(&k, &m);
        let spec_k = neumann_eigs(&k, &m, 4, DEFAULT_SEED).unwrap();
        for (i, &v) in spec_k.values.iter().enumerate() {
            assert!(rel(v, oracle[i]) < 1e-8, "{spec:?} mode {i}: {v} vs {}", oracle[i]);
        }
    }
}

#[test]
fn square_double_eigenvalue() {
    let msh = mesh(ShapeSpec::rectangle(1.0, 1.0), 6);
    let s = solve_mesh(&msh, 2, DEFAULT_SEED).unwrap();
    let pi2 = PI * PI;
    assert!(rel(s.values[0], pi2) < 5e-3);
    assert!(rel(s.values[1], s.values[0]) < 1e-8);
    for (v, r) in s.values.iter().zip(&s.residuals) {
        assert!(*r <= 1e-8 * v);
    }
    assert!(s.deflated_constant);
}

#[test]
fn triangle_lame_mode() {
    let msh = mesh(ShapeSpec::regular_polygon(3, 1.0), 6);
    let s = solve_mesh(&msh, 2, DEFAULT_SEED).unwrap();
    let target = 16.0 * PI * PI / 9.0;
    assert!(rel(s.values[0], target) < 5e-3);
    assert!(rel(s.values[1], s.values[0]) < 1e-8);
}

#[test]
fn disk_first_mode() {
    let msh = mesh(ShapeSpec::disk(1.0, 256), 3);
    let s = solve_mesh(&msh, 2, DEFAULT_SEED).unwrap();
    let j = j1prime_zero::<f64>();
    assert!(rel(s.values[0], j * j) < 5e-3);
    assert!(rel(s.values[1], s.values[0]) < 1e-6);
}

#[test]
fn cluster_reported_in_full() {
    // asking for one mode of a double eigenvalue returns both
    let msh = mesh(ShapeSpec::rectangle(1.0, 1.0), 3);
    let s = solve_mesh(&msh, 1, DEFAULT_SEED).unwrap();
    assert_eq!(s.values.len(), 2);
}

#[test]
fn too_many_modes() {
    let msh = mesh(ShapeSpec::rectangle(1.0, 1.0), 0);
    let (k, m) = assemble(&msh).unwrap();
    assert!(matches!(
        neumann_eigs(&k, &m, 5, 1),
        Err(Error::TooManyModes {
            requested: 5,
            available: 4
        })
    ));
    assert!(neumann_eigs(&k, &m, 0, 1).is_err());
}

#[test]
fn rayleigh_quotient_bounds() {
    let pi2 = PI * PI;
    let mut prev = f64::INFINITY;
    for level in 2..6 {
        let msh = mesh(ShapeSpec::rectangle(1.0, 1.0), level);
        let (k, m) = assemble(&msh).unwrap();
        let u: Vec<f64> = msh.nodes.iter().map(|p| (PI * (p[0] + 0.5)).cos()).collect();
        let q = rayleigh_quotient(&k, &m, &u).unwrap();
        let mu1 = neumann_eigs(&k, &m, 1, DEFAULT_SEED).unwrap().values[0];
        assert!(q >= mu1 * (1.0 - 1e-12));
        assert!((q - pi2).abs() < (prev - pi2).abs());
        prev = q;
        let mut rng = Lcg::new(level as u64);
        let r: Vec<f64> = (0..u.len()).map(|_| rng.next_centered()).collect();
        assert!(rayleigh_quotient(&k, &m, &r).unwrap() >= mu1 * (1.0 - 1e-12));
        let ones = vec![1.7; u.len()];
        assert!(matches!(
            rayleigh_quotient(&k, &m, &ones),
            Err(Error::ZeroAfterDeflation)
        ));
    }
    assert!(rel(prev, pi2) < 1e-3);
}

#[test]
fn richardson_examples() {
    let mu = 3.7;
    let seq: Vec<(usize, f64)> = (2..5).map(|l| (l, mu * (1.0 + 0.8 * 4f64.powi(-(l as i32))))).collect();
    let e = extrapolate(&seq).unwrap();
    assert!(rel(e.estimate, mu) < 1e-14);
    let c = extrapolate(&[(1, 2.5), (2, 2.5), (3, 2.5)]).unwrap();
    assert_eq!(c.estimate, 2.5);
    assert_eq!(c.error_gauge, 0.0);
    assert!(matches!(
        extrapolate(&[(1, 2.0), (2, 1.0), (3, 1.5)]),
        Err(Error::NonMonotone { .. })
    ));
    assert!(matches!(
        extrapolate(&[(1, 2.0), (2, 1.0)]),
        Err(Error::TooFewLevels(2))
    ));
    assert!(extrapolate(&[(1, 3.0), (3, 2.0), (4, 1.5)]).is_err());

    let sq = build_shape(&ShapeSpec::rectangle(1.0, 1.0)).unwrap();
    let fine = triangulate(&sq, 6);
    let mut levels = Vec::new();
    let mut cur = Some(&fine);
    while let Some(m) = cur {
        if m.refinement_level >= 4 {
            levels.push((m.refinement_level, solve_mesh(m, 1, DEFAULT_SEED).unwrap().values[0]));
        }
        cur = m.parent.as_deref();
    }
    levels.reverse();
    let e = extrapolate(&levels).unwrap();
    assert!(rel(e.estimate, PI * PI) < 5e-4);
    // every discrete value sits above the limit minus its gauge
    assert!(levels.iter().all(|&(_, v)| v >= e.estimate - e.error_gauge));
}

#[test]
fn nested_refinement_is_monotone() {
    for spec in [
        ShapeSpec::rectangle(1.5, 1.0),
        ShapeSpec::regular_polygon(3, 1.0),
        ShapeSpec::regular_polygon(5, 1.0),
        ShapeSpec::ConvexPolygon {
            vertices: vec![[0.0, 0.0], [3.0, 0.0], [2.5, 1.8], [0.4, 1.5]],
        },
    ] {
        let shape = build_shape(&spec).unwrap();
        let mut prev = f64::INFINITY;
        for level in 3..=5 {
            let v = solve_mesh(&triangulate(&shape, level), 1, DEFAULT_SEED).unwrap().values[0];
            assert!(v <= prev, "{spec:?} level {level}: {v} > {prev}");
            prev = v;
        }
    }
}

#[test]
fn single_precision_smoke() {
    let shape = build_shape::<f32>(&ShapeSpec::rectangle(1.0, 1.0)).unwrap();
    let msh = triangulate(&shape, 4);
    let s = solve_mesh(&msh, 1, DEFAULT_SEED).unwrap();
    assert!((s.values[0] as f64 - PI * PI).abs() / (PI * PI) < 5e-3);
}

#[test]
fn matrix_dump_format() {
    let (k, _) = assemble(&mesh(ShapeSpec::rectangle(1.0, 1.0), 0)).unwrap();
    let text = k.to_coordinate_text();
    let mut entries = 0;
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(f.len(), 3);
        let (i, j, v): (usize, usize, f64) = (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap());
        assert_eq!(v, k.get(i, j));
        entries += 1;
    }
    assert_eq!(entries, 2 * k.values.len() - k.dimension);
}

fn small_shape() -> impl Strategy<Value = ShapeSpec> {
    prop_oneof![
        (0.3f64..3.0).prop_map(|a| ShapeSpec::rectangle(a, 1.0)),
        (3usize..9).prop_map(|n| ShapeSpec::regular_polygon(n, 1.0)),
        (0.3f64..1.0).prop_map(|b| ShapeSpec::ellipse(1.0, b, 32)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn eigenvalues_scale_inversely_with_area(spec in small_shape(), s in 0.1f64..10.0) {
        let msh = mesh(spec, 3);
        let a = solve_mesh(&msh, 3, DEFAULT_SEED).unwrap();
        let b = solve_mesh(&msh.scaled(s), 3, DEFAULT_SEED).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert!(rel(y * s * s, *x) <= 1e-10);
        }
    }

    #[test]
    fn eigenvectors_are_mass_orthonormal(spec in small_shape(), k in 1usize..6, seed in any::<u64>()) {
        let msh = mesh(spec, 3);
        let (kk, m) = assemble(&msh).unwrap();
        let s = neumann_eigs(&kk, &m, k, seed).unwrap();
        prop_assert!(s.values.len() >= k);
        prop_assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.values[0] > 0.0);
        let ones = vec![1.0; msh.nodes.len()];
        for (i, vi) in s.vectors.iter().enumerate() {
            prop_assert!(m_inner(&m, vi, &ones).abs() <= 1e-9);
            for (j, vj) in s.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((m_inner(&m, vi, vj) - target).abs() <= 1e-9);
            }
        }
        for (v, r) in s.values.iter().zip(&s.residuals) {
            prop_assert!(*r <= 1e-8 * v);
        }
    }

    #[test]
    fn solves_are_deterministic(spec in small_shape(), seed in any::<u64>()) {
        let msh = mesh(spec, 2);
        let a = solve_mesh(&msh, 3, seed).unwrap();
        let b = solve_mesh(&msh, 3, seed).unwrap();
        let bits = |s: &slosh_iso::Spectrum| s.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&a), bits(&b));
        prop_assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn seed_does_not_change_values(spec in small_shape(), seed in any::<u64>()) {
        let msh = mesh(spec, 2);
        let a = solve_mesh(&msh, 2, DEFAULT_SEED).unwrap();
        let b = solve_mesh(&msh, 2, seed).unwrap();
        prop_assert!(rel(a.values[0], b.values[0]) < 1e-10);
    }
}
