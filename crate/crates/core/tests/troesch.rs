mod common;

use common::{generalized_eigenvalues, radial_matrices, rel};
use proptest::prelude::*;
use slosh_iso::troesch::assemble_radial;
use slosh_iso::{
    j1prime_zero, parabolic_basin, radial_slosh_eig, radial_slosh_eigs, troesch_bound, verify_troesch, Error, Profile,
    RadialBasin,
};

fn basin(r0: f64, profile: Profile<f64>) -> RadialBasin {
    RadialBasin::new(r0, profile).unwrap()
}

fn builtin(r0: f64) -> Vec<RadialBasin> {
    vec![
        basin(r0, Profile::Parabolic { h0: 1.0 }),
        basin(r0, Profile::Conical { h0: 1.0 }),
        basin(r0, Profile::Flat { h0: 1.0 }),
        basin(r0, Profile::Quartic { h0: 1.0 }),
        basin(
            r0,
            Profile::Tabulated {
                samples: vec![(0.0, 0.8), (0.3 * r0, 1.0), (0.7 * r0, 0.6), (r0, 0.0)],
            },
        ),
    ]
}

fn lowest(b: &RadialBasin, m: usize, n: usize) -> f64 {
    radial_slosh_eigs(b, m, n, 1).unwrap().values[0]
}

#[test]
fn parabolic_profile() {
    let b = parabolic_basin(1.0f64, 1.0).unwrap();
    assert_eq!(b.depth(0.0), 0.5);
    assert_eq!(b.depth(1.0), 0.0);
    let eps = 1e-7;
    assert!(((b.depth(eps) - b.depth(0.0)) / eps).abs() < 1e-6);
    for (nu, r0) in [(1.0, 1.0), (2.0, 3.0), (0.5, 1.7)] {
        let b = parabolic_basin(nu, r0).unwrap();
        assert!(rel(b.moment(), nu * r0.powi(4) / 8.0) < 1e-12);
    }
    assert!(parabolic_basin(0.0, 1.0).is_err());
    assert!(parabolic_basin(1.0, -1.0).is_err());
}

#[test]
fn bounds_in_closed_form() {
    assert!((troesch_bound(&parabolic_basin(1.0f64, 1.0).unwrap()) - 1.0).abs() < 1e-10);
    assert!((troesch_bound(&basin(1.0, Profile::Flat { h0: 1.0 })) - 4.0).abs() < 1e-10);
    assert!((troesch_bound(&basin(1.0, Profile::Conical { h0: 1.0 })) - 4.0 / 3.0).abs() < 1e-10);
    // ∫(1 − r⁴) r dr = 1/3
    assert!((troesch_bound(&basin(1.0, Profile::Quartic { h0: 1.0 })) - 8.0 / 3.0).abs() < 1e-10);
}

#[test]
fn parabolic_equality() {
    let b = parabolic_basin(1.0, 1.0).unwrap();
    let s = radial_slosh_eig(&b, 1, 2000).unwrap();
    assert!(rel(s.values[0], 1.0) < 1e-3);
    assert!(s.values.windows(2).all(|w| w[0] < w[1]));
    let rep = verify_troesch(&b, 2000).unwrap();
    assert!(rep.equality && rep.in_regime);
    assert!((rep.ratio - 1.0).abs() < 1e-3);
}

#[test]
fn flat_basin_matches_disk() {
    let j = j1prime_zero::<f64>();
    for (h0, r0) in [(1.0, 1.0), (0.3, 2.0)] {
        let b = basin(r0, Profile::Flat { h0 });
        assert!(rel(lowest(&b, 1, 2000), h0 * j * j / (r0 * r0)) < 5e-3);
    }
    let rep = verify_troesch(&basin(1.0, Profile::Flat { h0: 1.0 }), 2000).unwrap();
    assert!(rel(rep.ratio, j * j / 4.0) < 5e-3);
    assert!(!rep.equality && !rep.in_regime);
}

#[test]
fn conical_against_dense_oracle() {
    let b = basin(1.0, Profile::Conical { h0: 1.0 });
    let (k, m) = radial_matrices(|r| 1.0 - r, 1.0, 1, 200);
    let oracle = generalized_eigenvalues(&k, &m);
    let s = radial_slosh_eig(&b, 1, 200).unwrap();
    for i in 0..3 {
        assert!(rel(s.values[i], oracle[i]) < 1e-6);
    }
    let rep = verify_troesch(&b, 2000).unwrap();
    assert!(rep.ratio < 1.0);
}

#[test]
fn assembly_matches_hand_built_matrices() {
    for m in 0..3 {
        let sys = assemble_radial(&basin(2.0, Profile::Quartic { h0: 0.7 }), m, 120).unwrap();
        let (k, mm) = radial_matrices(|r| 0.7 * (1.0 - (r / 2.0).powi(4)), 2.0, m, 120);
        assert_eq!(sys.dimension(), k.len());
        for i in 0..k.len() {
            assert!((sys.stiffness_diag[i] - k[i][i]).abs() <= 1e-12 * k[i][i].abs().max(1.0));
            assert!((sys.mass_diag[i] - mm[i][i]).abs() <= 1e-14);
            if i + 1 < k.len() {
                assert!((sys.stiffness_off[i] - k[i][i + 1]).abs() <= 1e-12 * k[i][i].abs().max(1.0));
                assert!((sys.mass_off[i] - mm[i][i + 1]).abs() <= 1e-14);
            }
        }
    }
}

#[test]
fn dense_oracle_on_all_profiles() {
    for b in builtin(1.3) {
        for m in [1usize, 2] {
            let n = 300;
            let sys = assemble_radial(&b, m, n).unwrap();
            let k = common::tridiagonal(&sys.stiffness_diag, &sys.stiffness_off);
            let mm = common::tridiagonal(&sys.mass_diag, &sys.mass_off);
            let oracle = generalized_eigenvalues(&k, &mm);
            let s = radial_slosh_eig(&b, m, n).unwrap();
            for i in 0..s.values.len() {
                assert!(rel(s.values[i], oracle[i]) < 1e-8, "{} m={m} mode {i}", b.kind_name());
            }
        }
    }
}

#[test]
fn axisymmetric_modes_deflate_constant() {
    let b = basin(1.0, Profile::Flat { h0: 1.0 });
    let (k, m) = radial_matrices(|_| 1.0, 1.0, 0, 150);
    let oracle = generalized_eigenvalues(&k, &m);
    assert!(oracle[0].abs() < 1e-9);
    let s = radial_slosh_eig(&b, 0, 150).unwrap();
    assert!(s.values[0] > 0.0);
    for i in 0..s.values.len() {
        assert!(rel(s.values[i], oracle[i + 1]) < 1e-8);
    }
}

#[test]
fn eigenfunctions_are_normalized() {
    let b = basin(1.0, Profile::Conical { h0: 1.0 });
    let s = radial_slosh_eig(&b, 1, 400).unwrap();
    let (_, mm) = radial_matrices(|r| 1.0 - r, 1.0, 0, 400);
    for f in &s.eigenfunctions {
        assert_eq!(f[0], 0.0);
        let norm: f64 = (0..400)
            .flat_map(|i| (0..400).map(move |j| (i, j)))
            .map(|(i, j)| f[i] * mm[i][j] * f[j])
            .sum();
        assert!((norm - 1.0).abs() < 1e-10);
    }
}

#[test]
fn invalid_inputs() {
    let b = parabolic_basin(1.0, 1.0).unwrap();
    assert!(matches!(radial_slosh_eig(&b, 1, 50), Err(Error::InvalidParameter(_))));
    assert!(RadialBasin::new(0.0, Profile::Flat { h0: 1.0 }).is_err());
    assert!(RadialBasin::new(1.0, Profile::Conical { h0: -1.0 }).is_err());
    assert!(RadialBasin::from_table("0 1\n0.5 -0.2\n1 0\n").is_err());
    let t = RadialBasin::from_table("# r h\n0 0.5\n0.5 0.375\n1 0\n").unwrap();
    assert_eq!(t.r0, 1.0);
    assert!(t.vanishes_at_rim());
}

#[test]
fn parabolic_family_is_self_consistent() {
    for nu in [0.5, 1.0, 2.0] {
        for r0 in [1.0, 3.0] {
            let b = parabolic_basin(nu, r0).unwrap();
            assert!(rel(lowest(&b, 1, 2000), nu) < 1e-3, "nu={nu} r0={r0}");
            assert!(rel(troesch_bound(&b), nu) < 1e-10);
        }
    }
}

#[test]
fn grid_convergence_on_builtin_profiles() {
    for b in builtin(1.0) {
        let (a, c) = (lowest(&b, 1, 1000), lowest(&b, 1, 2000));
        let d = lowest(&b, 1, 4000);
        // monotone sequence up to round-off
        assert!((c - a) * (d - c) >= -1e-9 * d * d, "{}", b.kind_name());
        assert!(rel(c, d) < 1e-4, "{}", b.kind_name());
    }
}

#[test]
fn azimuthal_ordering() {
    for b in builtin(2.0) {
        assert!(lowest(&b, 1, 500) <= lowest(&b, 2, 500), "{}", b.kind_name());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn depth_scaling(c in 0.01f64..100.0, which in 0usize..5, m in 1usize..3) {
        let b = builtin(1.0).swap_remove(which);
        let scaled = b.scaled_depth(c);
        let (x, y) = (radial_slosh_eig(&b, m, 200).unwrap(), radial_slosh_eig(&scaled, m, 200).unwrap());
        for (u, v) in x.values.iter().zip(&y.values) {
            prop_assert!(rel(*v, c * u) <= 1e-10);
        }
        prop_assert!(rel(troesch_bound(&scaled), c * troesch_bound(&b)) <= 1e-10);
        let (rx, ry) = (verify_troesch(&b, 200).unwrap(), verify_troesch(&scaled, 200).unwrap());
        prop_assert!(rel(ry.ratio, rx.ratio) <= 1e-10);
    }

    #[test]
    fn regime_ratio_at_most_one(which in 0usize..5, r0 in 0.5f64..4.0) {
        let b = builtin(r0).swap_remove(which);
        let rep = verify_troesch(&b, 1000).unwrap();
        prop_assert!(rep.ratio <= 1.0 + 1e-3);
    }
}
