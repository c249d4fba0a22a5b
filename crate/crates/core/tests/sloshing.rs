use std::f64::consts::PI;

use proptest::prelude::*;
use slosh_iso::{
    angular_frequency, build_shape, depth_curve, slosh_eig, solve_mesh, spectral_parameter, triangulate, DepthSpec,
    Error, PhysicalContext, ShapeSpec, DEFAULT_SEED,
};

fn fin(d: f64) -> DepthSpec<f64> {
    DepthSpec::finite(d).unwrap()
}

/// tanh from its exponential definition, independent of the library path.
fn tanh_ref(x: f64) -> f64 {
    let e = (-2.0 * x).exp();
    (1.0 - e) / (1.0 + e)
}

#[test]
fn closed_form_examples() {
    let pi2 = PI * PI;
    assert_eq!(slosh_eig(pi2, DepthSpec::Infinite).unwrap(), PI);
    let shallow = slosh_eig(pi2, fin(0.1)).unwrap();
    assert!((shallow - PI * tanh_ref(0.1 * PI)).abs() < 1e-14);
    assert!((shallow - 0.95573).abs() < 1e-5);
    assert!((slosh_eig(pi2, fin(10.0)).unwrap() - PI).abs() < 1e-12);
}

#[test]
fn depth_curve_examples() {
    let rows = depth_curve(1.0, &[0.5, 1.0, 2.0]).unwrap();
    let expect = [0.4621, 0.7616, 0.9640];
    for ((d, nu), e) in rows.iter().zip(expect) {
        assert!((nu - tanh_ref(*d)).abs() < 1e-15);
        assert!((nu - e).abs() < 5e-5);
    }
    let row: (f64, f64) = depth_curve(4.0, &[1e-4]).unwrap()[0];
    assert!((row.1 / (4.0 * 1e-4) - 1.0).abs() < 1e-6);
    assert!(matches!(depth_curve(1.0, &[1.0, 0.5]), Err(Error::Unsorted(_))));
    assert!(depth_curve(1.0, &[1.0, 1.0]).is_err());
    assert!(depth_curve(1.0, &[-1.0, 1.0]).is_err());
}

#[test]
fn frequency_examples() {
    let ctx = PhysicalContext::default();
    assert!((angular_frequency(1.0, &ctx).unwrap() - 3.1321).abs() < 5e-5);
    assert_eq!(
        angular_frequency(1.0, &PhysicalContext::new(1.0).unwrap()).unwrap(),
        1.0
    );
    assert!(PhysicalContext::new(0.0).is_err());
    assert!(angular_frequency(-1.0, &ctx).is_err());
}

#[test]
fn invalid_inputs() {
    assert!(matches!(
        slosh_eig(0.0, DepthSpec::Infinite),
        Err(Error::NonPositive { .. })
    ));
    assert!(slosh_eig(-1.0, fin(1.0)).is_err());
    assert!(DepthSpec::finite(0.0).is_err());
    assert!(slosh_eig(1.0, DepthSpec::Finite(-2.0)).is_err());
}

#[test]
fn depth_parsing() {
    assert_eq!("inf".parse::<DepthSpec<f64>>().unwrap(), DepthSpec::Infinite);
    assert_eq!("2.5".parse::<DepthSpec<f64>>().unwrap(), DepthSpec::Finite(2.5));
    assert!("0".parse::<DepthSpec<f64>>().is_err());
    assert!("deep".parse::<DepthSpec<f64>>().is_err());
    assert_eq!(DepthSpec::Finite(0.5f64).to_string(), "0.5");
}

#[test]
fn square_mesh_consistency() {
    let sq = build_shape(&ShapeSpec::rectangle(1.0, 1.0)).unwrap();
    let mu1 = solve_mesh(&triangulate(&sq, 6), 1, DEFAULT_SEED).unwrap().values[0];
    let nu1 = slosh_eig(mu1, fin(1.0)).unwrap();
    let exact = PI * tanh_ref(PI);
    assert!((nu1 - exact).abs() / exact < 5e-3);
}

proptest! {
    #[test]
    fn increasing_in_depth_and_bounded(mu in 0.01f64..100.0) {
        // 100 depths over x = d√μ ∈ [1e-3, 15], below tanh saturation
        let root = mu.sqrt();
        let depths: Vec<f64> = (0..100).map(|i| 1e-3 * (15e3f64).powf(i as f64 / 99.0) / root).collect();
        let rows = depth_curve(mu, &depths).unwrap();
        prop_assert!(rows.windows(2).all(|w| w[1].1 > w[0].1));
        prop_assert!(rows.iter().all(|r| r.1 < root));
    }

    #[test]
    fn shallow_water_limit(mu in 0.01f64..100.0, x in 1e-6f64..0.1) {
        let d = x / mu.sqrt();
        let nu = slosh_eig(mu, fin(d)).unwrap();
        // 1 − tanh(x)/x ≤ x²/3
        prop_assert!((nu / (mu * d) - 1.0).abs() <= mu * d * d);
    }

    #[test]
    fn mode_order_preserved(a in 0.01f64..100.0, b in 0.01f64..100.0, d in 0.01f64..30.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(slosh_eig(lo, fin(d)).unwrap() <= slosh_eig(hi, fin(d)).unwrap());
        prop_assert!(slosh_eig(lo, DepthSpec::Infinite).unwrap() <= slosh_eig(hi, DepthSpec::Infinite).unwrap());
    }

    #[test]
    fn frequency_round_trip(nu in 1e-6f64..1e6, g in 0.1f64..100.0) {
        let ctx = PhysicalContext::new(g).unwrap();
        let back = spectral_parameter(angular_frequency(nu, &ctx).unwrap(), &ctx).unwrap();
        prop_assert!((back - nu).abs() <= 1e-14 * nu);
    }
}
