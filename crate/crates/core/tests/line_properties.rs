use num_complex::Complex;
use proptest::prelude::*;

use harmonia::line::{
    convolve_line, cr_residual_max, ft_closed_form, ft_quadrature, ClosedFormFn, Decay, HalfPlanePoint,
    LineAtomicMeasure, LineFunction,
};

type C = Complex<f64>;

fn complex(r: f64) -> impl Strategy<Value = C> {
    (-r..r, -r..r).prop_map(|(a, b)| C::new(a, b))
}

/// Quadratic times a smooth bump of width `w`, sampled on `[-2, 2]`.
fn compact_fn() -> impl Strategy<Value = LineFunction<f64>> {
    (complex(1.0), complex(1.0), complex(1.0), 0.5..1.5f64).prop_map(|(a, b, c, w)| {
        LineFunction::sample(1, 2.0, 128, Decay::Compact, move |x: &[f64]| {
            let t = x[0] / w;
            (a + b * t + c * t * t) * (1.0 - t * t).max(0.0).powi(2)
        })
        .unwrap()
    })
}

/// Atoms on the dyadic grid `k / 8` with small integer weights, so sums and products are exact.
fn dyadic_measure() -> impl Strategy<Value = LineAtomicMeasure<f64>> {
    prop::collection::vec((-16i32..16, -4i32..=4, -4i32..=4), 1..6).prop_map(|atoms| {
        let atoms = atoms.into_iter().map(|(k, re, im)| (vec![k as f64 / 8.0], C::new(re as f64, im as f64))).collect();
        LineAtomicMeasure::new(1, atoms).unwrap()
    })
}

fn closed_form() -> impl Strategy<Value = ClosedFormFn<f64>> {
    (0.3..3.0f64).prop_flat_map(|a| prop_oneof![Just(ClosedFormFn::QPlus { a }), Just(ClosedFormFn::QMinus { a })])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_matches_closed_form(a in 0.5..2.0f64, xi in -2.0..2.0f64) {
        let g = ClosedFormFn::PA { a };
        let f = LineFunction::from_closed_form(&g, 32.0, 1 << 16).unwrap();
        let q = ft_quadrature(&f, &[xi]).unwrap();
        let exact = ft_closed_form(&g, &HalfPlanePoint::real(&[xi])).unwrap();
        prop_assert!((q - exact).norm() <= 1e-6, "{q} vs {exact}");
    }

    #[test]
    fn line_convolution_commutes_and_multiplies_transforms(f in compact_fn(), g in compact_fn(), xi in -8.0..8.0f64) {
        let fg = convolve_line(&f, &g).unwrap();
        prop_assert_eq!(&fg, &convolve_line(&g, &f).unwrap());
        let lhs = ft_quadrature(&fg, &[xi]).unwrap();
        let rhs = ft_quadrature(&f, &[xi]).unwrap() * ft_quadrature(&g, &[xi]).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn q_plus_transform_is_bounded_on_lower_half_plane(a in 0.1..5.0f64, xi in -50.0..50.0f64, eta in -50.0..=0.0f64) {
        // Q_+ is supported on x > 0, so its transform extends to Im zeta <= 0
        let zeta = HalfPlanePoint::lower(vec![C::new(xi, eta)]).unwrap();
        let v = ft_closed_form(&ClosedFormFn::QPlus { a }, &zeta).unwrap();
        prop_assert!(v.norm() <= (1.0 / a) * (1.0 + 1e-14));
    }

    #[test]
    fn transforms_satisfy_cauchy_riemann(g in closed_form(), xi in -4.0..4.0f64, eta in 0.5..3.0f64) {
        // Q_+ extends to the lower half-plane, Q_- to the upper
        let eta = if matches!(g, ClosedFormFn::QPlus { .. }) { -eta } else { eta };
        let (lo, hi) = if eta < 0.0 { (eta, eta * 0.5) } else { (eta * 0.5, eta) };
        let r = cr_residual_max(&g, (xi, xi + 0.5), (lo, hi), 4, 1e-3).unwrap();
        prop_assert!(r <= 1e-5, "residual {r}");
    }

    #[test]
    fn atomic_measures_commute_and_associate(mu in dyadic_measure(), nu in dyadic_measure(), rho in dyadic_measure()) {
        prop_assert_eq!(mu.convolve(&nu).unwrap().canonical(), nu.convolve(&mu).unwrap().canonical());
        let left = mu.convolve(&nu).unwrap().convolve(&rho).unwrap();
        let right = mu.convolve(&nu.convolve(&rho).unwrap()).unwrap();
        prop_assert_eq!(left.canonical(), right.canonical());
        prop_assert!(mu.convolve(&nu).unwrap().total_variation() <= mu.total_variation() * nu.total_variation() * (1.0 + 1e-14));
    }
}
