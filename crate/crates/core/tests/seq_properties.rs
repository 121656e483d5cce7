use num_complex::Complex;
use proptest::prelude::*;

use harmonia::seq::{brute_force_dual_norm, dual_norm, pairing, Exponent, SeqVector};

type C = Complex<f64>;

const REL: f64 = 1e-12;

fn entry() -> impl Strategy<Value = C> {
    prop_oneof![
        1 => Just(C::new(0.0, 0.0)),
        9 => (-1.0..1.0f64, -1.0..1.0f64, -3.0..3.0f64).prop_map(|(a, b, e)| C::new(a, b) * 10f64.powf(e)),
    ]
}

fn vec_pair() -> impl Strategy<Value = (SeqVector<f64>, SeqVector<f64>)> {
    (1usize..30).prop_flat_map(|n| {
        (prop::collection::vec(entry(), n), prop::collection::vec(entry(), n))
            .prop_map(|(a, b)| (SeqVector::new(a).unwrap(), SeqVector::new(b).unwrap()))
    })
}

fn fin(p: f64) -> Exponent<f64> {
    Exponent::new(p).unwrap()
}

fn le(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + REL) + 1e-300
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn minkowski((f, g) in vec_pair(), p in 1.0..10.0f64) {
        let p = fin(p);
        prop_assert!(le(f.add(&g).unwrap().lp_norm(p), f.lp_norm(p) + g.lp_norm(p)));
    }

    #[test]
    fn quasi_triangle_below_one((f, g) in vec_pair(), p in 0.01..=1.0f64) {
        prop_assert!(le(f.add(&g).unwrap().lp_norm_pow(p), f.lp_norm_pow(p) + g.lp_norm_pow(p)));
    }

    #[test]
    fn norms_decrease_in_p((f, _) in vec_pair(), p in 0.1..10.0f64, dq in 0.0..10.0f64) {
        prop_assert!(le(f.lp_norm(fin(p + dq)), f.lp_norm(fin(p))));
        prop_assert!(le(f.lp_norm(Exponent::Infinity), f.lp_norm(fin(p))));
    }

    #[test]
    fn sup_and_l1_are_equivalent((f, _) in vec_pair()) {
        let sup = f.lp_norm(Exponent::Infinity);
        let l1 = f.lp_norm(fin(1.0));
        prop_assert!(le(sup, l1));
        prop_assert!(le(l1, f.len() as f64 * sup));
    }

    #[test]
    fn holder((f, g) in vec_pair(), p in prop_oneof![Just(1.0), Just(f64::INFINITY), 1.0..20.0f64]) {
        let p = Exponent::new(p).unwrap();
        let q = p.conjugate().unwrap();
        let lhs = f.mul(&g).unwrap().lp_norm(fin(1.0));
        prop_assert!(le(lhs, f.lp_norm(p) * g.lp_norm(q)));
        prop_assert!(le(pairing(&f, &g).unwrap().norm(), lhs));
    }

    #[test]
    fn multiplicative_interpolation(
        (f, g) in vec_pair(),
        t in 0.0..=1.0f64,
        p in 0.05..8.0f64,
        shrink in prop::collection::vec((0.0..=1.0f64, 0.0..6.3f64), 30),
    ) {
        let h = SeqVector::new(
            f.entries()
                .iter()
                .zip(g.entries())
                .zip(&shrink)
                .map(|((a, b), &(s, phase))| {
                    let m = if t == 0.0 { b.norm() } else if t == 1.0 { a.norm() } else { a.norm().powf(t) * b.norm().powf(1.0 - t) };
                    C::from_polar(m * s, phase)
                })
                .collect(),
        )
        .unwrap();
        let p = fin(p);
        prop_assert!(le(h.lp_norm(p), f.lp_norm(p).powf(t) * g.lp_norm(p).powf(1.0 - t)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dual_norm_matches_brute_force(
        g in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| C::new(a, b)), 1..=3),
        p in prop_oneof![Just(1.0), Just(1.25), Just(2.0), Just(3.5), Just(f64::INFINITY)],
    ) {
        let g = SeqVector::new(g).unwrap();
        let p = Exponent::new(p).unwrap();
        let closed = dual_norm(&g, p).unwrap();
        let brute = brute_force_dual_norm(&g, p).unwrap();
        prop_assert!((closed.value - brute).abs() <= 1e-6 * closed.value.max(1.0));
        // the extremizer attains the value on the unit sphere
        prop_assert!((pairing(&closed.extremizer, &g).unwrap().norm() - closed.value).abs() <= 1e-12 * closed.value.max(1.0));
    }
}
