use graphene_dispersion::kramers_kronig::{kk_im_from_re, kk_imag_axis, kk_re_from_im};
use graphene_dispersion::quadrature::{pv_simple_pole, uniform, Integrand, QuadConfig};
use graphene_dispersion::response::{
    longitudinal_from_polarization, polarization_00, polarization_combo,
    transverse_from_polarization, DrudeParams, GrapheneParams, ResponseModel,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn graphene(transverse: bool, k: f64) -> ResponseModel {
    let p = GrapheneParams::natural_with_k(k);
    if transverse {
        ResponseModel::GrapheneTransverse(p)
    } else {
        ResponseModel::GrapheneLongitudinal(p)
    }
}

fn wave_vector() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))
}

/// `ω/b` away from the branch points.
fn reduced_frequency() -> impl Strategy<Value = f64> {
    (-5.0f64..5.0).prop_filter("off the branch points", |x| {
        (x.abs() - 1.0).abs() > 1e-6 && *x != 0.0
    })
}

proptest! {
    #[test]
    fn real_part_even_imaginary_part_odd(transverse: bool, k in wave_vector(), x in reduced_frequency()) {
        let model = graphene(transverse, k);
        let w = x * k;
        let plus = model.eval_real(w).get().unwrap();
        let minus = model.eval_real(-w).get().unwrap();
        prop_assert_eq!(plus, minus.conj());
    }

    #[test]
    fn real_axis_is_the_limit_from_above(transverse: bool, k in wave_vector(), x in reduced_frequency()) {
        prop_assume!((x.abs() - 1.0).abs() > 1e-2 && x.abs() > 1e-2);
        let model = graphene(transverse, k);
        let w = x * k;
        let on = model.eval_real(w).get().unwrap();
        let above = model.eval_complex(Complex64::new(w, 1e-9 * k)).unwrap().get().unwrap();
        prop_assert!((on - above).norm() <= 1e-6 * on.norm().max(1.0));
        let exact = model.eval_complex(Complex64::new(w, 0.0)).unwrap().get().unwrap();
        prop_assert_eq!(on, exact);
    }

    #[test]
    fn imaginary_axis_is_real_and_above_one(transverse: bool, k in wave_vector(), z in -3.0f64..3.0) {
        let model = graphene(transverse, k);
        let e = model.eval_imaginary_axis(10f64.powf(z) * k).unwrap().get().unwrap();
        prop_assert_eq!(e.im, 0.0);
        prop_assert!(e.re > 1.0);
    }

    #[test]
    fn longitudinal_imaginary_axis_decreases(k in wave_vector(), z in -3.0f64..3.0) {
        let model = graphene(false, k);
        let xi = 10f64.powf(z) * k;
        let lo = model.eval_imaginary_axis(xi).unwrap().value.re;
        let hi = model.eval_imaginary_axis(xi * 1.01).unwrap().value.re;
        prop_assert!(hi < lo);
    }

    #[test]
    fn absorbing_above_the_branch_point(transverse: bool, k in wave_vector(), x in 1.0001f64..100.0) {
        let e = graphene(transverse, k).eval_real(x * k).get().unwrap();
        prop_assert!(e.im > 0.0);
    }

    #[test]
    fn lossless_inside_the_branch_points(transverse: bool, k in wave_vector(), x in -0.9999f64..0.9999) {
        prop_assume!(x != 0.0);
        let e = graphene(transverse, k).eval_real(x * k).get().unwrap();
        prop_assert_eq!(e.im, 0.0);
    }

    #[test]
    fn polarization_route_agrees(k in wave_vector(), x in reduced_frequency()) {
        let p = GrapheneParams::natural_with_k(k);
        let w = x * k;
        let l = 1.0 + longitudinal_from_polarization(&p, polarization_00(&p, w).unwrap());
        let t = 1.0 + transverse_from_polarization(&p, w, polarization_combo(&p, w).unwrap());
        let l0 = ResponseModel::GrapheneLongitudinal(p).eval_real(w).get().unwrap();
        let t0 = ResponseModel::GrapheneTransverse(p).eval_real(w).get().unwrap();
        prop_assert!((l - l0).norm() <= 1e-14 * (l0 - 1.0).norm());
        prop_assert!((t - t0).norm() <= 1e-14 * (t0 - 1.0).norm());
    }

    #[test]
    fn undamped_drude_is_plasma(wp in 0.1f64..10.0, w in 0.01f64..100.0) {
        let drude = ResponseModel::Drude(DrudeParams::new(wp, 0.0).unwrap());
        let plasma = ResponseModel::Plasma { omega_p: wp };
        let d = drude.eval_real(w).get().unwrap();
        let p = plasma.eval_real(w).get().unwrap();
        prop_assert!((d - p).norm() <= 1e-14 * p.norm().max(1.0));
    }

    #[test]
    fn pv_of_reciprocal_is_a_logarithm(a in -5.0f64..0.0, len in 0.1f64..10.0, t in 0.01f64..0.99) {
        let b = a + len;
        let pole = a + t * len;
        let f = Integrand::new(|_| 1.0);
        let r = pv_simple_pole(&f, pole, (a, b), &QuadConfig::new(1e-14, 1e-13)).unwrap();
        let want = ((b - pole) / (pole - a)).ln();
        prop_assert!((r.value - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn pv_of_odd_integrand_about_centred_pole(h in 0.1f64..10.0, c in -5.0f64..5.0) {
        // f(x) = (x − c)³ makes f/(x − c) even about c
        let f = Integrand::new(move |x: f64| (x - c).powi(3));
        let r = pv_simple_pole(&f, c, (c - h, c + h), &QuadConfig::new(1e-14, 1e-13)).unwrap();
        let want = 2.0 * h.powi(3) / 3.0;
        prop_assert!((r.value - want).abs() <= 1e-12 * want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn real_axis_relations_hold_at_random_points(transverse: bool, k in wave_vector(), z in -2.0f64..2.0) {
        let x = 10f64.powf(z);
        prop_assume!((x - 1.0).abs() > 1e-3);
        let model = graphene(transverse, k);
        prop_assert!(kk_re_from_im(&model, x * k, None).unwrap().rel_residual <= 1e-6);
        prop_assert!(kk_im_from_re(&model, x * k, None).unwrap().rel_residual <= 1e-6);
    }

    #[test]
    fn imaginary_axis_relation_holds(transverse: bool, k in wave_vector(), z in -2.0f64..2.0) {
        let model = graphene(transverse, k);
        prop_assert!(kk_imag_axis(&model, 10f64.powf(z) * k, None).unwrap().rel_residual <= 1e-7);
    }
}

#[test]
fn reconstruction_is_insensitive_to_the_branch_point() {
    for transverse in [false, true] {
        let model = graphene(transverse, 1.0);
        for x in [0.95, 1.05] {
            let re = kk_re_from_im(&model, x, None).unwrap();
            let im = kk_im_from_re(&model, x, None).unwrap();
            assert!(re.rel_residual <= 1e-4, "{x}: {re:?}");
            assert!(im.rel_residual <= 1e-4, "{x}: {im:?}");
        }
    }
}

#[test]
fn uniform_refinement_converges_fast() {
    let f = |x: f64| (3.0 * x).cos();
    let want = 24f64.sin() / 3.0;
    let errors: Vec<f64> = (0..4)
        .map(|d| (uniform(&f, 0.0, 8.0, d).unwrap().value - want).abs())
        .collect();
    for pair in errors.windows(2) {
        assert!(pair[1] < 1e-13 || pair[1] < pair[0] / 1e3, "{errors:?}");
    }
    assert!(errors[3] < 1e-13);
}
