use arithdyn::height::is_preperiodic;
use arithdyn::locus::{boundary_box_dimension, locus_grid, Family, PixelStatus, Viewport, DEFAULT_BOX_SCALES};
use arithdyn::map::{ProjPointQ, RationalMapQ};
use arithdyn::parameter::{mandelbrot_green, per1_greens, percrit_roots, Per1Param};
use arithdyn::rational::BigRat;
use num_complex::Complex64 as C;
use proptest::prelude::*;

#[test]
fn percrit_root_invariants() {
    for n in 1..=7 {
        for k in 0..n {
            let roots = percrit_roots(n, k).unwrap();
            assert_eq!(roots.count(), roots.degree, "n={n} k={k}");
            for r in &roots.roots {
                assert!(r.value.norm() <= 2.0 + 1e-9, "n={n} k={k} root {}", r.value);
                assert!(mandelbrot_green(r.value, 1e-9).unwrap().value < 1e-3);
                if let Some(c) = &r.exact {
                    // an integer parameter with a finite critical orbit
                    let f = RationalMapQ::quadratic(&BigRat::from_integer(c.clone())).unwrap();
                    assert!(is_preperiodic(&f, &ProjPointQ::from_int(0)).unwrap().is_preperiodic());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mandelbrot_green_positive_right_of_cusp(c in 0.251f64..10.0) {
        prop_assert!(mandelbrot_green(C::new(c, 0.0), 1e-9).unwrap().value > 0.0);
    }

    #[test]
    fn per1_with_attracting_fixed_point_captures_a_critical_point(
        re in -3.0..3.0f64, im in -3.0..3.0f64,
    ) {
        let s = C::new(re, im);
        prop_assume!(s.norm() > 1e-3);
        let p = Per1Param::new(s, C::new(0.5, 0.0)).unwrap();
        let (plus, minus) = per1_greens(&p, 1e-9).unwrap();
        prop_assert!(plus.value.min(minus.value) < 1e-9);
    }
}

#[test]
fn quadratic_locus_area() {
    let v = Viewport::new(-2.5, 1.5, -2.0, 2.0).unwrap();
    let g = locus_grid(Family::Quadratic, v, 512, 512, 1e-6, 500).unwrap();
    let area = g.bounded_area();
    assert!((1.4..=1.7).contains(&area), "area {area}");
}

#[test]
fn per1_half_has_large_captured_regions() {
    let v = Viewport::new(-3.0, 3.0, -3.0, 3.0).unwrap();
    let g = locus_grid(Family::Per1 { kappa_re: 0.5, kappa_im: 0.0 }, v, 128, 128, 1e-6, 500).unwrap();
    let bounded = g.count(PixelStatus::Bounded) as f64 / (128.0 * 128.0);
    assert!(bounded > 0.1, "fraction with G+ = 0: {bounded}");
}

#[test]
fn chebyshev_segment_dimension() {
    let v = Viewport::new(-2.2, 2.2, -2.2, 2.2).unwrap();
    let g = locus_grid(Family::Julia { c_re: -2.0, c_im: 0.0 }, v, 1024, 1024, 1e-6, 100).unwrap();
    let d = boundary_box_dimension(&g, &DEFAULT_BOX_SCALES).unwrap();
    assert!((d.estimate - 1.0).abs() < 0.05, "{}", d.estimate);
}
