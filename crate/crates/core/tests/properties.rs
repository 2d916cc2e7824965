use arithdyn::green::{green_arch_vector, green_padic};
use arithdyn::height::{
    apply_unreduced, canonical_height_adelic, canonical_height_global, height_difference_bound, naive_height,
};
use arithdyn::map::{ProjPointQ, RationalMapC, RationalMapQ};
use arithdyn::rational::{padic_valuation, place_product, BigRat};
use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn rational(max: i64) -> impl Strategy<Value = BigRat> {
    (-max..=max, 1..=max).prop_map(|(a, b)| BigRat::new(a, b).unwrap())
}

fn nonzero_rational(max: i64) -> impl Strategy<Value = BigRat> {
    rational(max).prop_filter("nonzero", |r| !r.is_zero())
}

fn point(max: i64) -> impl Strategy<Value = ProjPointQ> {
    prop_oneof![
        1 => Just(ProjPointQ::infinity()),
        9 => rational(max).prop_map(|r| ProjPointQ::from_rat(&r)),
    ]
}

fn small_map() -> impl Strategy<Value = RationalMapQ> {
    prop_oneof![
        rational(6).prop_map(|c| RationalMapQ::quadratic(&c).unwrap()),
        (2usize..5).prop_map(|d| RationalMapQ::power(d).unwrap()),
        Just(RationalMapQ::lattes()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_formula(x in nonzero_rational(1_000_000)) {
        prop_assert_eq!(place_product(&x).unwrap(), BigRat::one());
    }

    #[test]
    fn valuation_is_additive(a in nonzero_rational(5000), b in nonzero_rational(5000), i in 0usize..6) {
        let p = PRIMES[i];
        let ab = &a * &b;
        let va = padic_valuation(&a, p).unwrap().unwrap();
        let vb = padic_valuation(&b, p).unwrap().unwrap();
        prop_assert_eq!(padic_valuation(&ab, p).unwrap(), Some(va + vb));
    }

    #[test]
    fn image_is_reduced_and_proportional(f in small_map(), x in point(50)) {
        let y = f.apply(&x);
        prop_assert!(y.x().gcd(y.y()).is_one());
        let (a, b) = apply_unreduced(&f, &x);
        prop_assert_eq!(&a * y.y(), &b * y.x());
    }

    #[test]
    fn orbit_agrees_with_repeated_apply(f in small_map(), x in point(20)) {
        let orbit = f.iterate_orbit(&x, 3, 10_000).unwrap();
        let mut y = x.clone();
        for z in &orbit[1..] {
            y = f.apply(&y);
            prop_assert_eq!(&y, z);
        }
    }

    #[test]
    fn canonical_height_of_power_map_is_naive(d in 2usize..5, x in point(10_000)) {
        let f = RationalMapQ::power(d).unwrap();
        let h = canonical_height_adelic(&f, &x, 1e-10).unwrap();
        prop_assert!((h.value - naive_height(&x)).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn height_properties(f in small_map(), x in point(30)) {
        let h = canonical_height_adelic(&f, &x, 1e-8).unwrap();
        prop_assert!(h.value >= -1e-8);
        prop_assert!((h.value - naive_height(&x)).abs() <= height_difference_bound(&f) + 1e-8);
        let fx = f.apply(&x);
        let hf = canonical_height_adelic(&f, &fx, 1e-8).unwrap();
        let d = f.degree() as f64;
        prop_assert!((hf.value - d * h.value).abs() < 1e-6 * (1.0 + hf.value), "{} vs {}", hf.value, d * h.value);
        let g = canonical_height_global(&f, &x, 1e-4).unwrap();
        prop_assert!((g.value - h.value).abs() < 1e-4 + g.error);
    }

    #[test]
    fn archimedean_green_functional_equation(
        f in small_map(),
        re in -3.0..3.0f64, im in -3.0..3.0f64,
        yre in -1.0..1.0f64,
    ) {
        let g = RationalMapC::from_q(&f);
        let (x, y) = (C::new(re, im), C::new(yre, 0.5));
        let (fx, fy) = g.lift(x, y);
        prop_assume!(fx.norm().max(fy.norm()) > 1e-8);
        let a = green_arch_vector(&g, x, y, 0.0, 1e-11).unwrap();
        let b = green_arch_vector(&g, fx, fy, 0.0, 1e-11).unwrap();
        let d = g.degree() as f64;
        prop_assert!((b.value - d * a.value).abs() < 1e-8 * (1.0 + b.value.abs()));
    }

    #[test]
    fn green_is_log_homogeneous(f in small_map(), re in -3.0..3.0f64, scale in -5.0..5.0f64) {
        let g = RationalMapC::from_q(&f);
        let x = C::new(re, 0.7);
        let y = C::new(1.0, 0.0);
        let a = green_arch_vector(&g, x, y, 0.0, 1e-11).unwrap();
        let b = green_arch_vector(&g, x, y, scale, 1e-11).unwrap();
        prop_assert!((b.value - a.value - scale).abs() < 1e-9);
    }

    #[test]
    fn padic_green_vanishes_at_good_primes(f in small_map(), x in point(40), i in 0usize..6) {
        let p = PRIMES[i];
        prop_assume!(!f.resultant().is_multiple_of(&BigInt::from(p)));
        let g = green_padic(&f, p, &x, 64).unwrap();
        prop_assert_eq!(g.value, 0.0);
    }
}
