use std::f64::consts::PI;

use faber_walsh::expansion::{fw_coefficients_on, focus_squares, truncated_series};
use faber_walsh::map::TwoIntervalSet;
use faber_walsh::quadrature::QuadratureOptions;
use faber_walsh::recursion::{AlphaSequence, BetaScheme};
use faber_walsh::{Complex64, ComplexPolynomial};
use proptest::prelude::*;

fn set_strategy() -> impl Strategy<Value = TwoIntervalSet> {
    (0.2..3.0f64, 0.05..0.95f64).prop_map(|(a, ratio)| TwoIntervalSet::from_focus_capacity(a, ratio * a).unwrap())
}

/// Laurent coefficients of `psi` at infinity from a DFT of `psi(w) - w` on `|w| = radius`.
fn dft_laurent(set: &TwoIntervalSet, radius: f64, count: usize, samples: usize) -> Vec<Complex64> {
    let map = set.laurent_map(4);
    let pts: Vec<Complex64> = (0..samples)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / samples as f64))
        .collect();
    let vals: Vec<Complex64> = pts.iter().map(|&w| map.psi(w).unwrap() - w).collect();
    (0..count)
        .map(|k| {
            let sum: Complex64 = pts.iter().zip(&vals).map(|(&w, &v)| v * w.powi(k as i32)).sum();
            sum / samples as f64
        })
        .collect()
}

#[test]
fn laurent_recursion_matches_dft() {
    for (a, mu) in [(1.0, 0.5), (2.0, 1.0), (1.0, 0.9)] {
        let set = TwoIntervalSet::from_focus_capacity(a, mu).unwrap();
        let map = set.laurent_map(12);
        let radius = 1.6 * a;
        let dft = dft_laurent(&set, radius, 20, 512);
        for (k, d) in dft.iter().enumerate() {
            let expect = map.c()[k];
            let tol = 1e-13 * radius.powi(k as i32 + 1);
            assert!((d.re - expect).abs() < tol, "a={a} mu={mu} k={k}: {d} vs {expect}");
            assert!(d.im.abs() < tol);
        }
    }
}

#[test]
fn identity_mobius_keeps_coefficients() {
    let set = TwoIntervalSet::new(0.75, 1.25).unwrap();
    let map = set.laurent_map(10);
    let image = map.mobius_image(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
    let ct = image.laurent_coefficients(19);
    for (k, c) in ct.iter().enumerate() {
        assert_eq!(c.re, map.c()[k]);
        assert_eq!(c.im, 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_image_transforms_polynomials(
        set in set_strategy(),
        scale_re in 0.3..2.0f64,
        scale_im in -1.0..1.0f64,
        shift_re in -2.0..2.0f64,
        shift_im in -2.0..2.0f64,
    ) {
        let map = set.laurent_map(8);
        let scale = Complex64::new(scale_re, scale_im);
        let shift = Complex64::new(shift_re, shift_im);
        let image = map.mobius_image(scale, shift).unwrap();
        let degree = 8;
        let b = BetaScheme::for_map(&map, &AlphaSequence::plus_first(set.a()), degree).unwrap();
        let [p, m] = image.foci();
        let seq_t = AlphaSequence::explicit(vec![p, m], vec![0, 1]).unwrap();
        let bt = BetaScheme::build(&image.laurent_coefficients(degree), &seq_t, degree).unwrap();
        let inv = scale.inv();
        for n in 0..=degree {
            // b_n^T(z) = A^n b_n((z - B) / A)
            let expect = b.b(n).compose_affine(inv, -shift * inv).scale(scale.powu(n as u32));
            let diff = (bt.b(n) - &expect).max_abs_coeff();
            let size = expect.max_abs_coeff().max(1.0);
            prop_assert!(diff <= 1e-10 * size, "n={} diff={}", n, diff);
        }
    }

    #[test]
    fn mobius_psi_phi_round_trip(
        set in set_strategy(),
        scale_arg in 0.0..(2.0 * PI),
        x in -4.0..4.0f64,
        y in 0.05..4.0f64,
    ) {
        let map = set.laurent_map(4);
        let image = map.mobius_image(Complex64::from_polar(1.5, scale_arg), Complex64::new(0.3, -0.2)).unwrap();
        let z = image.transform(Complex64::new(x, y) * set.beta());
        let w = image.phi(z).unwrap();
        prop_assert!(image.lemniscate_u(w) > image.capacity());
        let back = image.psi(w).unwrap();
        prop_assert!((back - z).norm() <= 1e-10 * z.norm().max(1.0));
    }

    #[test]
    fn phi_psi_round_trip(set in set_strategy(), sigma in 1.001..6.0f64, theta in 0.0..(2.0 * PI)) {
        let map = set.laurent_map(4);
        let comps = set.level_curve(sigma, 32).unwrap();
        let j = ((theta / (2.0 * PI)) * 32.0) as usize % 32;
        for comp in comps {
            let w = comp[j];
            let z = map.psi(w).unwrap();
            let back = map.phi(z).unwrap();
            prop_assert!((back - w).norm() <= 1e-10 * w.norm().max(1.0), "w={} back={}", w, back);
        }
    }

    #[test]
    fn boundary_maps_onto_set(set in set_strategy(), theta in 0.0..(2.0 * PI)) {
        let map = set.laurent_map(4);
        let (a, mu) = (set.a(), set.mu());
        let s = Complex64::new(a * a, 0.0) + Complex64::from_polar(mu * mu, theta);
        for w in [s.sqrt(), -s.sqrt()] {
            let z = map.psi_unchecked(w);
            prop_assert!(set.distance(z) <= 1e-8 * set.beta());
        }
    }

    #[test]
    fn fw_polynomials_are_monic(set in set_strategy()) {
        let b = BetaScheme::for_map(&set.laurent_map(10), &AlphaSequence::plus_first(set.a()), 20).unwrap();
        for (n, p) in b.polynomials().iter().enumerate() {
            prop_assert_eq!(p.degree(), Some(n));
            prop_assert!(p.is_monic(1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coefficients_do_not_depend_on_the_square(r in 0.5..0.95f64, k in 0usize..20) {
        let map = TwoIntervalSet::new(0.75, 1.25).unwrap().laurent_map(10);
        let seq = AlphaSequence::plus_first(1.0);
        let f = |z: Complex64| (z - Complex64::new(0.0, 0.8)).inv();
        let opts = QuadratureOptions::default();
        let reference = fw_coefficients_on(&map, &seq, &f, k, &focus_squares(&map, 0.7).unwrap(), &opts).unwrap();
        let other = fw_coefficients_on(&map, &seq, &f, k, &focus_squares(&map, r).unwrap(), &opts).unwrap();
        prop_assert!((reference[k] - other[k]).norm() <= 1e-9 * reference[k].norm().max(1e-3));
    }

    #[test]
    fn expansion_of_a_polynomial_solves_the_triangular_system(
        coeffs in prop::collection::vec(-2.0..2.0f64, 1..7),
    ) {
        let map = TwoIntervalSet::new(0.75, 1.25).unwrap().laurent_map(8);
        let seq = AlphaSequence::plus_first(1.0);
        let p = ComplexPolynomial::from_real(&coeffs);
        let n = 7;
        let series = truncated_series(&map, &seq, &|z| p.eval(z), n, 0.7, &QuadratureOptions::default()).unwrap();

        // b_k is monic of degree k: peel off the top coefficient repeatedly.
        let mut rest = p.clone();
        let mut expect = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in (0..=n).rev() {
            let top = rest.coeff(k);
            expect[k] = top;
            rest = rest.add_scaled(-top, &series.b[k]);
        }
        for (k, e) in expect.iter().enumerate().take(n + 1) {
            prop_assert!((series.a[k] - e).norm() < 1e-9, "k={} {} vs {}", k, series.a[k], e);
        }
    }
}
