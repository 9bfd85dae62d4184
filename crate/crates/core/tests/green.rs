use foldylax::green::*;
use foldylax::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn free_green_examples() {
    let g = green_free(3, GreenSign::Plus, c(1.0, 0.0), 1.0).unwrap();
    assert!((g - c(-0.0429958913714318, -0.0669621333502909)).norm() < 1e-14);
    let g = green_free(1, GreenSign::Plus, c(1.0, 0.0), 0.0).unwrap();
    assert!((g - c(0.0, -0.5)).norm() < 1e-15);
    let g = green_free(2, GreenSign::Plus, c(0.0, 1.0), 1.0).unwrap();
    assert!((g.re + 0.067008).abs() < 1e-6);
    assert!(g.im.abs() < 1e-15);
    for d in 2..=4 {
        assert!(green_free(d, GreenSign::Plus, c(1.0, 0.0), 0.0).is_err());
    }
}

#[test]
fn asymptotic_examples() {
    for r in [0.5, 1.0, 7.0] {
        let k = c(1.0, 0.0);
        let exact = -(c(0.0, 1.0) * k * r).exp() / (4.0 * PI * r);
        assert!((green_asym(3, GreenSign::Plus, k, r).unwrap() - exact).norm() < 1e-14);
        let k = c(1.3, 0.2);
        let exact = (c(0.0, 1.0) * k * r).exp() / (c(0.0, 2.0) * k);
        assert!((green_asym(1, GreenSign::Plus, k, r).unwrap() - exact).norm() < 1e-14);
        assert!((green_free(1, GreenSign::Plus, k, r).unwrap() - exact).norm() < 1e-14);
    }
    let a = green_asym(2, GreenSign::Plus, c(10.0, 0.0), 50.0).unwrap();
    let g = green_free(2, GreenSign::Plus, c(10.0, 0.0), 50.0).unwrap();
    assert!((a - g).norm() < 0.01 * g.norm());
}

#[test]
fn dos_examples() {
    assert!((dos_free(2, 3.7) - 1.0 / (4.0 * PI)).abs() < 1e-15);
    assert!((dos_free(3, 2.0) - 2.0 / (4.0 * PI * PI)).abs() < 1e-15);
    assert!((dos_free(1, 1.0) - 1.0 / (2.0 * PI)).abs() < 1e-15);
    assert!((dos_analytic(3, c(2.0, 0.0)).re - dos_free(3, 2.0)).abs() < 1e-15);
}

#[test]
fn imaginary_part_at_origin_is_dos() {
    for d in 1..=3 {
        for k in [0.5, 2.0, 6.0] {
            let g = green_free(d, GreenSign::Plus, c(k, 0.0), 1e-6).unwrap();
            let n = -g.im / PI;
            assert!((n - dos_free(d, k)).abs() < 1e-6 * dos_free(d, k).max(1.0), "d={d} k={k}");
        }
    }
}

#[test]
fn outgoing_decays_in_upper_half_plane() {
    for d in 1..=3 {
        let k = c(2.0, 0.3);
        let near = green_free(d, GreenSign::Plus, k, 5.0).unwrap().norm();
        let far = green_free(d, GreenSign::Plus, k, 50.0).unwrap().norm();
        assert!(far < near * 1e-4);
        let near = green_free(d, GreenSign::Minus, k, 5.0).unwrap().norm();
        let far = green_free(d, GreenSign::Minus, k, 50.0).unwrap().norm();
        assert!(far > near * 1e4);
    }
}

proptest! {
    #[test]
    fn sign_and_conjugation_symmetries(d in 1usize..=4, re in -8.0f64..8.0, im in 0.01f64..3.0, r in 0.05f64..20.0) {
        let k = c(re, im);
        let gp = green_free(d, GreenSign::Plus, k, r).unwrap();
        let mirrored = green_free(d, GreenSign::Plus, -k.conj(), r).unwrap();
        prop_assert!((gp.conj() - mirrored).norm() <= 1e-12 * gp.norm().max(1e-300));
        let gm = green_free(d, GreenSign::Minus, -k, r).unwrap();
        prop_assert!((gp - gm).norm() <= 1e-12 * gp.norm().max(1e-300));
    }

    #[test]
    fn real_on_positive_imaginary_axis(d in 1usize..=4, kappa in 0.05f64..5.0, r in 0.05f64..10.0) {
        let g = green_free(d, GreenSign::Plus, c(0.0, kappa), r).unwrap();
        prop_assert!(g.im.abs() <= 1e-13 * g.norm().max(1e-300));
    }
}
