use foldylax::green::dos_free;
use foldylax::scatter::*;
use foldylax::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn amplitude_examples() {
    let m = ScatteringModel::MaxPoint;
    for k in [0.3, 1.0, 6.0] {
        assert!((amplitude(&m, 2, c(k, 0.0)).unwrap() - c(0.0, -4.0)).norm() < 1e-13);
    }
    assert!((amplitude(&m, 3, c(1.0, 0.0)).unwrap() - c(0.0, -4.0 * PI)).norm() < 1e-13);
    assert!(amplitude(&m, 3, c(0.0, 0.0)).is_err());
}

// 4π/(i + cot 0.1), evaluated in mpmath.
#[test]
fn hard_sphere_amplitude() {
    let m = ScatteringModel::HardSphere { alpha: 0.1 };
    let f = amplitude(&m, 3, c(1.0, 0.0)).unwrap();
    assert!((f - c(1.2482762202387296, -0.12524538522971858)).norm() < 1e-12);
    let cot = m.cot_delta(3, c(1.0, 0.0)).unwrap();
    assert!((cot.re + 1.0 / 0.1f64.tan()).abs() < 1e-12);
    // d = 2: 4/(i − Y₀(0.2)/J₀(0.2)).
    let f = amplitude(&m, 2, c(2.0, 0.0)).unwrap();
    assert!((f - c(1.9922793216479453, -1.8244348994418227)).norm() < 1e-12);
}

#[test]
fn cross_section_examples() {
    let m = ScatteringModel::MaxPoint;
    for k in [0.5, 2.0] {
        let s = cross_section(&m, 3, k).unwrap();
        assert!(rel(s, 4.0 * PI / (k * k)) < 1e-13);
        assert!(rel(s, cross_section_max(3, k)) < 1e-13);
    }
    assert!(rel(cross_section(&m, 2, 6.0).unwrap(), 4.0 / 6.0) < 1e-13);
    let hs = ScatteringModel::HardSphere { alpha: 0.1 };
    let s = cross_section(&hs, 3, 1e-3).unwrap();
    assert!(rel(s, 4.0 * PI * 0.01) < 0.01);
}

#[test]
fn mean_free_path_examples() {
    let m = ScatteringModel::MaxPoint;
    assert!(rel(mean_free_path(1.0, &m, 2, 6.0).unwrap(), 1.5) < 1e-3);
    assert!(rel(mean_free_path(1.0, &m, 2, 10.0).unwrap(), 2.5) < 1e-3);
    assert!(rel(mean_free_path(1.0, &m, 3, 6.0).unwrap(), 2.865) < 1e-3);
    assert!(mean_free_path(0.0, &m, 2, 6.0).is_err());
}

#[test]
fn effective_wavenumber_examples() {
    let m = ScatteringModel::MaxPoint;
    let k = effective_wavenumber(0.0, &m, 2, c(6.0, 0.0)).unwrap();
    assert_eq!(k.value, c(6.0, 0.0));
    let k = effective_wavenumber(1.0, &m, 2, c(6.0, 0.0)).unwrap();
    // √(36 + 4i) from mpmath.
    assert!((k.value - c(6.0092237665338136, 0.33282168840812231)).norm() < 1e-13);
    assert!(!k.ambiguous);
    let sigma = cross_section(&m, 2, 6.0).unwrap();
    assert!(rel(k.value.im, sigma / 2.0) < 0.005);
}

#[test]
fn collision_probability_examples() {
    assert_eq!(collision_probability(1.0, f64::INFINITY), 0.0);
    assert!((collision_probability(1.0, 1.5) - 0.48658288096740795).abs() < 1e-14);
    assert!((collision_probability(1.0, 2.5) - 0.32967995396436071).abs() < 1e-14);
}

#[test]
fn hard_sphere_tends_to_max_point() {
    let cot = |alpha: f64| -> ScatteringModel {
        ScatteringModel::CustomCotDelta(std::sync::Arc::new(move |_k| c(alpha, 0.0)))
    };
    let f0 = amplitude(&ScatteringModel::MaxPoint, 3, c(1.7, 0.0)).unwrap();
    let f = amplitude(&cot(1e-9), 3, c(1.7, 0.0)).unwrap();
    assert!((f - f0).norm() < 1e-8 * f0.norm());
}

#[test]
fn transport_params() {
    let p = TransportParams::new(2, 1.0, &ScatteringModel::MaxPoint, 6.0).unwrap();
    assert!(rel(p.lscat, 1.5) < 1e-12);
    assert_eq!(p.v, 12.0);
    assert!(rel(p.diffusivity, 12.0 * 1.5 / 2.0) < 1e-12);
}

proptest! {
    #[test]
    fn optical_theorem(d in 1usize..=3, k in 0.05f64..20.0, alpha in 0.01f64..0.5) {
        for m in [ScatteringModel::MaxPoint, ScatteringModel::HardSphere { alpha }] {
            if let Ok(f) = amplitude(&m, d, c(k, 0.0)) {
                let lhs = -f.im;
                let rhs = PI * dos_free(d, k) * f.norm_sqr();
                prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(rhs));
                let s = cross_section(&m, d, k).unwrap();
                prop_assert!(s <= cross_section_max(d, k) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn kappa_branch(n in 0.01f64..5.0, re in 0.1f64..10.0, im in -1.0f64..1.0) {
        let kp = effective_wavenumber(n, &ScatteringModel::MaxPoint, 2, c(re, im)).unwrap();
        prop_assert!(kp.value.im >= 0.0);
        let f = amplitude(&ScatteringModel::MaxPoint, 2, c(re, im)).unwrap();
        let k = c(re, im);
        prop_assert!((kp.value * kp.value - (k * k - n * f)).norm() < 1e-12 * (k * k).norm().max(n * f.norm()));
    }

    #[test]
    fn amplitude_derivative_matches_difference(k in 0.5f64..8.0, alpha in 0.02f64..0.3) {
        let m = ScatteringModel::HardSphere { alpha };
        let z = c(k, -0.1);
        let h = 1e-5;
        let fd = (amplitude(&m, 3, z + h).unwrap() - amplitude(&m, 3, z - h).unwrap()) / (2.0 * h);
        let an = amplitude_deriv(&m, 3, z).unwrap();
        prop_assert!((fd - an).norm() < 1e-6 * an.norm().max(1.0));
    }
}
