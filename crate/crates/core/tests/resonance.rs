use foldylax::mscore::logdet;
use foldylax::pointfield::{Configuration, Medium};
use foldylax::resonance::*;
use foldylax::scatter::ScatteringModel;
use foldylax::specfun::hankel_zeros;
use foldylax::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use std::sync::Arc;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pair(r12: f64) -> Configuration {
    Configuration::from_positions(3, vec![[0.0; 3], [r12, 0.0, 0.0]])
}

#[test]
fn synthetic_simple_zero() {
    let k0 = c(2.03, -0.41);
    let w = KWindow::new(1.0, 3.0, -1.0, 0.0, 40, 20).unwrap();
    let map = map_from_potential(&w, |k| Ok((k - k0).norm().ln())).unwrap();
    let cell = KRect::new(1.5, 2.5, -0.8, -0.1).unwrap();
    let total = map.integrated_count(&cell) * 2.0 * PI;
    assert!((total - 2.0 * PI).abs() < 0.02 * 2.0 * PI, "{total}");
}

#[test]
fn single_scatterer_has_no_resonance() {
    let medium = Medium::new(3, 1, 1.0, ScatteringModel::MaxPoint, 0).unwrap();
    let w = KWindow::new(0.5, 4.0, -1.5, -0.05, 30, 15).unwrap();
    let map = resonance_density_map(&medium, &w, 2).unwrap();
    let cell = w.hx() * w.hy() / (2.0 * PI);
    assert!(map.density.iter().all(|x| (x * cell).abs() < 1e-3));
    assert!(map.integrated_count(&w.rect).abs() < 1e-3);
}

#[test]
fn two_scatterer_pole_values() {
    let p = two_scatterer_poles(1.0).unwrap();
    assert!((p[0] - c(-1.3372357014306895, -0.31813150520476413)).norm() < 1e-12);
    assert!((p[1] - c(1.3372357014306895, -0.31813150520476413)).norm() < 1e-12);
    let half = two_scatterer_poles(2.0).unwrap();
    assert!((half[1] - p[1] / 2.0).norm() < 1e-14);
    for &k in &p {
        assert!(logdet(&pair(1.0), &ScatteringModel::MaxPoint, k).unwrap().re.exp() < 1e-12);
    }
    let b = two_scatterer_pole_branches(1.0, 2).unwrap();
    assert!(b.iter().all(|k| k.im < 0.0));
    for &k in &b {
        assert!(logdet(&pair(1.0), &ScatteringModel::MaxPoint, k).unwrap().re.exp() < 1e-10, "{k}");
    }
}

#[test]
fn two_scatterer_map_peak() {
    let cfg = pair(1.0);
    let w = KWindow::new(0.5, 2.5, -1.0, -0.02, 60, 30).unwrap();
    let map = density_map_from(&[cfg], &ScatteringModel::MaxPoint, &w).unwrap();
    let (mut best, mut at) = (f64::MIN, c(0.0, 0.0));
    for iy in 0..w.ny {
        for ix in 0..w.nx {
            if map.at(ix, iy) > best {
                best = map.at(ix, iy);
                at = w.node(ix as isize, iy as isize);
            }
        }
    }
    assert!((at - c(1.3372, -0.3181)).norm() < 0.05, "{at}");
}

#[test]
fn count_zeros_examples() {
    let k0 = c(1.2, -0.7);
    let rect = KRect::new(1.0, 1.5, -1.0, -0.5).unwrap();
    assert_eq!(count_zeros(|k| Ok((k - k0).ln()), &rect).unwrap(), 1);
    let far = KRect::new(3.0, 4.0, -1.0, -0.5).unwrap();
    assert_eq!(count_zeros(|k| Ok((k - k0).ln()), &far).unwrap(), 0);
    let p = two_scatterer_poles(1.0).unwrap()[1];
    let boxed = KRect::new(p.re - 0.2, p.re + 0.2, p.im - 0.2, p.im + 0.2).unwrap();
    assert_eq!(count_zeros_config(&pair(1.0), &ScatteringModel::MaxPoint, &boxed).unwrap(), 1);
    let empty = KRect::new(0.2, 0.6, -0.3, -0.1).unwrap();
    assert_eq!(count_zeros_config(&pair(1.0), &ScatteringModel::MaxPoint, &empty).unwrap(), 0);
}

#[test]
fn window_checks() {
    let medium = Medium::new(2, 2, 1.0, ScatteringModel::MaxPoint, 0).unwrap();
    let w = KWindow::new(-1.0, 1.0, -1.0, -0.1, 10, 10).unwrap();
    assert!(resonance_density_map(&medium, &w, 1).is_err());
    assert!(KRect::new(1.0, 0.0, -1.0, 0.0).is_err());
}

#[test]
fn s_matrix_of_empty_medium() {
    for d in 1..=3 {
        for ell in 0..3 {
            let k = c(1.7, -0.2);
            let s = effective_s_matrix(d, ell, k, k, 3.0).unwrap();
            assert!((s.value - 1.0).norm() < 1e-10, "d={d} ell={ell}: {}", s.value);
        }
    }
}

#[test]
fn effective_roots_solve_the_s_wave_equation() {
    let medium = Medium::unit_density(3, 100, ScatteringModel::HardSphere { alpha: 0.1 }, 0).unwrap();
    let res = effective_resonances(&medium, 0, 2.4).unwrap();
    assert!(!res.roots.is_empty());
    let r = medium.radius;
    for root in &res.roots {
        assert!(root.k.im <= 0.0 && root.k.norm() <= 2.4);
        let kappa = medium_kappa(&medium, root.k).unwrap();
        let lhs = kappa * (kappa * r).cos() / (kappa * r).sin();
        let rhs = c(0.0, 1.0) * root.k;
        assert!((lhs - rhs).norm() < 1e-8 * rhs.norm().max(1.0), "{}: {lhs} vs {rhs}", root.k);
        let s = effective_s_matrix(3, 0, root.k, kappa, r).unwrap();
        assert!(s.at_resonance || s.value.norm() > 1e6);
    }
}

#[test]
fn strong_scattering_limit_gives_hankel_zeros() {
    let radius = 2.0;
    for ell in 1..=2 {
        let nu = ell as f64 + 0.5;
        for z in hankel_zeros(nu).unwrap().refined {
            let target = z / radius;
            let mut last = f64::INFINITY;
            for eps in [1e-1, 1e-2, 1e-3] {
                let cot: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(move |_| c(0.0, 1.0 - eps));
                let medium = Medium::new(3, 30, radius, ScatteringModel::CustomCotDelta(cot), 0).unwrap();
                let roots = effective_resonances(&medium, ell, 3.0).unwrap().roots;
                let best = roots.iter().map(|r| (r.k - target).norm()).fold(f64::INFINITY, f64::min);
                assert!(best < last);
                last = best;
            }
            assert!(last < 0.01, "ell={ell}: {target} nearest {last}");
        }
    }
}

proptest! {
    #[test]
    fn s_matrix_is_unitary_without_loss(d in 1usize..=3, ell in 0usize..4, k in 0.2f64..6.0, q in 0.2f64..8.0, r in 0.5f64..5.0) {
        let s = effective_s_matrix(d, ell, c(k, 0.0), c(q, 0.0), r).unwrap();
        prop_assume!(!s.at_resonance);
        prop_assert!((s.value.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn count_zeros_of_polynomial(a in 1.1f64..1.9, b in -0.9f64..-0.1, e in 2.1f64..2.9) {
        let rect = KRect::new(1.0, 2.0, -1.0, 0.0).unwrap();
        let n = count_zeros(|k| Ok((k - c(a, b)).ln() + (k - c(e, b)).ln() + (k - c(a, -b)).ln()), &rect).unwrap();
        prop_assert_eq!(n, 1);
    }
}
