use foldylax::pointfield::*;
use foldylax::scatter::ScatteringModel;
use proptest::prelude::*;

#[test]
fn unit_density_radius() {
    assert!((radius_for_unit_density(2, 500) - 12.6156626101008).abs() < 1e-12);
    assert!((radius_for_unit_density(3, 500) - 4.9237251092134827).abs() < 1e-12);
    assert!((radius_for_unit_density(2, 300) - 9.7720502380583984).abs() < 1e-12);
    let m = Medium::unit_density(3, 500, ScatteringModel::MaxPoint, 0).unwrap();
    assert!((m.density() - 1.0).abs() < 1e-12);
    assert!((m.varsigma() - 1.0).abs() < 1e-12);
}

#[test]
fn medium_rejects_bad_input() {
    assert!(Medium::new(4, 10, 1.0, ScatteringModel::MaxPoint, 0).is_err());
    assert!(Medium::new(2, 10, 0.0, ScatteringModel::MaxPoint, 0).is_err());
}

#[test]
fn mean_radius_of_uniform_ball() {
    for d in 1..=3 {
        let m = Medium::new(d, 100_000, 2.0, ScatteringModel::MaxPoint, 11).unwrap();
        let cfg = sample_configuration(&m, 0);
        let mean = cfg.positions.iter().map(norm).sum::<f64>() / cfg.len() as f64;
        let expect = 2.0 * d as f64 / (d as f64 + 1.0);
        assert!(((mean - expect) / expect).abs() < 0.01, "d={d}: {mean}");
        assert!(cfg.positions.iter().all(|p| norm(p) <= 2.0));
        assert!(cfg.positions.iter().all(|p| p[d..].iter().all(|&x| x == 0.0)));
    }
}

#[test]
fn sampling_is_reproducible() {
    let m = Medium::unit_density(2, 300, ScatteringModel::MaxPoint, 42).unwrap();
    let a = sample_configuration(&m, 7);
    let b = sample_configuration(&m, 7);
    assert_eq!(a, b);
    assert!(a.positions.iter().zip(&b.positions).all(|(p, q)| p.map(f64::to_bits) == q.map(f64::to_bits)));
    assert_ne!(a.positions, sample_configuration(&m, 8).positions);
}

#[test]
fn csv_export() {
    let cfg = Configuration::from_positions(2, vec![[1.0, -2.0, 0.0]]);
    let mut out = Vec::new();
    cfg.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,x2"));
    let vals: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(vals, vec![1.0, -2.0]);
}

#[test]
fn cycle_count_examples() {
    assert_eq!(cycle_counts(4, 2), Some(6));
    assert_eq!(cycle_counts(4, 3), Some(4));
    assert_eq!(cycle_counts(4, 4), Some(3));
    assert_eq!(cycle_count_total(4), 13.0);
    assert!((ln_cycle_count_total(4) - 13f64.ln()).abs() < 1e-12);
    assert_eq!(cycle_counts(100, 60), None);
}

#[test]
fn cycle_total_asymptote() {
    // (N−1)!·e/2
    let n = 200u64;
    let expect = foldylax::specfun::ln_gamma(n as f64) + 1.0 - 2f64.ln();
    assert!((ln_cycle_count_total(n) - expect).abs() < 0.01);
}

proptest! {
    #[test]
    fn ln_counts_match_exact(n in 2u64..18, p in 2u64..18) {
        prop_assume!(p <= n);
        let exact = cycle_counts(n, p).unwrap() as f64;
        prop_assert!((ln_cycle_counts(n, p) - exact.ln()).abs() < 1e-10);
    }

    #[test]
    fn directions_are_unit(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = stream_rng(seed, 0);
        let u = sample_direction(&mut rng, d);
        prop_assert!((norm(&u) - 1.0).abs() < 1e-14);
    }
}
