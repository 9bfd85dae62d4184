use foldylax::harness::*;
use foldylax::pointfield::{sample_configuration, Medium};
use foldylax::scatter::ScatteringModel;
use foldylax::{mscore, Complex64, Error};
use proptest::prelude::*;

#[test]
fn config_parsing_and_merge() {
    let text = "# task=hankel-zeros\n## note without meaning\nnu = 2.5\nSEED=4\nk_window = 1,2,-1,0\nthreads = 2\nout = x.csv\nnot a pair\n";
    let mut cfg = RunConfig::parse_text(text).unwrap();
    assert_eq!(cfg.task().unwrap(), Task::HankelZeros);
    assert_eq!(cfg.get::<f64>("nu").unwrap(), 2.5);
    assert_eq!(cfg.get::<u64>("seed").unwrap(), 4);
    assert_eq!(cfg.list_or("k-window", "0,0,0,0").unwrap(), vec![1.0, 2.0, -1.0, 0.0]);
    assert_eq!(cfg.threads, Some(2));
    assert_eq!(cfg.out.as_deref(), Some(std::path::Path::new("x.csv")));

    let mut flags = RunConfig::new();
    flags.set("nu", "7");
    cfg.merge(flags);
    assert_eq!(cfg.get::<f64>("nu").unwrap(), 7.0);

    assert_eq!(cfg.get_or("bins", 16usize).unwrap(), 16);
    assert!(cfg.header_lines().iter().any(|l| l == "# bins=16"));
    assert_eq!(cfg.grid_or("grid", "30x20").unwrap(), (30, 20));
    assert!(matches!(cfg.get::<f64>("missing"), Err(Error::Config(_))));
    cfg.set("nu", "abc");
    assert!(cfg.get::<f64>("nu").is_err());
}

#[test]
fn complex_values() {
    assert_eq!(parse_complex("1.5"), Some(Complex64::new(1.5, 0.0)));
    assert_eq!(parse_complex("1.5,-0.25"), Some(Complex64::new(1.5, -0.25)));
    assert_eq!(parse_complex("x"), None);
}

#[test]
fn medium_from_config() {
    let mut cfg = RunConfig::parse_text("d = 3\nn = 500\nmodel = hardsphere:0.1").unwrap();
    let m = cfg.medium().unwrap();
    assert_eq!((m.d, m.num), (3, 500));
    assert!((m.radius - 4.9237251092134827).abs() < 1e-12);
    assert!(matches!(m.model, ScatteringModel::HardSphere { alpha } if alpha == 0.1));
    assert!(cfg.raw("radius").is_some());
}

#[test]
fn task_names_round_trip() {
    for name in ["resonance-map", "effective-resonances", "wavefield", "radial-profile", "diffusion-modes", "boltzmann-mc", "hankel-zeros"] {
        let t: Task = name.parse().unwrap();
        assert_eq!(t.to_string(), name);
    }
    assert!("nope".parse::<Task>().is_err());
}

#[test]
fn pgm_linear_map() {
    let pgm = render_pgm(2, 2, &[0.0, 1.0, 2.0, 3.0], &["# task=test".into()]).unwrap();
    let lines: Vec<&str> = pgm.lines().collect();
    assert_eq!(lines[0], "P2");
    assert!(lines.contains(&"# task=test"));
    assert!(lines.iter().any(|l| l.starts_with("# min=0e0 max=3e0")));
    let body: Vec<&str> = lines.iter().filter(|l| !l.starts_with('#')).copied().collect();
    assert_eq!(body[1], "2 2");
    assert_eq!(body[2], "65535");
    assert_eq!(body[3], "0 21845");
    assert_eq!(body[4], "43690 65535");
    let masked = render_pgm(2, 1, &[f64::NAN, 5.0], &[]).unwrap();
    assert!(masked.lines().last().unwrap().starts_with("0 "));
    assert!(render_pgm(3, 1, &[0.0], &[]).is_err());
}

#[test]
fn csv_header_echo() {
    let mut cfg = RunConfig::parse_text("task = hankel-zeros\nnu = 1.5").unwrap();
    let out = run_task(&mut cfg).unwrap();
    let text = out.csv.clone();
    assert!(text.lines().any(|l| l.starts_with("# seed=")));
    assert!(text.lines().any(|l| l == "# task=hankel-zeros"));
    let table = CsvTable::parse(&text).unwrap();
    assert_eq!(table.rows.len(), 1);
    assert!((table.rows[0][2]).abs() < 1e-12 && (table.rows[0][3] + 1.0).abs() < 1e-12);
}

#[test]
fn output_reproduces_from_its_header() {
    let mut cfg = RunConfig::parse_text("task = diffusion-modes\nd = 2\nn = 300").unwrap();
    let first = run_task(&mut cfg).unwrap().csv;
    let mut again = RunConfig::parse_text(&first).unwrap();
    let second = run_task(&mut again).unwrap().csv;
    assert_eq!(first, second);
}

#[test]
fn radial_bin_constant_field() {
    let samples: Vec<(f64, f64)> = (0..1000).map(|i| (i as f64 * 0.01, 3.5)).collect();
    let st = radial_bin(&samples, 10, 10.0).unwrap();
    assert_eq!(st.bins(), 10);
    for b in 0..10 {
        assert_eq!((st.mean[b], st.q1[b], st.q3[b]), (3.5, 3.5, 3.5));
    }
    assert!(radial_bin(&samples, 4, 10.0).is_err());
    let sparse = radial_bin(&[(0.5, 1.0)], 8, 8.0).unwrap();
    assert!(!sparse.empty[0] && sparse.empty[1] && sparse.mean[1].is_nan());
}

#[test]
fn radial_bin_exponential_field() {
    let n = 100_000;
    let r_max = 5.0;
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let r = r_max * (i as f64 + 0.5) / n as f64;
            (r, (-r).exp())
        })
        .collect();
    let bins = 10;
    let st = radial_bin(&samples, bins, r_max).unwrap();
    for b in 0..bins {
        let (a, c) = (st.edges[b], st.edges[b + 1]);
        let exact = ((-a).exp() - (-c).exp()) / (c - a);
        assert!(((st.mean[b] - exact) / exact).abs() < 0.01);
        assert!(st.q1[b] <= st.q3[b]);
    }
}

#[test]
fn quantiles() {
    let xs = [1.0, 2.0, 3.0, 4.0];
    assert_eq!(quantile(&xs, 0.25), 1.75);
    assert_eq!(quantile(&xs, 0.75), 3.25);
    assert!(quantile(&[], 0.5).is_nan());
}

#[test]
fn ensemble_is_thread_count_independent() {
    let medium = Medium::unit_density(2, 40, ScatteringModel::MaxPoint, 123).unwrap();
    let task = |i: u64| -> foldylax::Result<f64> {
        let cfg = sample_configuration(&medium, i);
        Ok(mscore::logdet(&cfg, &medium.model, Complex64::new(2.0, -0.1))?.re)
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_ensemble(4, task)).unwrap()
    };
    let a = run(1);
    let b = run(4);
    assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
    assert_eq!(tree_sum(&a).to_bits(), tree_sum(&b).to_bits());
    let single = run_ensemble(1, task).unwrap();
    assert_eq!(single[0].to_bits(), task(0).unwrap().to_bits());
}

#[test]
fn ensemble_reports_failing_index() {
    let r = run_ensemble(6, |i| if i == 3 || i == 5 { Err(Error::domain("boom")) } else { Ok(i) });
    match r {
        Err(Error::Worker { index, .. }) => assert_eq!(index, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn ensemble_mean_of_vectors() {
    let m = ensemble_mean(&[vec![1.0, 2.0], vec![3.0, 6.0]]);
    assert_eq!(m, vec![2.0, 4.0]);
    assert_eq!(tree_sum_vec(&[vec![1.0], vec![2.0], vec![3.0]]), vec![6.0]);
}

#[test]
fn source_specs() {
    use foldylax::mscore::WaveSource;
    assert_eq!(parse_source("point").unwrap(), WaveSource::PointSource { r0: [0.0; 3] });
    assert_eq!(parse_source("point:1,2").unwrap(), WaveSource::PointSource { r0: [1.0, 2.0, 0.0] });
    assert_eq!(parse_source("plane:0,1,0").unwrap(), WaveSource::PlaneWave { direction: [0.0, 1.0, 0.0] });
    assert!(parse_source("plane:a").is_err());
    assert!(parse_source("beam").is_err());
}

proptest! {
    #[test]
    fn csv_round_trip(rows in prop::collection::vec(prop::collection::vec(-1e300f64..1e300, 3), 0..20)) {
        let mut t = CsvTable::new(vec!["# task=test".into(), "# seed=1".into()], &["a", "b", "c"]);
        t.rows = rows.clone();
        let back = CsvTable::parse(&t.render()).unwrap();
        prop_assert_eq!(&back.header, &t.header);
        prop_assert_eq!(&back.columns, &t.columns);
        for (x, y) in back.rows.iter().flatten().zip(rows.iter().flatten()) {
            prop_assert!((x - y).abs() <= 1e-12 * y.abs());
        }
    }

    #[test]
    fn tree_sum_matches_naive(xs in prop::collection::vec(-1e3f64..1e3, 0..200)) {
        let naive: f64 = xs.iter().sum();
        prop_assert!((tree_sum(&xs) - naive).abs() < 1e-9);
    }
}
