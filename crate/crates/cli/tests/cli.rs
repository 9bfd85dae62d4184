use std::path::PathBuf;
use std::process::{Command, Output};

fn foldylax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foldylax")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("foldylax-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn data_rows(text: &str) -> usize {
    text.lines().filter(|l| !l.starts_with('#')).count().saturating_sub(1)
}

#[test]
fn csv_to_stdout_with_header() {
    let out = foldylax(&["hankel-zeros", "--nu", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "# task=hankel-zeros"));
    assert!(text.lines().any(|l| l.starts_with("# seed=")));
    assert!(text.lines().any(|l| l == "seed_re,seed_im,zero_re,zero_im,residual"));
    assert_eq!(data_rows(&text), 5);
}

#[test]
fn domain_error_line_and_exit_code() {
    let out = foldylax(&["resonance-map", "--dim", "2", "--num", "3", "--k-window", "-1,1,-1,-0.1", "--grid", "8x8"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error kind=domain message="), "{err}");
}

#[test]
fn config_error_exit_code() {
    let out = foldylax(&["diffusion-modes", "--model", "sphere"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error kind=config"));
}

#[test]
fn flags_override_config_file() {
    let dir = scratch("override");
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "task = hankel-zeros\nnu = 2\n").unwrap();
    let out = foldylax(&["--config", cfg.to_str().unwrap(), "run"]);
    assert_eq!(data_rows(&String::from_utf8(out.stdout).unwrap()), 2);
    let out = foldylax(&["--config", cfg.to_str().unwrap(), "hankel-zeros", "--nu", "5"]);
    assert_eq!(data_rows(&String::from_utf8(out.stdout).unwrap()), 5);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn output_regenerates_from_its_header() {
    let dir = scratch("regen");
    let first = dir.join("first.csv");
    let second = dir.join("second.csv");
    let out = foldylax(&[
        "resonance-map", "--dim", "3", "--num", "8", "--k-window", "1,3,-1,0", "--grid", "12x6", "--seed", "3", "--out",
        first.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(first.with_extension("pgm").exists());
    let out = foldylax(&["--config", first.to_str().unwrap(), "--out", second.to_str().unwrap(), "run"]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    assert_eq!(std::fs::read(first.with_extension("pgm")).unwrap(), std::fs::read(second.with_extension("pgm")).unwrap());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn set_flag_and_wavefield_options() {
    let out = foldylax(&[
        "wavefield", "--dim", "2", "--num", "10", "--k", "3,0", "--source", "point:0.5,0", "--grid", "6x4", "--window",
        "-2,2,-1,1", "--config-index", "1", "--set", "model=hardsphere:0.1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "# model=hardsphere:0.1"));
    assert!(text.lines().any(|l| l == "# config-index=1"));
    assert_eq!(data_rows(&text), 24);
}
