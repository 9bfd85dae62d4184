use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use foldylax::harness::{run_task, write_text, RunConfig};
use foldylax::Error;

/// Multiple scattering of scalar waves by random point scatterers.
#[derive(Parser, Debug)]
#[command(name = "foldylax", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Master seed for configurations and walkers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output CSV path (stdout when absent); images go next to it as .pgm.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat `key = value` file; an earlier output file also works.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Extra `key=value` settings.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct MediumArgs {
    /// Dimension (1, 2 or 3).
    #[arg(long, visible_alias = "dim", allow_hyphen_values = true)]
    d: Option<String>,
    /// Number of scatterers.
    #[arg(long, visible_alias = "num", allow_hyphen_values = true)]
    n: Option<String>,
    /// Ball radius in ς (default: unit density).
    #[arg(long, allow_hyphen_values = true)]
    radius: Option<String>,
    /// `max` or `hardsphere:<alpha>`.
    #[arg(long)]
    model: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the task named in the config file.
    Run,
    /// Zeros of H+_ν: seeds and refined roots.
    HankelZeros {
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
    },
    /// Ensemble-averaged resonance density in the complex k-plane.
    ResonanceMap {
        #[command(flatten)]
        medium: MediumArgs,
        /// remin,remax,immin,immax
        #[arg(long, allow_hyphen_values = true)]
        k_window: Option<String>,
        /// NXxNY
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        configs: Option<String>,
    },
    /// Roots of the effective-medium resonance equation.
    EffectiveResonances {
        #[command(flatten)]
        medium: MediumArgs,
        #[arg(long)]
        ell_max: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k_max: Option<String>,
    },
    /// |ψ|² on a planar grid for one configuration.
    Wavefield {
        #[command(flatten)]
        medium: MediumArgs,
        /// re or re,im
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// `point[:x,y,z]` or `plane[:dx,dy,dz]`
        #[arg(long, allow_hyphen_values = true)]
        source: Option<String>,
        #[arg(long)]
        grid: Option<String>,
        /// xmin,xmax,ymin,ymax
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Configuration index.
        #[arg(long)]
        config_index: Option<String>,
    },
    /// Binned ensemble statistics of a centred point source.
    RadialProfile {
        #[command(flatten)]
        medium: MediumArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// intensity or re
        #[arg(long)]
        quantity: Option<String>,
        #[arg(long)]
        configs: Option<String>,
        #[arg(long)]
        bins: Option<String>,
        #[arg(long)]
        angles: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r_max: Option<String>,
    },
    /// Diffusion eigenmodes and resonance band depths of the ball.
    DiffusionModes {
        #[command(flatten)]
        medium: MediumArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lscat: Option<String>,
        #[arg(long)]
        count: Option<String>,
    },
    /// Monte Carlo walkers of the linear Boltzmann equation.
    BoltzmannMc {
        #[arg(long)]
        d: Option<String>,
        /// Ball radius, or `inf` for an infinite medium.
        #[arg(long)]
        radius: Option<String>,
        #[arg(long)]
        lscat: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        walkers: Option<String>,
        #[arg(long)]
        t_max: Option<String>,
        #[arg(long)]
        t_steps: Option<String>,
    },
}

fn put(cfg: &mut RunConfig, key: &str, v: Option<String>) {
    if let Some(v) = v {
        cfg.set(key, v);
    }
}

fn put_medium(cfg: &mut RunConfig, m: MediumArgs) {
    put(cfg, "d", m.d);
    put(cfg, "n", m.n);
    put(cfg, "radius", m.radius);
    put(cfg, "model", m.model);
}

fn flags(cli: Cli) -> Result<(RunConfig, Option<PathBuf>), Error> {
    let mut cfg = RunConfig::new();
    let task = match cli.command {
        Command::Run => None,
        Command::HankelZeros { nu } => {
            put(&mut cfg, "nu", nu);
            Some("hankel-zeros")
        }
        Command::ResonanceMap { medium, k_window, grid, configs } => {
            put_medium(&mut cfg, medium);
            put(&mut cfg, "k-window", k_window);
            put(&mut cfg, "grid", grid);
            put(&mut cfg, "configs", configs);
            Some("resonance-map")
        }
        Command::EffectiveResonances { medium, ell_max, k_max } => {
            put_medium(&mut cfg, medium);
            put(&mut cfg, "ell-max", ell_max);
            put(&mut cfg, "k-max", k_max);
            Some("effective-resonances")
        }
        Command::Wavefield { medium, k, source, grid, window, config_index } => {
            put_medium(&mut cfg, medium);
            put(&mut cfg, "k", k);
            put(&mut cfg, "source", source);
            put(&mut cfg, "grid", grid);
            put(&mut cfg, "window", window);
            put(&mut cfg, "config-index", config_index);
            Some("wavefield")
        }
        Command::RadialProfile { medium, k, quantity, configs, bins, angles, r_max } => {
            put_medium(&mut cfg, medium);
            put(&mut cfg, "k", k);
            put(&mut cfg, "quantity", quantity);
            put(&mut cfg, "configs", configs);
            put(&mut cfg, "bins", bins);
            put(&mut cfg, "angles", angles);
            put(&mut cfg, "r-max", r_max);
            Some("radial-profile")
        }
        Command::DiffusionModes { medium, k, lscat, count } => {
            put_medium(&mut cfg, medium);
            put(&mut cfg, "k", k);
            put(&mut cfg, "lscat", lscat);
            put(&mut cfg, "count", count);
            Some("diffusion-modes")
        }
        Command::BoltzmannMc { d, radius, lscat, v, walkers, t_max, t_steps } => {
            put(&mut cfg, "d", d);
            put(&mut cfg, "radius", radius);
            put(&mut cfg, "lscat", lscat);
            put(&mut cfg, "v", v);
            put(&mut cfg, "walkers", walkers);
            put(&mut cfg, "t-max", t_max);
            put(&mut cfg, "t-steps", t_steps);
            Some("boltzmann-mc")
        }
    };
    if let Some(t) = task {
        cfg.set("task", t);
    }
    for kv in cli.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got '{kv}'")))?;
        cfg.set(k, v.trim());
    }
    if let Some(s) = cli.seed {
        cfg.set("seed", s.to_string());
    }
    cfg.out = cli.out;
    cfg.threads = cli.threads;
    Ok((cfg, cli.config))
}

fn run(cli: Cli) -> Result<(), Error> {
    let (flag_cfg, config_path) = flags(cli)?;
    let mut cfg = match config_path {
        Some(p) => RunConfig::parse_text(&std::fs::read_to_string(&p)?)?,
        None => RunConfig::new(),
    };
    cfg.merge(flag_cfg);
    let threads = cfg.threads;
    let output = match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| run_task(&mut cfg))?
        }
        None => run_task(&mut cfg)?,
    };
    match &cfg.out {
        Some(path) => {
            write_text(path, &output.csv)?;
            if let Some(pgm) = &output.pgm {
                write_text(&path.with_extension("pgm"), pgm)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(output.csv.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error kind={} message={:?}", e.kind(), e.to_string());
            ExitCode::from(if e.kind() == "config" { 2 } else { 1 })
        }
    }
}
