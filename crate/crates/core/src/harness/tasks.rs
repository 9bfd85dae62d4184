use num_complex::Complex64;
use std::f64::consts::PI;

use super::config::{RunConfig, Task};
use super::ensemble::{run_ensemble, tree_sum};
use super::export::{fmt_num, render_pgm, CsvTable};
use super::stats::{radial_bin, EnsembleStats};
use crate::error::{Error, Result};
use crate::green::green_plus;
use crate::mscore::{build_matrix, intensity_grid, solve, wavefunction, MapGridSpec, WaveSource};
use crate::pointfield::{sample_configuration, Medium, Point};
use crate::resonance::{effective_resonances, resonance_density_map, KWindow};
use crate::scatter::{effective_wavenumber, mean_free_path};
use crate::specfun::{bessel, hankel_zero_count, hankel_zero_refine, hankel_zero_seeds, BesselKind};
use crate::transport::{
    band_depth, diffusion_modes, fit_msd_slope, mc_boltzmann, McConfig, RadiusForm, StationaryProfile,
};

/// Text produced by a task: the CSV and, for image tasks, a graymap.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskOutput {
    pub csv: String,
    pub pgm: Option<String>,
}

pub fn run_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let task = cfg.task()?;
    cfg.get_or("seed", 0u64)?;
    match task {
        Task::HankelZeros => hankel_task(cfg),
        Task::ResonanceMap => resonance_map_task(cfg),
        Task::EffectiveResonances => effective_resonances_task(cfg),
        Task::Wavefield => wavefield_task(cfg),
        Task::RadialProfile => radial_profile_task(cfg),
        Task::DiffusionModes => diffusion_modes_task(cfg),
        Task::BoltzmannMc => boltzmann_task(cfg),
    }
}

fn hankel_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let nu: f64 = cfg.get_or("nu", 1.5)?;
    let mut t = CsvTable::new(cfg.header_lines(), &["seed_re", "seed_im", "zero_re", "zero_im", "residual"]);
    if hankel_zero_count(nu) == 0 {
        t.header.push(format!("## zeros=0 (H+ of order {nu} has none)"));
    }
    for s in hankel_zero_seeds(nu) {
        let (z, res) = match hankel_zero_refine(nu, s) {
            Ok(z) => (z, bessel(BesselKind::HPlus, nu, z)?.norm()),
            Err(_) => (Complex64::new(f64::NAN, f64::NAN), f64::NAN),
        };
        t.rows.push(vec![s.re, s.im, z.re, z.im, res]);
    }
    Ok(TaskOutput { csv: t.render(), pgm: None })
}

fn resonance_map_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let medium = cfg.medium()?;
    let w = cfg.list_or("k-window", "1,5,-1.5,0")?;
    if w.len() != 4 {
        return Err(Error::Config("k-window needs remin,remax,immin,immax".into()));
    }
    let (nx, ny) = cfg.grid_or("grid", "100x50")?;
    let configs: usize = cfg.get_or("configs", 1)?;
    let window = KWindow::new(w[0], w[1], w[2], w[3], nx, ny)?;
    let map = resonance_density_map(&medium, &window, configs)?;
    let header = cfg.header_lines();
    let mut t = CsvTable::new(header.clone(), &["re", "im", "density"]);
    for iy in 0..ny {
        for ix in 0..nx {
            let k = window.node(ix as isize, iy as isize);
            t.rows.push(vec![k.re, k.im, map.at(ix, iy)]);
        }
    }
    let pgm = render_pgm(nx, ny, &map.density, &header)?;
    Ok(TaskOutput { csv: t.render(), pgm: Some(pgm) })
}

fn effective_resonances_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let medium = cfg.medium()?;
    let ell_max: usize = cfg.get_or("ell-max", 2)?;
    let k_max: f64 = cfg.get_or("k-max", 3.0)?;
    let mut t = CsvTable::new(cfg.header_lines(), &["ell", "re", "im", "residual"]);
    for ell in 0..=ell_max {
        let res = effective_resonances(&medium, ell, k_max)?;
        t.header.push(format!("## dropped_seeds_ell{ell}={}", res.dropped.len()));
        for r in res.roots {
            t.rows.push(vec![ell as f64, r.k.re, r.k.im, r.residual]);
        }
    }
    Ok(TaskOutput { csv: t.render(), pgm: None })
}

fn parse_point(s: &str) -> Option<Point> {
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    if v.is_empty() || v.len() > 3 {
        return None;
    }
    let mut p = [0.0; 3];
    p[..v.len()].copy_from_slice(&v);
    Some(p)
}

/// `point[:x,y,z]` (default origin) or `plane[:dx,dy,dz]` (default +x).
pub fn parse_source(s: &str) -> Result<WaveSource> {
    let (kind, arg) = match s.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a)),
        None => (s.trim(), None),
    };
    let bad = || Error::Config(format!("bad source '{s}' (point[:x,y,z] or plane[:dx,dy,dz])"));
    let point = |default: Point| -> Result<Point> { arg.map_or(Ok(default), |a| parse_point(a).ok_or_else(bad)) };
    match kind {
        "point" => Ok(WaveSource::PointSource { r0: point([0.0; 3])? }),
        "plane" => Ok(WaveSource::PlaneWave { direction: point([1.0, 0.0, 0.0])? }),
        _ => Err(bad()),
    }
}

fn source_from(cfg: &mut RunConfig) -> Result<WaveSource> {
    parse_source(&cfg.get_or_text("source", "point")?)
}

fn wavefield_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let medium = cfg.medium()?;
    let k = cfg.complex_or("k", "6")?;
    let source = source_from(cfg)?;
    let (nx, ny) = cfg.grid_or("grid", "200x200")?;
    let r = 1.2 * medium.radius;
    let ext = cfg.list_or("window", &format!("{},{},{},{}", -r, r, -r, r))?;
    if ext.len() != 4 || !(ext[1] > ext[0] && ext[3] > ext[2]) {
        return Err(Error::Config("window needs xmin,xmax,ymin,ymax with xmax > xmin, ymax > ymin".into()));
    }
    let index: u64 = cfg.get_or("config-index", 0)?;
    let config = sample_configuration(&medium, index);
    let grid = MapGridSpec { nx, ny, xmin: ext[0], xmax: ext[1], ymin: ext[2], ymax: ext[3] };
    let data = intensity_grid(&config, &medium.model, k, &source, &grid)?;
    let header = cfg.header_lines();
    let mut t = CsvTable::new(header.clone(), &["x", "y", "intensity"]);
    for iy in 0..ny {
        for ix in 0..nx {
            let (x, y) = grid.pixel(ix, iy);
            t.rows.push(vec![x, y, data[iy * nx + ix]]);
        }
    }
    Ok(TaskOutput { csv: t.render(), pgm: Some(render_pgm(nx, ny, &data, &header)?) })
}

/// Sampled quantity of a radial profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// |ψ|².
    Intensity,
    /// Re ψ.
    RealPart,
}

/// Radial statistics of a point source at the centre of the ball.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    pub stats: EnsembleStats,
    /// Bin mean of the complex field ψ.
    pub mean_field: Vec<Complex64>,
    /// Effective-medium curve: Re G+(κ, r) or |G+(κ, r)|².
    pub coherent: Vec<f64>,
    /// Stationary diffusion profile (outer continuation beyond R).
    pub diffusion: Vec<f64>,
    pub kappa: Complex64,
    pub lscat: f64,
}

fn probe_directions(d: usize, count: usize) -> Vec<Point> {
    match d {
        1 => vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
        2 => (0..count)
            .map(|a| {
                let t = 2.0 * PI * (a as f64 + 0.5) / count as f64;
                [t.cos(), t.sin(), 0.0]
            })
            .collect(),
        _ => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|a| {
                    let z = 1.0 - 2.0 * (a as f64 + 0.5) / count as f64;
                    let s = (1.0 - z * z).sqrt();
                    let t = golden * a as f64;
                    [s * t.cos(), s * t.sin(), z]
                })
                .collect()
        }
    }
}

/// Field samples at bin centres along `angles` fixed directions, for
/// configurations 0..configs of `medium`, binned over [0, r_max].
pub fn radial_profile(
    medium: &Medium,
    k: f64,
    quantity: Quantity,
    configs: usize,
    bins: usize,
    angles: usize,
    r_max: f64,
) -> Result<RadialProfile> {
    let d = medium.d;
    let kc = Complex64::new(k, 0.0);
    let source = WaveSource::PointSource { r0: [0.0; 3] };
    let dirs = probe_directions(d, angles.max(1));
    let radii: Vec<f64> = (0..bins).map(|b| r_max * (b as f64 + 0.5) / bins as f64).collect();
    let per_config = run_ensemble(configs, |i| {
        let config = sample_configuration(medium, i);
        let m = build_matrix(&config, &medium.model, kc)?;
        let res = solve(&m, &source)?;
        let mut out = Vec::with_capacity(radii.len() * dirs.len());
        for &r in &radii {
            for u in &dirs {
                let p = [r * u[0], r * u[1], r * u[2]];
                if let Some(psi) = wavefunction(&config, &res, &source, kc, &p)? {
                    out.push((r, psi));
                }
            }
        }
        Ok(out)
    })?;
    let samples: Vec<(f64, Complex64)> = per_config.into_iter().flatten().collect();
    let real: Vec<(f64, f64)> = samples
        .iter()
        .map(|(r, z)| {
            (*r, match quantity {
                Quantity::Intensity => z.norm_sqr(),
                Quantity::RealPart => z.re,
            })
        })
        .collect();
    let stats = radial_bin(&real, bins, r_max)?;
    let mut re_bins: Vec<Vec<f64>> = vec![Vec::new(); bins];
    let mut im_bins: Vec<Vec<f64>> = vec![Vec::new(); bins];
    for (r, z) in &samples {
        let b = ((r / r_max * bins as f64) as usize).min(bins - 1);
        re_bins[b].push(z.re);
        im_bins[b].push(z.im);
    }
    let mean_field = re_bins
        .iter()
        .zip(&im_bins)
        .map(|(re, im)| {
            let n = re.len().max(1) as f64;
            Complex64::new(tree_sum(re) / n, tree_sum(im) / n)
        })
        .collect();
    let n = medium.density();
    let lscat = mean_free_path(n, &medium.model, d, k)?;
    let kappa = effective_wavenumber(n, &medium.model, d, kc)?.value;
    let profile = StationaryProfile::green_source(d, medium.radius, lscat, k, RadiusForm::Exact)?;
    let centers = stats.centers();
    let coherent = centers
        .iter()
        .map(|&r| {
            let g = green_plus(d, kappa, r)?;
            Ok(match quantity {
                Quantity::Intensity => g.norm_sqr(),
                Quantity::RealPart => g.re,
            })
        })
        .collect::<Result<_>>()?;
    let diffusion = centers
        .iter()
        .map(|&r| if r <= medium.radius { profile.at(r) } else { profile.outside(r) })
        .collect::<Result<_>>()?;
    Ok(RadialProfile { stats, mean_field, coherent, diffusion, kappa, lscat })
}

fn radial_profile_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let medium = cfg.medium()?;
    let k: f64 = cfg.get_or("k", 6.0)?;
    let quantity = match cfg.get_or_text("quantity", "intensity")?.as_str() {
        "intensity" => Quantity::Intensity,
        "re" => Quantity::RealPart,
        q => return Err(Error::Config(format!("unknown quantity '{q}' (intensity or re)"))),
    };
    let configs: usize = cfg.get_or("configs", 16)?;
    let bins: usize = cfg.get_or("bins", 64)?;
    let angles: usize = cfg.get_or("angles", 16)?;
    let r_max: f64 = cfg.get_or("r-max", medium.radius)?;
    let p = radial_profile(&medium, k, quantity, configs, bins, angles, r_max)?;
    let mut t = CsvTable::new(
        cfg.header_lines(),
        &["r", "mean", "q1", "q3", "count", "mean_re", "mean_im", "coherent", "diffusion"],
    );
    t.header.push(format!("## kappa={},{}", fmt_num(p.kappa.re), fmt_num(p.kappa.im)));
    t.header.push(format!("## lscat={}", fmt_num(p.lscat)));
    let s = &p.stats;
    for (b, r) in s.centers().into_iter().enumerate() {
        t.rows.push(vec![
            r,
            s.mean[b],
            s.q1[b],
            s.q3[b],
            s.count[b] as f64,
            p.mean_field[b].re,
            p.mean_field[b].im,
            p.coherent[b],
            p.diffusion[b],
        ]);
    }
    Ok(TaskOutput { csv: t.render(), pgm: None })
}

fn diffusion_modes_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let medium = cfg.medium()?;
    let lscat = match cfg.get_opt::<f64>("lscat")? {
        Some(l) => l,
        None => {
            let k: f64 = cfg.get_or("k", 6.0)?;
            let l = mean_free_path(medium.density(), &medium.model, medium.d, k)?;
            cfg.set("lscat", format!("{l:.17e}"));
            l
        }
    };
    let count: usize = cfg.get_or("count", 4)?;
    let spec = diffusion_modes(medium.d, medium.radius, lscat, count)?;
    let mut t = CsvTable::new(
        cfg.header_lines(),
        &["n", "beta", "gamma", "band_depth", "beta_robin", "gamma_robin"],
    );
    t.header.push(format!("## r_eff={}", fmt_num(spec.r_eff)));
    t.header.push("## modes n>=2 are reported only; they are not compared with resonance maps".into());
    for m in &spec.modes {
        t.rows.push(vec![m.n as f64, m.beta, m.gamma, band_depth(&spec, m.n)?, m.beta_robin, m.gamma_robin]);
    }
    Ok(TaskOutput { csv: t.render(), pgm: None })
}

fn boltzmann_task(cfg: &mut RunConfig) -> Result<TaskOutput> {
    let d: usize = cfg.get_or("d", 2)?;
    let radius: f64 = cfg.get_or("radius", 12.6)?;
    let lscat: f64 = cfg.get_or("lscat", 1.5)?;
    let v: f64 = cfg.get_or("v", 1.0)?;
    let walkers: usize = cfg.get_or("walkers", 100_000)?;
    let t_max: f64 = cfg.get_or("t-max", 400.0)?;
    let steps: usize = cfg.get_or("t-steps", 200)?;
    let seed: u64 = cfg.get_or("seed", 0)?;
    if steps == 0 || !(t_max > 0.0) {
        return Err(Error::Config("t-max and t-steps must be positive".into()));
    }
    let t_grid: Vec<f64> = (1..=steps).map(|i| t_max * i as f64 / steps as f64).collect();
    let mc = McConfig {
        d,
        radius: radius.is_finite().then_some(radius),
        lscat,
        v,
        r0: [0.0; 3],
        num_walkers: walkers,
        t_grid,
        seed,
        histogram: None,
    };
    let res = mc_boltzmann(&mc)?;
    let mut t = CsvTable::new(cfg.header_lines(), &["t", "survival", "msd"]);
    match res.escape_rate {
        Some(r) => t.header.push(format!("## escape_rate={}", fmt_num(r))),
        None if radius.is_finite() => t.header.push("## escape_rate=none (fit window empty)".into()),
        None => {}
    }
    if radius.is_finite() {
        let spec = diffusion_modes(d, radius, lscat, 1)?;
        t.header.push(format!("## diffusion_rate={}", fmt_num(-spec.modes[0].gamma * v)));
    } else if let Some(s) = fit_msd_slope(&res.t_grid, &res.msd, 20.0 * lscat / v) {
        t.header.push(format!("## msd_slope={}", fmt_num(s)));
        t.header.push(format!("## msd_slope_theory={}", fmt_num(2.0 * lscat * v)));
    }
    for i in 0..res.t_grid.len() {
        t.rows.push(vec![res.t_grid[i], res.survival[i] as f64, res.msd[i]]);
    }
    Ok(TaskOutput { csv: t.render(), pgm: None })
}
