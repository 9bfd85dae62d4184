use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pointfield::{sample_direction, stream_rng, Point};

const CHUNK: usize = 1024;

/// Radial histogram of surviving walkers at one grid time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramSpec {
    pub time_index: usize,
    pub bins: usize,
    pub r_max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McConfig {
    pub d: usize,
    /// Absorbing ball radius; `None` for an infinite medium.
    pub radius: Option<f64>,
    /// Mean free path; `f64::INFINITY` for free flight.
    pub lscat: f64,
    pub v: f64,
    pub r0: Point,
    pub num_walkers: usize,
    /// Increasing sample times.
    pub t_grid: Vec<f64>,
    pub seed: u64,
    pub histogram: Option<HistogramSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McResult {
    pub t_grid: Vec<f64>,
    /// Walkers still inside at each grid time.
    pub survival: Vec<u64>,
    /// Mean |x(t) − r0|² over survivors (NaN when none).
    pub msd: Vec<f64>,
    /// Time rate from the survival tail (see [`fit_escape_rate`]).
    pub escape_rate: Option<f64>,
    pub histogram: Option<Vec<u64>>,
}

#[derive(Clone)]
struct Acc {
    survival: Vec<u64>,
    sq: Vec<f64>,
    hist: Vec<u64>,
}

impl Acc {
    fn new(nt: usize, bins: usize) -> Self {
        Self { survival: vec![0; nt], sq: vec![0.0; nt], hist: vec![0; bins] }
    }

    fn merge(mut self, o: &Acc) -> Self {
        for (a, b) in self.survival.iter_mut().zip(&o.survival) {
            *a += b;
        }
        for (a, b) in self.sq.iter_mut().zip(&o.sq) {
            *a += b;
        }
        for (a, b) in self.hist.iter_mut().zip(&o.hist) {
            *a += b;
        }
        self
    }
}

fn dot(a: &Point, b: &Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn walk(cfg: &McConfig, index: u64, acc: &mut Acc) {
    let mut rng = stream_rng(cfg.seed, index);
    let nt = cfg.t_grid.len();
    let t_end = cfg.t_grid[nt - 1];
    let mut x = cfg.r0;
    let mut t = 0.0;
    let mut next = 0;
    while next < nt {
        let u = sample_direction(&mut rng, cfg.d);
        let len = if cfg.lscat.is_finite() {
            let e: f64 = rng.sample(Exp1);
            e * cfg.lscat
        } else {
            f64::INFINITY
        };
        let mut flight = len;
        let mut exits = false;
        if let Some(r) = cfg.radius {
            let b = dot(&x, &u);
            let c = dot(&x, &x) - r * r;
            let s = -b + (b * b - c).max(0.0).sqrt();
            if s < flight {
                flight = s;
                exits = true;
            }
        }
        let t_stop = t + flight / cfg.v;
        while next < nt && cfg.t_grid[next] < t_stop {
            let s = cfg.v * (cfg.t_grid[next] - t);
            let p = [x[0] + s * u[0], x[1] + s * u[1], x[2] + s * u[2]];
            let dp = [p[0] - cfg.r0[0], p[1] - cfg.r0[1], p[2] - cfg.r0[2]];
            acc.survival[next] += 1;
            acc.sq[next] += dot(&dp, &dp);
            if let Some(h) = &cfg.histogram {
                if h.time_index == next {
                    let rr = dot(&p, &p).sqrt();
                    let bin = (rr / h.r_max * h.bins as f64) as usize;
                    if bin < h.bins {
                        acc.hist[bin] += 1;
                    }
                }
            }
            next += 1;
        }
        if exits || !flight.is_finite() || t_stop > t_end {
            break;
        }
        x = [x[0] + flight * u[0], x[1] + flight * u[1], x[2] + flight * u[2]];
        t = t_stop;
    }
}

/// Event-driven walkers of the linear Boltzmann equation with isotropic
/// scattering: exponential free paths of mean lscat at speed v, absorbed on
/// leaving the ball. Walker i draws from stream i of `seed`; the reduction
/// runs over fixed chunks in index order, so results do not depend on the
/// thread count.
pub fn mc_boltzmann(cfg: &McConfig) -> Result<McResult> {
    if !(1..=3).contains(&cfg.d) {
        return Err(Error::domain(format!("dimension {} not supported", cfg.d)));
    }
    if !(cfg.lscat > 0.0 && cfg.v > 0.0) {
        return Err(Error::domain("lscat and v must be positive"));
    }
    if cfg.t_grid.is_empty() || cfg.t_grid.windows(2).any(|w| w[1] <= w[0]) || cfg.t_grid[0] < 0.0 {
        return Err(Error::domain("time grid must be non-empty, non-negative and increasing"));
    }
    if let Some(r) = cfg.radius {
        if !(r > 0.0) || crate::pointfield::norm(&cfg.r0) >= r {
            return Err(Error::domain("walkers must start inside the ball"));
        }
    }
    if let Some(h) = &cfg.histogram {
        if h.time_index >= cfg.t_grid.len() || h.bins == 0 || !(h.r_max > 0.0) {
            return Err(Error::domain("invalid histogram specification"));
        }
    }
    let nt = cfg.t_grid.len();
    let bins = cfg.histogram.map_or(0, |h| h.bins);
    let chunks = cfg.num_walkers.div_ceil(CHUNK);
    let partial: Vec<Acc> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Acc::new(nt, bins);
            let end = ((c + 1) * CHUNK).min(cfg.num_walkers);
            for i in c * CHUNK..end {
                walk(cfg, i as u64, &mut acc);
            }
            acc
        })
        .collect();
    let total = partial.iter().fold(Acc::new(nt, bins), |a, b| a.merge(b));
    let msd = total
        .sq
        .iter()
        .zip(&total.survival)
        .map(|(s, &n)| if n > 0 { s / n as f64 } else { f64::NAN })
        .collect();
    let escape_rate = if cfg.radius.is_some() { fit_escape_rate(&cfg.t_grid, &total.survival) } else { None };
    Ok(McResult {
        t_grid: cfg.t_grid.clone(),
        survival: total.survival,
        msd,
        escape_rate,
        histogram: cfg.histogram.map(|_| total.hist),
    })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len() as f64;
    if xs.len() < 3 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Decay rate of ln S(t) over the last decade of survivors above 100
/// (100 ≤ S ≤ 1000); `None` with fewer than three points in the window.
pub fn fit_escape_rate(t_grid: &[f64], survival: &[u64]) -> Option<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = t_grid
        .iter()
        .zip(survival)
        .filter(|(_, &s)| (100..=1000).contains(&s))
        .map(|(&t, &s)| (t, (s as f64).ln()))
        .unzip();
    linear_fit(&xs, &ys).map(|(s, _)| -s)
}

/// Least-squares slope of msd(t) for t ≥ t_min.
pub fn fit_msd_slope(t_grid: &[f64], msd: &[f64], t_min: f64) -> Option<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = t_grid
        .iter()
        .zip(msd)
        .filter(|(&t, m)| t >= t_min && m.is_finite())
        .map(|(&t, &m)| (t, m))
        .unzip();
    linear_fit(&xs, &ys).map(|(s, _)| s)
}

/// Exact msd of the isotropic persistent walk in an infinite medium:
/// 2ℓvt − 2ℓ²(1 − e^{−vt/ℓ}).
pub fn persistent_walk_msd(lscat: f64, v: f64, t: f64) -> f64 {
    2.0 * lscat * v * t + 2.0 * lscat * lscat * (-v * t / lscat).exp_m1()
}
