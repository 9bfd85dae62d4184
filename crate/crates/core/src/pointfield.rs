//! Uniform random configurations of point scatterers in a d-ball.
//!
//! With ς as the unit length the ball satisfies V_d R^d = N, so the
//! scatterer density is one per ς^d.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::io::Write;

use crate::error::{Error, Result};
use crate::scatter::ScatteringModel;
use crate::specfun::{ball_volume, ln_gamma};

/// A point of R^d stored in three slots; unused coordinates are zero.
pub type Point = [f64; 3];

pub fn distance(a: &Point, b: &Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

pub fn norm(a: &Point) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

#[derive(Clone, Debug)]
pub struct Medium {
    pub d: usize,
    pub num: usize,
    pub radius: f64,
    pub model: ScatteringModel,
    pub master_seed: u64,
}

impl Medium {
    pub fn new(d: usize, num: usize, radius: f64, model: ScatteringModel, master_seed: u64) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::Config(format!("dimension {d} is not supported for media (1..=3)")));
        }
        if !(radius > 0.0) {
            return Err(Error::Config("ball radius must be positive".into()));
        }
        Ok(Self { d, num, radius, model, master_seed })
    }

    /// Ball radius chosen so that ς = 1.
    pub fn unit_density(d: usize, num: usize, model: ScatteringModel, master_seed: u64) -> Result<Self> {
        Self::new(d, num, radius_for_unit_density(d, num), model, master_seed)
    }

    pub fn volume(&self) -> f64 {
        ball_volume(self.d) * self.radius.powi(self.d as i32)
    }

    /// Scatterers per unit volume N/V.
    pub fn density(&self) -> f64 {
        self.num as f64 / self.volume()
    }

    /// Mean interscatterer distance ς = (V/N)^{1/d}.
    pub fn varsigma(&self) -> f64 {
        (self.volume() / self.num as f64).powf(1.0 / self.d as f64)
    }
}

/// R = (N/V_d)^{1/d}.
pub fn radius_for_unit_density(d: usize, num: usize) -> f64 {
    (num as f64 / ball_volume(d)).powf(1.0 / d as f64)
}

/// One realization of the disorder.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub d: usize,
    pub positions: Vec<Point>,
    pub seed_index: u64,
}

impl Configuration {
    pub fn from_positions(d: usize, positions: Vec<Point>) -> Self {
        Self { d, positions, seed_index: 0 }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Rows `x1,...,xd`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let head: Vec<String> = (1..=self.d).map(|i| format!("x{i}")).collect();
        writeln!(out, "{}", head.join(","))?;
        for p in &self.positions {
            let row: Vec<String> = p[..self.d].iter().map(|x| format!("{x:.17e}")).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for stream `index` under `master_seed`.
pub fn stream_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(master_seed ^ index))
}

/// Uniform point in the ball of radius `radius` in dimension d.
pub fn sample_ball<R: Rng>(rng: &mut R, d: usize, radius: f64) -> Point {
    let dir = sample_direction(rng, d);
    let u: f64 = rng.random();
    let r = radius * u.powf(1.0 / d as f64);
    [dir[0] * r, dir[1] * r, dir[2] * r]
}

/// Isotropic unit vector in R^d.
pub fn sample_direction<R: Rng>(rng: &mut R, d: usize) -> Point {
    loop {
        let mut p = [0.0; 3];
        for x in p.iter_mut().take(d) {
            *x = rng.sample(StandardNormal);
        }
        let n = norm(&p);
        if n > 1e-300 {
            return [p[0] / n, p[1] / n, p[2] / n];
        }
    }
}

/// i.i.d. uniform scatterers, reproducible from (master seed, index).
pub fn sample_configuration(medium: &Medium, index: u64) -> Configuration {
    let mut rng = stream_rng(medium.master_seed, index);
    let positions = (0..medium.num).map(|_| sample_ball(&mut rng, medium.d, medium.radius)).collect();
    Configuration { d: medium.d, positions, seed_index: index }
}

/// Number of distinct closed orbits visiting p of N points; None on overflow.
pub fn cycle_counts(num: u64, p: u64) -> Option<u128> {
    if p < 2 || p > num {
        return Some(0);
    }
    if p == 2 {
        return Some(num as u128 * (num as u128 - 1) / 2);
    }
    let mut falling: u128 = 1;
    for i in 0..p {
        falling = falling.checked_mul((num - i) as u128)?;
    }
    Some(falling / (2 * p as u128))
}

/// ln of [`cycle_counts`].
pub fn ln_cycle_counts(num: u64, p: u64) -> f64 {
    let n = num as f64;
    if p == 2 {
        return (n * (n - 1.0) / 2.0).ln();
    }
    ln_gamma(n + 1.0) - ln_gamma(n - p as f64 + 1.0) - (2.0 * p as f64).ln()
}

/// Total number of orbits Σ_{p=2}^{N} counts(N, p).
pub fn cycle_count_total(num: u64) -> f64 {
    let exact = (2..=num).try_fold(0u128, |acc, p| acc.checked_add(cycle_counts(num, p)?));
    match exact {
        Some(t) => t as f64,
        None => ln_cycle_count_total(num).exp(),
    }
}

/// ln of [`cycle_count_total`], stable for large N.
pub fn ln_cycle_count_total(num: u64) -> f64 {
    let logs: Vec<f64> = (2..=num).map(|p| ln_cycle_counts(num, p)).collect();
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
}
