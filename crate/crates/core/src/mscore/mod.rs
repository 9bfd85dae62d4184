//! The Foldy-Lax multiple-scattering problem for point scatterers.
//!
//! M_ii = 1/F(k), M_ij = −G+(k, |x_i − x_j|); the amplitudes solve M a = φ(x)
//! and the wave is ψ(r) = φ(r) + Σ_i a_i G+(k, |r − x_i|).

mod lu;

pub use lu::Lu;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::green::{green_plus, ComplexK};
use crate::pointfield::{distance, Configuration, Point};
use crate::scatter::{amplitude, ScatteringModel};

/// Field points closer than this to a scatterer (or point source) are masked.
pub const EXCLUSION_RADIUS: f64 = 1e-3;

/// Pivot ratio below which a solve is flagged as near a resonance.
pub const NEAR_RESONANCE: f64 = 1e-12;

/// Dense symmetric multiple-scattering matrix at one wavenumber.
#[derive(Clone, Debug)]
pub struct MSMatrix {
    pub n: usize,
    pub d: usize,
    pub k: ComplexK,
    pub positions: Vec<Point>,
    /// Row-major entries.
    pub entries: Vec<Complex64>,
}

impl MSMatrix {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn factor(&self) -> Result<Lu> {
        Lu::factor(self.n, &self.entries)
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

pub fn build_matrix(config: &Configuration, model: &ScatteringModel, k: ComplexK) -> Result<MSMatrix> {
    let n = config.len();
    let d = config.d;
    let inv_f = 1.0 / amplitude(model, d, k)?;
    let pos = &config.positions;
    let upper: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| {
                    let r = distance(&pos[i], &pos[j]);
                    if r == 0.0 {
                        return Err(Error::Degenerate(i, j));
                    }
                    Ok(-green_plus(d, k, r)?)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, row) in upper.iter().enumerate() {
        entries[i * n + i] = inv_f;
        for (off, &v) in row.iter().enumerate() {
            let j = i + 1 + off;
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    Ok(MSMatrix { n, d, k, positions: pos.clone(), entries })
}

/// Incident wave.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WaveSource {
    /// e^{ik û·r}; the direction is normalised on use.
    PlaneWave { direction: Point },
    /// G+(k, |r − r0|).
    PointSource { r0: Point },
}

impl WaveSource {
    pub fn eval(&self, d: usize, k: ComplexK, r: &Point) -> Result<Complex64> {
        match self {
            WaveSource::PlaneWave { direction } => {
                let nrm = crate::pointfield::norm(direction);
                if nrm == 0.0 {
                    return Err(Error::Config("plane-wave direction is zero".into()));
                }
                let dot = (direction[0] * r[0] + direction[1] * r[1] + direction[2] * r[2]) / nrm;
                Ok((Complex64::new(0.0, 1.0) * k * dot).exp())
            }
            WaveSource::PointSource { r0 } => green_plus(d, k, distance(r, r0)),
        }
    }

    fn masks(&self, d: usize, r: &Point) -> bool {
        match self {
            WaveSource::PointSource { r0 } => d >= 2 && distance(r, r0) < EXCLUSION_RADIUS,
            WaveSource::PlaneWave { .. } => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub amplitudes: Vec<Complex64>,
    pub logdet: Complex64,
    pub residual: f64,
    pub near_resonance: bool,
    pub pivot_ratio: f64,
}

/// Solve M a = φ(x) for one source.
pub fn solve(m: &MSMatrix, source: &WaveSource) -> Result<SolveResult> {
    let lu = m.factor()?;
    solve_factored(m, &lu, source)
}

/// Reuse an existing factorization of `m`.
pub fn solve_factored(m: &MSMatrix, lu: &Lu, source: &WaveSource) -> Result<SolveResult> {
    let phi: Vec<Complex64> = m
        .positions
        .iter()
        .map(|x| source.eval(m.d, m.k, x))
        .collect::<Result<_>>()?;
    let a = lu.solve(&phi);
    let ma = m.apply(&a);
    let num: f64 = ma.iter().zip(&phi).map(|(u, v)| (u - v).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = phi.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let pivot_ratio = lu.pivot_ratio();
    Ok(SolveResult {
        amplitudes: a,
        logdet: lu.logdet(),
        residual: if den > 0.0 { num / den } else { num },
        near_resonance: pivot_ratio < NEAR_RESONANCE,
        pivot_ratio,
    })
}

/// ln det M(k) for one configuration.
pub fn logdet(config: &Configuration, model: &ScatteringModel, k: ComplexK) -> Result<Complex64> {
    Ok(build_matrix(config, model, k)?.factor()?.logdet())
}

/// ψ(r); `None` inside the exclusion radius of a scatterer or point source.
pub fn wavefunction(
    config: &Configuration,
    result: &SolveResult,
    source: &WaveSource,
    k: ComplexK,
    r: &Point,
) -> Result<Option<Complex64>> {
    let d = config.d;
    if source.masks(d, r) {
        return Ok(None);
    }
    let mut psi = source.eval(d, k, r)?;
    for (x, a) in config.positions.iter().zip(&result.amplitudes) {
        let dist = distance(r, x);
        if d >= 2 && dist < EXCLUSION_RADIUS {
            return Ok(None);
        }
        psi += a * green_plus(d, k, dist)?;
    }
    Ok(Some(psi))
}

/// Full Green function g(r|r0) = G+(r|r0) + Σ_ij G+(r|x_i)[M⁻¹]_ij G+(x_j|r0).
pub fn full_green(
    config: &Configuration,
    model: &ScatteringModel,
    k: ComplexK,
    r: &Point,
    r0: &Point,
) -> Result<Option<Complex64>> {
    let source = WaveSource::PointSource { r0: *r0 };
    let m = build_matrix(config, model, k)?;
    let res = solve(&m, &source)?;
    wavefunction(config, &res, &source, k, r)
}

/// Pixel grid on the (x, y) plane; row 0 is the top (largest y).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapGridSpec {
    pub nx: usize,
    pub ny: usize,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl MapGridSpec {
    pub fn pixel(&self, ix: usize, iy: usize) -> (f64, f64) {
        let hx = (self.xmax - self.xmin) / self.nx as f64;
        let hy = (self.ymax - self.ymin) / self.ny as f64;
        (self.xmin + (ix as f64 + 0.5) * hx, self.ymax - (iy as f64 + 0.5) * hy)
    }
}

/// |ψ|² per pixel (NaN where masked).
pub fn intensity_grid(
    config: &Configuration,
    model: &ScatteringModel,
    k: ComplexK,
    source: &WaveSource,
    grid: &MapGridSpec,
) -> Result<Vec<f64>> {
    let m = build_matrix(config, model, k)?;
    let res = solve(&m, source)?;
    intensity_grid_solved(config, &res, k, source, grid)
}

/// Same as [`intensity_grid`] with the amplitudes already known.
pub fn intensity_grid_solved(
    config: &Configuration,
    res: &SolveResult,
    k: ComplexK,
    source: &WaveSource,
    grid: &MapGridSpec,
) -> Result<Vec<f64>> {
    let rows: Vec<Vec<f64>> = (0..grid.ny)
        .into_par_iter()
        .map(|iy| {
            (0..grid.nx)
                .map(|ix| {
                    let (x, y) = grid.pixel(ix, iy);
                    let p = if config.d == 1 { [x, 0.0, 0.0] } else { [x, y, 0.0] };
                    Ok(match wavefunction(config, res, source, k, &p)? {
                        Some(v) => v.norm_sqr(),
                        None => f64::NAN,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.concat())
}
