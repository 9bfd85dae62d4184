use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::specfun::sphere_area;

/// ∫_{|r'|<ρ} e^{−β|r−r'|}/(S_d|r−r'|^{d−1}) dr' for |r| = r: the mass of the
/// free transport kernel centred at r that falls inside the ball of radius ρ.
pub fn kernel_mass(d: usize, beta: f64, r: f64, rho: f64) -> Result<f64> {
    if rho <= 0.0 {
        return Ok(0.0);
    }
    let along = |s1: f64, s2: f64| -> f64 {
        if beta == 0.0 {
            s2 - s1
        } else {
            ((-beta * s1).exp() - (-beta * s2).exp()) / beta
        }
    };
    if r == 0.0 {
        return Ok(along(0.0, rho));
    }
    let inside = r < rho;
    // Chord [s1, s2] along direction cosine μ with respect to r̂.
    let chord = |mu: f64| -> f64 {
        let disc = rho * rho - r * r * (1.0 - mu * mu);
        if disc <= 0.0 {
            return 0.0;
        }
        let q = disc.sqrt();
        if inside {
            along(0.0, -r * mu + q)
        } else if mu < 0.0 {
            along(-r * mu - q, -r * mu + q)
        } else {
            0.0
        }
    };
    let tol = 1e-13;
    match d {
        1 => Ok(0.5 * (chord(1.0) + chord(-1.0))),
        2 => {
            let th0 = if inside { 0.0 } else { PI - (rho / r).min(1.0).asin() };
            Ok(integrate(|t| chord(t.cos()), th0, PI, tol, 1e-11)? / PI)
        }
        3 => {
            let mu1 = if inside { 1.0 } else { -(1.0 - (rho / r).powi(2)).max(0.0).sqrt() };
            Ok(0.5 * integrate(chord, -1.0, mu1, tol, 1e-11)?)
        }
        _ => Err(Error::domain(format!("dimension {d} not supported"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BsSource {
    /// K(r|0): a wave emitted at the centre.
    Center,
    /// Unit source density everywhere in the ball.
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BsParams {
    pub d: usize,
    /// Scatterer density n.
    pub n: f64,
    pub sigma: f64,
    pub radius: f64,
    /// Laplace variable γ ≥ 0 (1/ς).
    pub gamma: f64,
    pub source: BsSource,
    pub cells: usize,
}

impl BsParams {
    pub fn new(d: usize, n: f64, sigma: f64, radius: f64, gamma: f64, source: BsSource) -> Self {
        Self { d, n, sigma, radius, gamma, source, cells: 256 }
    }

    fn beta(&self) -> f64 {
        self.gamma + self.n * self.sigma
    }
}

/// Solution of the radial Bethe-Salpeter equation.
#[derive(Clone, Debug)]
pub struct BetheSalpeter {
    pub params: BsParams,
    /// Cell edges 0 = e_0 < … < e_M = R.
    pub edges: Vec<f64>,
    /// Cell midpoints.
    pub nodes: Vec<f64>,
    /// Cell averages of the scattered part plus source.
    pub cell_density: Vec<f64>,
    /// ρ at the nodes.
    pub density: Vec<f64>,
    pub sweeps: usize,
    pub residual: f64,
}

const MESH_STRETCH: f64 = 6.0;
const MAX_SWEEPS: usize = 200_000;
const SWEEP_TOL: f64 = 1e-12;

fn source_point(p: &BsParams, r: f64) -> f64 {
    match p.source {
        BsSource::Center => (-p.beta() * r).exp() / (sphere_area(p.d) * r.powi(p.d as i32 - 1)),
        BsSource::Uniform => {
            if r <= p.radius {
                1.0
            } else {
                0.0
            }
        }
    }
}

fn shell_volume(d: usize, a: f64, b: f64) -> f64 {
    sphere_area(d) / d as f64 * (b.powi(d as i32) - a.powi(d as i32))
}

impl BetheSalpeter {
    /// ρ(r) at any r ≥ 0 (outside the ball only the kernel term survives).
    pub fn density_at(&self, r: f64) -> Result<f64> {
        let p = &self.params;
        let ns = p.n * p.sigma;
        let mut s = 0.0;
        if ns > 0.0 {
            let mut lo = kernel_mass(p.d, p.beta(), r, self.edges[0])?;
            for (j, rho) in self.cell_density.iter().enumerate() {
                let hi = kernel_mass(p.d, p.beta(), r, self.edges[j + 1])?;
                s += (hi - lo) * rho;
                lo = hi;
            }
        }
        Ok(source_point(p, r) + ns * s)
    }
}

/// Fixed point of ρ = S + nσ·K∗ρ on a radial mesh (cells log-refined near 0),
/// solved by Neumann sweeps. The kernel is e^{−(γ+nσ)r}/(S_d r^{d−1}).
pub fn bethe_salpeter_radial(params: &BsParams) -> Result<BetheSalpeter> {
    let p = *params;
    if !(1..=3).contains(&p.d) {
        return Err(Error::domain(format!("dimension {} not supported", p.d)));
    }
    if !(p.gamma >= 0.0 && p.n >= 0.0 && p.sigma >= 0.0 && p.radius > 0.0 && p.cells >= 2) {
        return Err(Error::domain("invalid Bethe-Salpeter parameters"));
    }
    if p.beta() == 0.0 && p.source == BsSource::Center {
        return Err(Error::domain("γ + nσ must be positive"));
    }
    let m = p.cells;
    let scale = MESH_STRETCH.exp() - 1.0;
    let edges: Vec<f64> = (0..=m)
        .map(|j| p.radius * ((MESH_STRETCH * j as f64 / m as f64).exp() - 1.0) / scale)
        .collect();
    let nodes: Vec<f64> = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let beta = p.beta();
    let src_avg: Vec<f64> = edges
        .windows(2)
        .map(|w| match p.source {
            BsSource::Center => ((-beta * w[0]).exp() - (-beta * w[1]).exp()) / beta / shell_volume(p.d, w[0], w[1]),
            BsSource::Uniform => 1.0,
        })
        .collect();
    let ns = p.n * p.sigma;

    let mut a = vec![0.0; m * m];
    if ns > 0.0 {
        for (i, &r) in nodes.iter().enumerate() {
            let mut lo = 0.0;
            for j in 0..m {
                let hi = kernel_mass(p.d, beta, r, edges[j + 1])?;
                a[i * m + j] = hi - lo;
                lo = hi;
            }
        }
    }

    let mut rho = src_avg.clone();
    let mut sweeps = 0;
    let mut residual = 0.0;
    if ns > 0.0 {
        loop {
            let next: Vec<f64> = (0..m)
                .map(|i| src_avg[i] + ns * a[i * m..(i + 1) * m].iter().zip(&rho).map(|(x, y)| x * y).sum::<f64>())
                .collect();
            let scale = next.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())).max(f64::MIN_POSITIVE);
            residual = next.iter().zip(&rho).fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs())) / scale;
            rho = next;
            sweeps += 1;
            if residual < SWEEP_TOL {
                break;
            }
            if sweeps >= MAX_SWEEPS || !residual.is_finite() {
                return Err(Error::Iteration { what: "Bethe-Salpeter Neumann sweeps", residual });
            }
        }
    }
    let density = nodes
        .iter()
        .enumerate()
        .map(|(i, &r)| source_point(&p, r) + ns * a[i * m..(i + 1) * m].iter().zip(&rho).map(|(x, y)| x * y).sum::<f64>())
        .collect();
    Ok(BetheSalpeter { params: p, edges, nodes, cell_density: rho, density, sweeps, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_mass_whole_space() {
        for d in 1..=3 {
            let m = kernel_mass(d, 1.0, 0.7, 60.0).unwrap();
            assert!((m - 1.0).abs() < 1e-9, "{d} {m}");
        }
    }
}
