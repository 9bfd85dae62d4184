use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::green::green_plus;
use crate::quad::{gauss_legendre, gauss_legendre_panels, integrate_to_inf};
use crate::specfun::sphere_area;
use num_complex::Complex64;

/// Moments of e^{−βr}/(S_d r^{d−1}) about its centre, integrated over the
/// full space or over the half-space x·n ≤ 0 with n the first axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelMoments {
    pub zeroth: f64,
    /// First moment vector.
    pub first: [f64; 3],
    /// Second moment matrix.
    pub second: [[f64; 3]; 3],
}

const TOL: f64 = 1e-14;

/// ∫_0^∞ r^p e^{−βr} dr by adaptive quadrature.
fn radial(beta: f64, p: i32) -> Result<f64> {
    integrate_to_inf(|r| r.powi(p) * (-beta * r).exp(), 0.0, TOL, 1e-13)
}

/// Angular cubature on S^{d−1}: (unit vector, weight) with weights summing
/// to the measure of the selected part of the sphere.
fn directions(d: usize, half: bool) -> Result<Vec<([f64; 3], f64)>> {
    let (x, w) = gauss_legendre(32);
    let map = |a: f64, b: f64| -> Vec<(f64, f64)> {
        x.iter().zip(&w).map(|(t, wt)| (0.5 * (a + b) + 0.5 * (b - a) * t, 0.5 * (b - a) * wt)).collect()
    };
    Ok(match d {
        1 => {
            if half {
                vec![([-1.0, 0.0, 0.0], 1.0)]
            } else {
                vec![([1.0, 0.0, 0.0], 1.0), ([-1.0, 0.0, 0.0], 1.0)]
            }
        }
        2 => {
            let (a, b) = if half { (0.5 * PI, 1.5 * PI) } else { (0.0, 2.0 * PI) };
            let mut out = Vec::new();
            for panel in 0..4 {
                let lo = a + (b - a) * panel as f64 / 4.0;
                let hi = a + (b - a) * (panel + 1) as f64 / 4.0;
                for (t, wt) in map(lo, hi) {
                    out.push(([t.cos(), t.sin(), 0.0], wt));
                }
            }
            out
        }
        3 => {
            let (a, b) = if half { (0.5 * PI, PI) } else { (0.0, PI) };
            let mut out = Vec::new();
            for (th, wth) in map(a, b) {
                for (ph, wph) in map(0.0, 2.0 * PI) {
                    out.push((
                        [th.cos(), th.sin() * ph.cos(), th.sin() * ph.sin()],
                        wth * wph * th.sin(),
                    ));
                }
            }
            out
        }
        _ => return Err(Error::domain(format!("dimension {d} not supported"))),
    })
}

fn moments(d: usize, beta: f64, half: bool) -> Result<KernelMoments> {
    if !(beta > 0.0) {
        return Err(Error::domain("γ + nσ must be positive"));
    }
    // In polar form the r^{d−1} of the volume element cancels the kernel's.
    let (r0, r1, r2) = (radial(beta, 0)?, radial(beta, 1)?, radial(beta, 2)?);
    let sd = sphere_area(d);
    let mut m = KernelMoments { zeroth: 0.0, first: [0.0; 3], second: [[0.0; 3]; 3] };
    for (u, w) in directions(d, half)? {
        let w = w / sd;
        m.zeroth += w * r0;
        for i in 0..3 {
            m.first[i] += w * r1 * u[i];
            for j in 0..3 {
                m.second[i][j] += w * r2 * u[i] * u[j];
            }
        }
    }
    Ok(m)
}

/// Full-space moments with β = γ + nσ.
pub fn kernel_moments(d: usize, beta: f64) -> Result<KernelMoments> {
    moments(d, beta, false)
}

/// Half-space (x·n ≤ 0) moments with β = γ + nσ.
pub fn half_space_moments(d: usize, beta: f64) -> Result<KernelMoments> {
    moments(d, beta, true)
}

/// (∫|ρ∞|², ∫r²|ρ∞|²) for ρ∞(r) = −Im G+(k0, r)·e^{−r/(2 lscat)}.
pub fn coherence_integrals(d: usize, k0: f64, lscat: f64) -> Result<(f64, f64)> {
    if !(2..=3).contains(&d) {
        return Err(Error::domain(format!("coherence length needs d = 2 or 3, got {d}")));
    }
    let k = Complex64::new(k0, 0.0);
    let sd = sphere_area(d);
    let r_max = 60.0 * lscat;
    let panels = ((r_max * k0 / PI) * 2.0).ceil().max(64.0) as usize;
    let dens = |r: f64| -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let i = -green_plus(d, k, r).map(|g| g.im).unwrap_or(f64::NAN);
        let rho = i * (-r / (2.0 * lscat)).exp();
        sd * r.powi(d as i32 - 1) * rho * rho
    };
    let norm = gauss_legendre_panels(dens, 0.0, r_max, panels, 16);
    let second = gauss_legendre_panels(|r| r * r * dens(r), 0.0, r_max, panels, 16);
    if !(norm.is_finite() && second.is_finite()) {
        return Err(Error::Iteration { what: "coherence-length quadrature", residual: f64::NAN });
    }
    Ok((norm, second))
}

/// Coherence length of the uniform density matrix; requires k0·lscat ≥ 10.
pub fn coherence_length(d: usize, k0: f64, lscat: f64) -> Result<f64> {
    if !(k0 * lscat >= 10.0) {
        return Err(Error::domain("coherence length needs weak scattering, k0·lscat ≥ 10"));
    }
    let (norm, second) = coherence_integrals(d, k0, lscat)?;
    Ok((second / norm).sqrt())
}
