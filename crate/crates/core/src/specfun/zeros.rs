use num_complex::Complex64;
use std::f64::consts::PI;

use super::bessel::{bessel, BesselKind};
use super::lambert::lambert_w0;
use crate::error::{Error, Result};

/// Zeros of H+_ν in the lower half-plane: asymptotic seeds and refined roots.
#[derive(Clone, Debug)]
pub struct HankelZeroSet {
    pub nu: f64,
    pub seeds: Vec<Complex64>,
    pub refined: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

fn j_real(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel(BesselKind::J, nu, Complex64::new(x, 0.0))?.re)
}

/// n-th positive zero of J_ν (n ≥ 1).
pub fn bessel_j_zero(nu: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("zero index starts at 1"));
    }
    let step = 0.1;
    let mut a = nu.max(1e-3);
    let mut fa = j_real(nu, a)?;
    let mut found = 0;
    loop {
        let b = a + step;
        let fb = j_real(nu, b)?;
        if fb == 0.0 {
            found += 1;
            if found == n {
                return Ok(b);
            }
        } else if fa.signum() != fb.signum() && fa != 0.0 {
            found += 1;
            if found == n {
                return bisect(nu, a, b, fa);
            }
        }
        a = b;
        fa = fb;
        if a > 1e4 {
            return Err(Error::domain("zero search ran away"));
        }
    }
}

fn bisect(nu: f64, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    while b - a > 4.0 * f64::EPSILON * b {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = j_real(nu, m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Number of zeros of H+_ν(z) off the negative real axis, floor(ν + 1/4).
pub fn hankel_zero_count(nu: f64) -> usize {
    if nu <= 0.0 {
        0
    } else {
        (nu + 0.25).floor() as usize
    }
}

/// Asymptotic seeds z = −2iν·√(W₀(2e^{2iτ−2})/2), ordered by increasing τ.
pub fn hankel_zero_seeds(nu: f64) -> Vec<Complex64> {
    let count = hankel_zero_count(nu) as i64;
    (-count..0)
        .map(|n| {
            let tau = PI * (nu + 0.5 + 2.0 * n as f64) / (2.0 * nu);
            let arg = Complex64::from_polar(2.0 * (-2.0f64).exp(), 2.0 * tau);
            let w = lambert_w0(arg);
            Complex64::new(0.0, -2.0 * nu) * (w / 2.0).sqrt()
        })
        .collect()
}

const REFINE_MAXIT: usize = 60;

/// Newton refinement of a Hankel zero from its seed.
pub fn hankel_zero_refine(nu: f64, seed: Complex64) -> Result<Complex64> {
    if hankel_zero_count(nu) == 0 {
        return Err(Error::domain(format!("H+ of order {nu} has no zeros to refine")));
    }
    let mut z = seed;
    for _ in 0..REFINE_MAXIT {
        let h = bessel(BesselKind::HPlus, nu, z)?;
        let dh = (bessel(BesselKind::HPlus, nu - 1.0, z)? - bessel(BesselKind::HPlus, nu + 1.0, z)?) * 0.5;
        let step = h / dh;
        z -= step;
        if step.norm() < 1e-11 * z.norm() {
            let res = bessel(BesselKind::HPlus, nu, z)?.norm();
            if res < 1e-10 && (z - seed).norm() < 0.5 {
                return Ok(z);
            }
            if step.norm() < 1e-15 * z.norm() {
                break;
            }
        }
    }
    Err(Error::Convergence { what: "Hankel zero refinement", iterations: REFINE_MAXIT, last: z })
}

/// Seeds, refined zeros and residuals |H+_ν(z)| for order ν.
pub fn hankel_zeros(nu: f64) -> Result<HankelZeroSet> {
    let seeds = hankel_zero_seeds(nu);
    let mut refined = Vec::with_capacity(seeds.len());
    let mut residuals = Vec::with_capacity(seeds.len());
    for &s in &seeds {
        let z = hankel_zero_refine(nu, s)?;
        residuals.push(bessel(BesselKind::HPlus, nu, z)?.norm());
        refined.push(z);
    }
    Ok(HankelZeroSet { nu, seeds, refined, residuals })
}
