use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::green::dos_free;
use crate::specfun::{ball_volume, bessel, bessel_j_zero, sphere_area, BesselKind};
use num_complex::Complex64;

/// 2V_{d−1}/S_d: 1, 2/π and 1/2 for d = 1, 2, 3.
pub fn extrapolation_factor(d: usize) -> f64 {
    2.0 * ball_volume(d - 1) / sphere_area(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusForm {
    Exact,
    FirstOrder,
}

/// Radius where the extrapolated stationary density vanishes.
pub fn effective_radius(d: usize, radius: f64, lscat: f64, form: RadiusForm) -> Result<f64> {
    if !(1..=3).contains(&d) {
        return Err(Error::domain(format!("dimension {d} not supported")));
    }
    if !(radius > 0.0 && lscat >= 0.0) {
        return Err(Error::domain("radius must be positive and lscat non-negative"));
    }
    let c = extrapolation_factor(d);
    let x = c * lscat / radius;
    match form {
        RadiusForm::FirstOrder => Ok(radius + c * lscat),
        RadiusForm::Exact if d == 2 => Ok(radius * x.exp()),
        RadiusForm::Exact => {
            let p = 2.0 - d as f64;
            let base = 1.0 + p * x;
            if base <= 0.0 {
                return Err(Error::domain(format!(
                    "exact effective radius diverges for lscat/R = {} in d = {d}",
                    lscat / radius
                )));
            }
            Ok(radius * base.powf(1.0 / p))
        }
    }
}

/// Stationary diffusion density of a point source at the centre of a ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryProfile {
    pub d: usize,
    pub radius: f64,
    pub lscat: f64,
    pub r_eff: f64,
    /// Source strength A in ∇²ρ = −Aδ.
    pub amplitude: f64,
}

impl StationaryProfile {
    /// Source K(r|0): A = d·nσ.
    pub fn kernel_source(d: usize, radius: f64, lscat: f64, form: RadiusForm) -> Result<Self> {
        let r_eff = effective_radius(d, radius, lscat, form)?;
        Ok(Self { d, radius, lscat, r_eff, amplitude: d as f64 / lscat })
    }

    /// Source |⟨G⟩|² at energy k0: A = d·nσ·πN(k0)/k0.
    pub fn green_source(d: usize, radius: f64, lscat: f64, k0: f64, form: RadiusForm) -> Result<Self> {
        let mut p = Self::kernel_source(d, radius, lscat, form)?;
        p.amplitude *= PI * dos_free(d, k0) / k0;
        Ok(p)
    }

    fn formula(&self, r: f64) -> f64 {
        let a = self.amplitude;
        if self.d == 2 {
            -a / (2.0 * PI) * (r / self.r_eff).ln()
        } else {
            let p = 2.0 - self.d as f64;
            -a / sphere_area(self.d) * (r.powf(p) - self.r_eff.powf(p)) / p
        }
    }

    /// ρ_da(r) for 0 < r ≤ R (r = 0 allowed in d = 1).
    pub fn at(&self, r: f64) -> Result<f64> {
        if r > self.radius {
            return Err(Error::domain(format!("r = {r} is outside the medium (R = {})", self.radius)));
        }
        if r < 0.0 || (r == 0.0 && self.d > 1) {
            return Err(Error::domain("profile is singular at the source"));
        }
        Ok(self.formula(r))
    }

    /// dρ_da/dr = −A/(S_d r^{d−1}).
    pub fn derivative(&self, r: f64) -> f64 {
        -self.amplitude / (sphere_area(self.d) * r.powi(self.d as i32 - 1))
    }

    /// Continuation ρ(R)(R/r)^{d−1} for r ≥ R.
    pub fn outside(&self, r: f64) -> Result<f64> {
        if r < self.radius {
            return Err(Error::domain("outside continuation needs r ≥ R"));
        }
        Ok(self.formula(self.radius) * (self.radius / r).powi(self.d as i32 - 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiffusionMode {
    pub n: usize,
    /// j_{ν,n}/R_eff with the exact effective radius.
    pub beta: f64,
    /// −(lscat/d)β².
    pub gamma: f64,
    /// Root of the Robin condition at r = R.
    pub beta_robin: f64,
    pub gamma_robin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffusionSpectrum {
    pub d: usize,
    pub radius: f64,
    pub lscat: f64,
    pub r_eff: f64,
    pub modes: Vec<DiffusionMode>,
}

fn robin(d: usize, radius: f64, lscat: f64, beta: f64) -> Result<f64> {
    let nu = (d as f64 - 2.0) / 2.0;
    let z = Complex64::new(beta * radius, 0.0);
    let c = extrapolation_factor(d);
    Ok(bessel(BesselKind::J, nu, z)?.re - c * lscat * beta * bessel(BesselKind::J, nu + 1.0, z)?.re)
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut b: f64) -> Result<Option<f64>> {
    let (mut fa, fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(Some(a));
    }
    if fb == 0.0 {
        return Ok(Some(b));
    }
    if fa.signum() == fb.signum() {
        return Ok(None);
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(Some(m));
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

/// First `count` diffusion eigenmodes of a ball of radius R.
pub fn diffusion_modes(d: usize, radius: f64, lscat: f64, count: usize) -> Result<DiffusionSpectrum> {
    if count == 0 {
        return Err(Error::domain("at least one mode must be requested"));
    }
    let r_eff = effective_radius(d, radius, lscat, RadiusForm::Exact)?;
    let nu = (d as f64 - 2.0) / 2.0;
    let f = |b: f64| robin(d, radius, lscat, b);
    let mut modes = Vec::with_capacity(count);
    let mut prev_zero = 0.0;
    for n in 1..=count {
        let jz = bessel_j_zero(nu, n)?;
        let beta = jz / r_eff;
        let lo = (prev_zero / radius).max(1e-9 / radius);
        let hi = jz / radius;
        let root = match bisect(f, lo, hi)? {
            Some(r) => r,
            None => {
                let wide_lo = (lo - 0.5 * (hi - lo)).max(1e-9 / radius);
                bisect(f, wide_lo, hi + 0.5 * (hi - lo))?
                    .ok_or_else(|| Error::domain(format!("no Robin root bracketed for mode {n}")))?
            }
        };
        let g = |b: f64| -(lscat / d as f64) * b * b;
        modes.push(DiffusionMode { n, beta, gamma: g(beta), beta_robin: root, gamma_robin: g(root) });
        prev_zero = jz;
    }
    Ok(DiffusionSpectrum { d, radius, lscat, r_eff, modes })
}

/// Im k of the resonance band of mode n: γ_n/2.
pub fn band_depth(spectrum: &DiffusionSpectrum, n: usize) -> Result<f64> {
    spectrum
        .modes
        .iter()
        .find(|m| m.n == n)
        .map(|m| m.gamma / 2.0)
        .ok_or_else(|| Error::domain(format!("mode {n} not computed")))
}
