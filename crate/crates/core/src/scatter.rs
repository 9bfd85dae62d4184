//! Single point scatterers: amplitude, cross sections, mean free path and the
//! effective wavenumber of the disorder-averaged medium.

use num_complex::Complex64;
use std::fmt;
use std::f64::consts::PI;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::green::{dos_analytic, dos_free, ComplexK};
use crate::specfun::{bessel, BesselKind};

type CotFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// s-wave scattering model, characterised by cot δ(k).
#[derive(Clone)]
pub enum ScatteringModel {
    /// cot δ ≡ 0: the cross section saturates its upper bound.
    MaxPoint,
    /// Hard ball of radius α: cot δ = Y_ν(kα)/J_ν(kα), ν = (d−2)/2.
    HardSphere { alpha: f64 },
    /// User supplied cot δ(k).
    CustomCotDelta(CotFn),
}

impl fmt::Debug for ScatteringModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ScatteringModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScatteringModel::MaxPoint => write!(f, "max"),
            ScatteringModel::HardSphere { alpha } => write!(f, "hardsphere:{alpha}"),
            ScatteringModel::CustomCotDelta(_) => write!(f, "custom"),
        }
    }
}

impl FromStr for ScatteringModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "max" {
            return Ok(ScatteringModel::MaxPoint);
        }
        if let Some(a) = s.strip_prefix("hardsphere:") {
            let alpha: f64 = a
                .parse()
                .map_err(|_| Error::Config(format!("bad hard-sphere radius '{a}'")))?;
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::Config("hard-sphere radius must be positive".into()));
            }
            return Ok(ScatteringModel::HardSphere { alpha });
        }
        Err(Error::Config(format!("unknown model '{s}' (expected max or hardsphere:<alpha>)")))
    }
}

impl ScatteringModel {
    /// cot δ(k), continued to complex k.
    pub fn cot_delta(&self, d: usize, k: ComplexK) -> Result<Complex64> {
        match self {
            ScatteringModel::MaxPoint => Ok(Complex64::new(0.0, 0.0)),
            ScatteringModel::HardSphere { alpha } => {
                let nu = (d as f64 - 2.0) / 2.0;
                let z = k * *alpha;
                let j = bessel(BesselKind::J, nu, z)?;
                if j.norm() == 0.0 {
                    return Err(Error::domain("J vanishes at kα: cot δ is infinite"));
                }
                Ok(bessel(BesselKind::Y, nu, z)? / j)
            }
            ScatteringModel::CustomCotDelta(f) => Ok(f(k)),
        }
    }

    /// d cot δ / dk.
    pub fn cot_delta_deriv(&self, d: usize, k: ComplexK) -> Result<Complex64> {
        match self {
            ScatteringModel::MaxPoint => Ok(Complex64::new(0.0, 0.0)),
            ScatteringModel::HardSphere { alpha } => {
                let nu = (d as f64 - 2.0) / 2.0;
                let j = bessel(BesselKind::J, nu, k * *alpha)?;
                Ok(2.0 / (PI * k * j * j))
            }
            ScatteringModel::CustomCotDelta(f) => {
                let h = 1e-6 * (1.0 + k.norm());
                Ok((f(k + h) - f(k - h)) / (2.0 * h))
            }
        }
    }
}

/// F(k) = 1/(πN(k)(i − cot δ(k))).
pub fn amplitude(model: &ScatteringModel, d: usize, k: ComplexK) -> Result<Complex64> {
    if k.norm() == 0.0 {
        return Err(Error::domain("scattering amplitude is singular at k = 0"));
    }
    let c = model.cot_delta(d, k)?;
    Ok(1.0 / (PI * dos_analytic(d, k) * (Complex64::new(0.0, 1.0) - c)))
}

/// dF/dk.
pub fn amplitude_deriv(model: &ScatteringModel, d: usize, k: ComplexK) -> Result<Complex64> {
    let f = amplitude(model, d, k)?;
    let c = model.cot_delta(d, k)?;
    let dc = model.cot_delta_deriv(d, k)?;
    let dlog_n = (d as f64 - 2.0) / k;
    Ok(f * (-dlog_n + dc / (Complex64::new(0.0, 1.0) - c)))
}

/// Total cross section (π/k)N(k)|F(k)|² at real k.
pub fn cross_section(model: &ScatteringModel, d: usize, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::domain("cross section needs k > 0"));
    }
    let f = amplitude(model, d, Complex64::new(k, 0.0))?;
    Ok(PI / k * dos_free(d, k) * f.norm_sqr())
}

/// Unitarity bound 1/(πkN(k)).
pub fn cross_section_max(d: usize, k: f64) -> f64 {
    1.0 / (PI * k * dos_free(d, k))
}

/// ℓ_scat = 1/(nσ(k)).
pub fn mean_free_path(n: f64, model: &ScatteringModel, d: usize, k: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::domain("density must be positive"));
    }
    let s = cross_section(model, d, k)?;
    if !(s > 0.0) {
        return Err(Error::domain("vanishing cross section"));
    }
    Ok(1.0 / (n * s))
}

/// κ with its branch flag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kappa {
    pub value: Complex64,
    /// Im κ vanishes to rounding: the two roots are not separated by Im κ ≥ 0.
    pub ambiguous: bool,
}

/// κ = √(k² − nF(k)) on the branch Im κ ≥ 0.
pub fn effective_wavenumber(n: f64, model: &ScatteringModel, d: usize, k: ComplexK) -> Result<Kappa> {
    let f = if n == 0.0 { Complex64::new(0.0, 0.0) } else { amplitude(model, d, k)? };
    let mut kappa = (k * k - n * f).sqrt();
    if kappa.im < 0.0 {
        kappa = -kappa;
    }
    let ambiguous = kappa.im.abs() <= 1e-14 * kappa.norm();
    Ok(Kappa { value: kappa, ambiguous })
}

/// 1 − e^{−ς/ℓ}.
pub fn collision_probability(varsigma: f64, lscat: f64) -> f64 {
    if lscat.is_infinite() {
        return 0.0;
    }
    -(-varsigma / lscat).exp_m1()
}

/// Transport constants of a medium at energy k₀ (ħ = 2m = 1, so v = 2k₀).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransportParams {
    pub d: usize,
    pub n: f64,
    pub sigma: f64,
    pub v: f64,
    pub lscat: f64,
    pub diffusivity: f64,
}

impl TransportParams {
    pub fn new(d: usize, n: f64, model: &ScatteringModel, k0: f64) -> Result<Self> {
        let sigma = cross_section(model, d, k0)?;
        let v = 2.0 * k0;
        let lscat = 1.0 / (n * sigma);
        Ok(Self { d, n, sigma, v, lscat, diffusivity: v * lscat / d as f64 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_models() {
        assert!(matches!("max".parse::<ScatteringModel>().unwrap(), ScatteringModel::MaxPoint));
        match "hardsphere:0.1".parse::<ScatteringModel>().unwrap() {
            ScatteringModel::HardSphere { alpha } => assert_eq!(alpha, 0.1),
            _ => panic!(),
        }
        assert!("hardsphere:-1".parse::<ScatteringModel>().is_err());
        assert!("soft".parse::<ScatteringModel>().is_err());
    }

    #[test]
    fn transport_params_relations() {
        let p = TransportParams::new(2, 1.0, &ScatteringModel::MaxPoint, 6.0).unwrap();
        assert!((p.lscat - 1.5).abs() < 1e-12);
        assert!((p.diffusivity - 12.0 * 1.5 / 2.0).abs() < 1e-12);
    }
}
