//! Free Green functions of the Helmholtz operator in dimension d.
//!
//! G±(k, r) = −(1/2π)(∓ik/2πr)^{(d−2)/2} K_{(d−2)/2}(∓ikr). In even d the
//! modified Bessel function is always evaluated on its principal branch,
//! which places the cut of G+ on the negative imaginary k axis.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{bessel, sphere_area, BesselKind};

/// Complex wavenumber in units of 1/ς.
pub type ComplexK = Complex64;

/// Decay rate γ = 2 Im k attached to a complex wavenumber.
pub fn gamma_rate(k: ComplexK) -> f64 {
    2.0 * k.im
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GreenSign {
    Plus,
    Minus,
}

impl GreenSign {
    fn s(self) -> f64 {
        match self {
            GreenSign::Plus => 1.0,
            GreenSign::Minus => -1.0,
        }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if (1..=4).contains(&d) {
        Ok(())
    } else {
        Err(Error::domain(format!("dimension {d} is not supported (1..=4)")))
    }
}

/// G±(k, r). Finite at r = 0 only in d = 1.
pub fn green_free(d: usize, sign: GreenSign, k: ComplexK, r: f64) -> Result<Complex64> {
    check_dim(d)?;
    if r < 0.0 || (r == 0.0 && d >= 2) {
        return Err(Error::domain(format!("Green function is singular at r = {r} in d = {d}")));
    }
    if k.norm() == 0.0 {
        return Err(Error::domain("Green function needs k ≠ 0"));
    }
    let a = Complex64::new(0.0, -sign.s()) * k;
    Ok(match d {
        1 => -(-a * r).exp() / (2.0 * a),
        3 => -(-a * r).exp() / (4.0 * PI * r),
        2 => -bessel(BesselKind::K, 0.0, a * r)? / (2.0 * PI),
        _ => -(a / (2.0 * PI * r)) * bessel(BesselKind::K, 1.0, a * r)? / (2.0 * PI),
    })
}

/// Outgoing G+ specialised for the hot loops of the matrix build.
#[inline]
pub fn green_plus(d: usize, k: ComplexK, r: f64) -> Result<Complex64> {
    green_free(d, GreenSign::Plus, k, r)
}

/// Far-field form ±(1/2ik)(∓ik/2πr)^{(d−1)/2} e^{±ikr}.
pub fn green_asym(d: usize, sign: GreenSign, k: ComplexK, r: f64) -> Result<Complex64> {
    check_dim(d)?;
    if k.norm() == 0.0 || r <= 0.0 {
        return Err(Error::domain("asymptotic Green function needs k ≠ 0 and r > 0"));
    }
    let s = sign.s();
    let i = Complex64::new(0.0, 1.0);
    let base = -i * s * k / (2.0 * PI * r);
    let half = (d as f64 - 1.0) / 2.0;
    let pw = if half == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if half.fract() == 0.0 {
        base.powi(half as i32)
    } else {
        (base.ln() * half).exp()
    };
    Ok(s / (2.0 * i * k) * pw * (i * s * k * r).exp())
}

/// Free density of states per unit volume, S_d k^{d−2}/(2(2π)^d).
pub fn dos_free(d: usize, k: f64) -> f64 {
    sphere_area(d) * k.powi(d as i32 - 2) / (2.0 * (2.0 * PI).powi(d as i32))
}

/// N(k) continued analytically to complex k (integer power of k).
pub fn dos_analytic(d: usize, k: ComplexK) -> Complex64 {
    sphere_area(d) * k.powi(d as i32 - 2) / (2.0 * (2.0 * PI).powi(d as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let g = green_free(3, GreenSign::Plus, Complex64::new(1.0, 0.0), 1.0).unwrap();
        let exact = -Complex64::new(1f64.cos(), 1f64.sin()) / (4.0 * PI);
        assert!((g - exact).norm() < 1e-15);
        let g = green_free(1, GreenSign::Plus, Complex64::new(1.0, 0.0), 0.0).unwrap();
        assert!((g - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        let g = green_free(2, GreenSign::Plus, Complex64::new(0.0, 1.0), 1.0).unwrap();
        assert!((g.re + 0.421_024_438_240_708_3 / (2.0 * PI)).abs() < 1e-12);
        assert!(g.im.abs() < 1e-15);
    }

    #[test]
    fn singular_origin() {
        assert!(green_free(2, GreenSign::Plus, Complex64::new(1.0, 0.0), 0.0).is_err());
    }
}
