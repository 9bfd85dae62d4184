use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(z) for Re z ≥ 1/2 (principal branch of the Lanczos form).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Γ(z) for complex z, with the reflection formula in the left half-plane.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("gamma of a non-finite argument"));
    }
    if is_pole(z) {
        return Err(Error::domain(format!("gamma has a pole at {}", z.re)));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z).exp());
    }
    let n = z.re.round();
    let r = z - n;
    let mut s = (PI * r).sin();
    if (n as i64).rem_euclid(2) == 1 {
        s = -s;
    }
    Ok(PI / (s * ln_gamma_right(1.0 - z).exp()))
}

/// Real Γ(x); panics only at the poles, which callers never reach.
pub fn gamma(x: f64) -> f64 {
    gamma_complex(Complex64::new(x, 0.0))
        .expect("gamma evaluated at a pole")
        .re
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs a positive argument");
    if x >= 0.5 {
        ln_gamma_right(Complex64::new(x, 0.0)).re
    } else {
        ln_gamma_right(Complex64::new(x + 1.0, 0.0)).re - x.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_half() {
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(1.0) - 1.0).abs() < 1e-14);
        assert!(gamma_complex(Complex64::new(-3.0, 0.0)).is_err());
    }

    #[test]
    fn reflection_branch() {
        // Γ(-1/2) = -2√π
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!((ln_gamma(0.25) - gamma(0.25).ln()).abs() < 1e-13);
    }
}
