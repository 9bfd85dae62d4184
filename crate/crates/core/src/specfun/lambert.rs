use num_complex::Complex64;
use std::f64::consts::{E, PI};

const MAXIT: usize = 100;

/// Branch `branch` of the Lambert W function, W·e^W = z.
///
/// On the cut (−∞, −1/e) of the principal branch the sign of `z.im`
/// (including signed zero) selects the side; +0 is the upper side.
pub fn lambert_w(branch: i32, z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        return if branch == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::NEG_INFINITY, 0.0)
        };
    }
    let upper = z.im.is_sign_positive();
    let mut w = seed(branch, z, upper);
    for _ in 0..MAXIT {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.norm() <= 1e-15 * (1.0 + w.norm()) {
            break;
        }
    }
    w
}

/// Principal branch W₀.
pub fn lambert_w0(z: Complex64) -> Complex64 {
    lambert_w(0, z)
}

fn seed(branch: i32, z: Complex64, upper: bool) -> Complex64 {
    let near_branch_pt = (z + 1.0 / E).norm() < 0.3;
    if branch == 0 && z.norm() < 0.3 && !near_branch_pt {
        return z - z * z + 1.5 * z * z * z;
    }
    if near_branch_pt && (branch == 0 || (branch == -1 && upper) || (branch == 1 && !upper)) {
        let mut p = (2.0 * (E * z + 1.0)).sqrt();
        if branch != 0 {
            p = -p;
        }
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    if branch == 0 && (z + 1.0).norm() > 0.5 && z.norm() < 3.0 {
        let l = (1.0 + z).ln();
        return l * (1.0 - (1.0 + l).ln() / (2.0 + l));
    }
    let l1 = z.ln() + Complex64::new(0.0, 2.0 * PI * branch as f64);
    l1 - l1.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(branch: i32, z: Complex64) {
        let w = lambert_w(branch, z);
        assert!((w * w.exp() - z).norm() < 1e-12 * (1.0 + z.norm()), "{branch} {z} {w}");
    }

    #[test]
    fn defining_identity() {
        for &(re, im) in &[(0.1, 0.0), (1.0, 0.0), (E, 0.0), (-0.2, 0.1), (-1.0, 0.0), (-1.0, -0.0), (5.0, -3.0), (-0.36, 0.0)] {
            check(0, Complex64::new(re, im));
            check(-1, Complex64::new(re, im));
            check(1, Complex64::new(re, im));
        }
        assert!((lambert_w0(Complex64::new(E, 0.0)) - 1.0).norm() < 1e-14);
    }

    #[test]
    fn cut_sides() {
        let up = lambert_w0(Complex64::new(-1.0, 0.0));
        let down = lambert_w0(Complex64::new(-1.0, -0.0));
        assert!((up - Complex64::new(-0.318_131_505_204_764_1, 1.337_235_701_430_689)).norm() < 1e-12);
        assert!((down - up.conj()).norm() < 1e-12);
    }
}
