//! Complex-argument special functions.
//!
//! Bessel functions are evaluated for real order and arbitrary complex
//! argument on the principal branch (cut along the negative real axis).
//! Half-integer orders of K and H± use their finite closed forms.

mod bessel;
mod gamma;
mod lambert;
mod zeros;

pub use bessel::{
    bessel, bessel_deriv, bessel_generic, sph_bessel_gen, sph_bessel_gen_deriv, BesselKind,
    SphKind,
};
pub use gamma::{gamma, gamma_complex, ln_gamma};
pub use lambert::{lambert_w, lambert_w0};
pub use zeros::{
    bessel_j_zero, hankel_zero_count, hankel_zero_refine, hankel_zero_seeds, hankel_zeros,
    HankelZeroSet,
};

use std::f64::consts::PI;

/// Volume of the unit d-ball, π^{d/2}/Γ(d/2+1).
pub fn ball_volume(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}

/// Surface of the unit sphere in R^d, d·V_d.
pub fn sphere_area(d: usize) -> f64 {
    d as f64 * ball_volume(d)
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// Bessel order for angular momentum ℓ in dimension d.
pub fn order_for(d: usize, ell: usize) -> f64 {
    ell as f64 + (d as f64 - 2.0) / 2.0
}

pub(crate) fn is_half_integer(nu: f64) -> bool {
    let t = 2.0 * nu;
    t.fract() == 0.0 && (t as i64).rem_euclid(2) == 1
}

pub(crate) fn is_integer(nu: f64) -> bool {
    nu.fract() == 0.0
}
