//! Resonance structure in the complex k-plane.
//!
//! The resonance density is the distributional Laplacian of the potential
//! ln|det M(k)|: 2πρ_res = ∇² ln|det M|, each zero of det M contributing a
//! 2π δ. Maps use a 5-point stencil on a cell-centred grid with one ring of
//! padding nodes, so the sum of density·area over any block of cells is the
//! discrete boundary flux, i.e. 2π times the number of enclosed zeros for a
//! resolved grid. Negative stencil noise is kept as is.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::green::ComplexK;
use crate::mscore::build_matrix;
use crate::pointfield::{sample_configuration, Configuration, Medium};
use crate::scatter::{amplitude_deriv, effective_wavenumber, ScatteringModel};
use crate::specfun::{
    bessel, hankel_zero_count, hankel_zero_refine, hankel_zero_seeds, lambert_w, order_for, sph_bessel_gen,
    sph_bessel_gen_deriv, BesselKind, SphKind,
};

/// Rectangle of the complex k-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KRect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl KRect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_max > re_min && im_max > im_min) {
            return Err(Error::Config(format!(
                "empty k rectangle [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    pub fn contains(&self, k: Complex64) -> bool {
        k.re >= self.re_min && k.re <= self.re_max && k.im >= self.im_min && k.im <= self.im_max
    }

    /// The four sub-rectangles split at the midpoints (NW, NE, SW, SE).
    pub fn quadrants(&self) -> [KRect; 4] {
        let rm = 0.5 * (self.re_min + self.re_max);
        let im = 0.5 * (self.im_min + self.im_max);
        [
            KRect { re_min: self.re_min, re_max: rm, im_min: im, im_max: self.im_max },
            KRect { re_min: rm, re_max: self.re_max, im_min: im, im_max: self.im_max },
            KRect { re_min: self.re_min, re_max: rm, im_min: self.im_min, im_max: im },
            KRect { re_min: rm, re_max: self.re_max, im_min: self.im_min, im_max: im },
        ]
    }
}

/// Plotting window with an nx × ny grid of cells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KWindow {
    pub rect: KRect,
    pub nx: usize,
    pub ny: usize,
}

impl KWindow {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::Config("k window needs at least one cell per axis".into()));
        }
        Ok(Self { rect: KRect::new(re_min, re_max, im_min, im_max)?, nx, ny })
    }

    pub fn hx(&self) -> f64 {
        (self.rect.re_max - self.rect.re_min) / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        (self.rect.im_max - self.rect.im_min) / self.ny as f64
    }

    /// Centre of cell (ix, iy); row 0 is the top (largest Im k). Indices may
    /// run one past either end for the padding ring.
    pub fn node(&self, ix: isize, iy: isize) -> Complex64 {
        Complex64::new(
            self.rect.re_min + (ix as f64 + 0.5) * self.hx(),
            self.rect.im_max - (iy as f64 + 0.5) * self.hy(),
        )
    }
}

/// Ensemble-averaged resonance density 2πρ_res on a [`KWindow`].
#[derive(Clone, Debug)]
pub struct ResonanceMap {
    pub window: KWindow,
    /// Row-major, `density[iy * nx + ix]`.
    pub density: Vec<f64>,
    /// Averaged ln|det M| on the padded (nx+2) × (ny+2) node grid.
    pub potential: Vec<f64>,
    pub configs_averaged: usize,
}

impl ResonanceMap {
    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.density[iy * self.window.nx + ix]
    }

    /// Σ density·dA / 2π over the cells whose centres lie in `rect`.
    pub fn integrated_count(&self, rect: &KRect) -> f64 {
        let w = &self.window;
        let mut s = 0.0;
        for iy in 0..w.ny {
            for ix in 0..w.nx {
                if rect.contains(w.node(ix as isize, iy as isize)) {
                    s += self.at(ix, iy);
                }
            }
        }
        s * w.hx() * w.hy() / (2.0 * PI)
    }

    /// Column of the map nearest to Re k = `re`, as (Im k, density) from top to bottom.
    pub fn column(&self, re: f64) -> Vec<(f64, f64)> {
        let w = &self.window;
        let ix = (((re - w.rect.re_min) / w.hx() - 0.5).round().max(0.0) as usize).min(w.nx - 1);
        (0..w.ny).map(|iy| (w.node(ix as isize, iy as isize).im, self.at(ix, iy))).collect()
    }

    /// Cells strictly greater than their 8 neighbours (edge cells compare with existing neighbours).
    pub fn local_maxima(&self) -> Vec<Complex64> {
        let w = &self.window;
        let mut out = Vec::new();
        for iy in 0..w.ny {
            for ix in 0..w.nx {
                let c = self.at(ix, iy);
                let mut is_max = true;
                for dy in -1isize..=1 {
                    for dx in -1isize..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let (jx, jy) = (ix as isize + dx, iy as isize + dy);
                        if jx < 0 || jy < 0 || jx >= w.nx as isize || jy >= w.ny as isize {
                            continue;
                        }
                        if self.at(jx as usize, jy as usize) >= c {
                            is_max = false;
                        }
                    }
                }
                if is_max {
                    out.push(w.node(ix as isize, iy as isize));
                }
            }
        }
        out
    }
}

fn check_window(d: usize, w: &KWindow) -> Result<()> {
    let lo = w.node(-1, w.ny as isize);
    let hi = w.node(w.nx as isize, -1);
    if d % 2 == 0 && lo.re <= 0.0 && hi.re >= 0.0 {
        return Err(Error::domain(
            "window (with padding) crosses Re k = 0, where the even-dimensional Green function has its cut",
        ));
    }
    if lo.re <= 0.0 && hi.re >= 0.0 && lo.im <= 0.0 && hi.im >= 0.0 {
        return Err(Error::domain("window (with padding) contains k = 0"));
    }
    Ok(())
}

fn node_potential(configs: &[Configuration], model: &ScatteringModel, k: ComplexK, shift: f64) -> Result<f64> {
    let mut s = 0.0;
    for c in configs {
        let m = build_matrix(c, model, k)?;
        let ld = match m.factor() {
            Ok(lu) => lu.logdet(),
            Err(Error::Singular { .. }) => build_matrix(c, model, k + shift)?.factor()?.logdet(),
            Err(e) => return Err(e),
        };
        s += ld.re;
    }
    Ok(s / configs.len() as f64)
}

/// Ensemble-averaged resonance density over configurations 0..num_configs of `medium`.
pub fn resonance_density_map(medium: &Medium, window: &KWindow, num_configs: usize) -> Result<ResonanceMap> {
    if num_configs == 0 {
        return Err(Error::Config("at least one configuration is required".into()));
    }
    let configs: Vec<Configuration> = (0..num_configs as u64).map(|i| sample_configuration(medium, i)).collect();
    density_map_from(&configs, &medium.model, window)
}

/// Density map averaged over explicit configurations.
pub fn density_map_from(configs: &[Configuration], model: &ScatteringModel, window: &KWindow) -> Result<ResonanceMap> {
    let d = configs.first().ok_or_else(|| Error::Config("no configurations".into()))?.d;
    check_window(d, window)?;
    let shift = window.hx() / 7.0;
    let nodes = |k: ComplexK| node_potential(configs, model, k, shift);
    let mut map = map_from_potential(window, nodes)?;
    map.configs_averaged = configs.len();
    Ok(map)
}

/// Density map of an arbitrary potential u(k) = ln|f(k)|.
pub fn map_from_potential<F>(window: &KWindow, u: F) -> Result<ResonanceMap>
where
    F: Fn(ComplexK) -> Result<f64> + Sync,
{
    let (nx, ny) = (window.nx, window.ny);
    let px = nx + 2;
    let potential: Vec<f64> = (0..(nx + 2) * (ny + 2))
        .into_par_iter()
        .map(|p| {
            let (ix, iy) = ((p % px) as isize - 1, (p / px) as isize - 1);
            u(window.node(ix, iy))
        })
        .collect::<Result<_>>()?;
    let (hx2, hy2) = (window.hx().powi(2), window.hy().powi(2));
    let mut density = vec![0.0; nx * ny];
    for iy in 0..ny {
        for ix in 0..nx {
            let c = (iy + 1) * px + ix + 1;
            let lap_x = (potential[c - 1] + potential[c + 1] - 2.0 * potential[c]) / hx2;
            let lap_y = (potential[c - px] + potential[c + px] - 2.0 * potential[c]) / hy2;
            density[iy * nx + ix] = lap_x + lap_y;
        }
    }
    Ok(ResonanceMap { window: *window, density, potential, configs_averaged: 1 })
}

const CONTOUR_SEGMENTS: usize = 64;
const CONTOUR_MAX_DEPTH: usize = 30;

fn wrap(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    } else if y <= -PI {
        y += 2.0 * PI;
    }
    y
}

fn phase_change<F>(logf: &F, a: Complex64, pa: f64, b: Complex64, pb: f64, depth: usize) -> Result<f64>
where
    F: Fn(ComplexK) -> Result<Complex64>,
{
    let dp = wrap(pb - pa);
    if dp.abs() < PI / 2.0 {
        return Ok(dp);
    }
    if depth >= CONTOUR_MAX_DEPTH {
        return Err(Error::Contour(format!("phase unresolved between {a} and {b}; zero on or near the contour")));
    }
    let m = 0.5 * (a + b);
    let pm = logf(m)?.im;
    Ok(phase_change(logf, a, pa, m, pm, depth + 1)? + phase_change(logf, m, pm, b, pb, depth + 1)?)
}

/// Winding number of f around the rectangle, given ln f (only its imaginary part is used).
pub fn count_zeros<F>(logf: F, rect: &KRect) -> Result<i64>
where
    F: Fn(ComplexK) -> Result<Complex64>,
{
    let corners = [
        Complex64::new(rect.re_min, rect.im_min),
        Complex64::new(rect.re_max, rect.im_min),
        Complex64::new(rect.re_max, rect.im_max),
        Complex64::new(rect.re_min, rect.im_max),
    ];
    let mut total = 0.0;
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        let mut prev = a;
        let mut pprev = logf(a)?.im;
        for s in 1..=CONTOUR_SEGMENTS {
            let z = a + (b - a) * (s as f64 / CONTOUR_SEGMENTS as f64);
            let pz = logf(z)?.im;
            total += phase_change(&logf, prev, pprev, z, pz, 0)?;
            prev = z;
            pprev = pz;
        }
    }
    let w = total / (2.0 * PI);
    let n = w.round();
    if (w - n).abs() > 1e-3 {
        return Err(Error::Contour(format!("non-integral winding {w}")));
    }
    Ok(n as i64)
}

/// Number of zeros of det M(k) of one configuration inside `rect`.
pub fn count_zeros_config(config: &Configuration, model: &ScatteringModel, rect: &KRect) -> Result<i64> {
    count_zeros(|k| Ok(build_matrix(config, model, k)?.factor()?.logdet()), rect)
}

/// Poles of two MaxPoint scatterers in d = 3 at distance r12, from the
/// Lambert-W branches m = −b..=b of ikr = ∓e^{ikr}, k = iW(±1)/r12. Only
/// lower half-plane roots are returned, sorted by Re k.
pub fn two_scatterer_pole_branches(r12: f64, b: i32) -> Result<Vec<Complex64>> {
    if !(r12 > 0.0) {
        return Err(Error::domain("scatterer distance must be positive"));
    }
    let i = Complex64::new(0.0, 1.0);
    let mut out = Vec::new();
    for m in -b..=b {
        for z in [Complex64::new(-1.0, 0.0), Complex64::new(-1.0, -0.0), Complex64::new(1.0, 0.0)] {
            let k = i * lambert_w(m, z) / r12;
            if k.im < 0.0 && !out.iter().any(|q: &Complex64| (q - k).norm() < 1e-12 * k.norm()) {
                out.push(k);
            }
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re));
    Ok(out)
}

/// The principal pair (±1.33724 − 0.31813i)/r12.
pub fn two_scatterer_poles(r12: f64) -> Result<Vec<Complex64>> {
    if !(r12 > 0.0) {
        return Err(Error::domain("scatterer distance must be positive"));
    }
    let i = Complex64::new(0.0, 1.0);
    let neg = i * lambert_w(0, Complex64::new(-1.0, 0.0)) / r12;
    let pos = i * lambert_w(0, Complex64::new(-1.0, -0.0)) / r12;
    Ok(vec![neg, pos])
}

/// S-matrix element of the effective ball with its resonance flag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SElement {
    pub value: Complex64,
    pub at_resonance: bool,
}

/// S_ℓ = −W[h−(kr), j(κr)] / W[h+(kr), j(κr)] at r = R.
pub fn effective_s_matrix(d: usize, ell: usize, k: ComplexK, kappa: Complex64, radius: f64) -> Result<SElement> {
    let (kr, qr) = (k * radius, kappa * radius);
    let j = sph_bessel_gen(d, ell, SphKind::J, qr)?;
    let dj = sph_bessel_gen_deriv(d, ell, SphKind::J, qr)?;
    let w = |kind: SphKind| -> Result<Complex64> {
        Ok(sph_bessel_gen(d, ell, kind, kr)? * kappa * dj - k * sph_bessel_gen_deriv(d, ell, kind, kr)? * j)
    };
    let num = w(SphKind::HMinus)?;
    let den = w(SphKind::HPlus)?;
    let scale = (num.norm() + den.norm()).max(f64::MIN_POSITIVE);
    Ok(SElement { value: -num / den, at_resonance: den.norm() <= 1e-14 * scale })
}

/// Root of the effective-medium resonance equation for one ℓ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveRoot {
    pub ell: usize,
    pub k: Complex64,
    /// |κJ_{ν+1}(κR)/J_ν(κR) − kH+_{ν+1}(kR)/H+_ν(kR)|.
    pub residual: f64,
}

/// Roots found plus the seeds that were dropped and why.
#[derive(Clone, Debug, Default)]
pub struct EffectiveResonances {
    pub roots: Vec<EffectiveRoot>,
    pub dropped: Vec<(Complex64, String)>,
}

struct ResonanceEq<'a> {
    nu: f64,
    n: f64,
    radius: f64,
    d: usize,
    model: &'a ScatteringModel,
}

impl ResonanceEq<'_> {
    fn kappa(&self, k: ComplexK) -> Result<Complex64> {
        Ok(effective_wavenumber(self.n, self.model, self.d, k)?.value)
    }

    /// f = κJ_{ν+1}(κR)H_ν(kR) − kH_{ν+1}(kR)J_ν(κR) and f'.
    fn eval(&self, k: ComplexK) -> Result<(Complex64, Complex64)> {
        let (nu, r) = (self.nu, self.radius);
        let q = self.kappa(k)?;
        let nf_d = if self.n == 0.0 { Complex64::new(0.0, 0.0) } else { self.n * amplitude_deriv(self.model, self.d, k)? };
        let dq = (2.0 * k - nf_d) / (2.0 * q);
        let (jn, jn1) = (bessel(BesselKind::J, nu, q * r)?, bessel(BesselKind::J, nu + 1.0, q * r)?);
        let (hn, hn1) = (bessel(BesselKind::HPlus, nu, k * r)?, bessel(BesselKind::HPlus, nu + 1.0, k * r)?);
        let f = q * jn1 * hn - k * hn1 * jn;
        let df = dq * (q * r * jn - nu * jn1) * hn + q * jn1 * ((nu / k) * hn - r * hn1)
            - (k * r * hn - nu * hn1) * jn
            - k * hn1 * dq * ((nu / q) * jn - r * jn1);
        Ok((f, df))
    }

    fn residual(&self, k: ComplexK) -> Result<f64> {
        let (nu, r) = (self.nu, self.radius);
        let q = self.kappa(k)?;
        let lhs = q * bessel(BesselKind::J, nu + 1.0, q * r)? / bessel(BesselKind::J, nu, q * r)?;
        let rhs = k * bessel(BesselKind::HPlus, nu + 1.0, k * r)? / bessel(BesselKind::HPlus, nu, k * r)?;
        let res = (lhs - rhs).norm();
        if res.is_finite() {
            Ok(res)
        } else {
            Err(Error::domain("resonance equation is singular here"))
        }
    }

    fn solve(&self, seed: Complex64) -> Result<Complex64> {
        const MAXIT: usize = 60;
        let mut k = seed;
        let (mut f, mut df) = self.eval(k)?;
        let mut fails = 0;
        let mut prev: Option<(Complex64, Complex64)> = None;
        for _ in 0..MAXIT {
            let step = if fails < 3 {
                f / df
            } else {
                match prev {
                    Some((kp, fp)) if fp != f => f * (k - kp) / (f - fp),
                    _ => f / df,
                }
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let kn = k - step;
            let (fn_, dfn) = match self.eval(kn) {
                Ok(v) => v,
                Err(_) => break,
            };
            if fn_.norm() >= f.norm() {
                fails += 1;
            }
            prev = Some((k, f));
            k = kn;
            f = fn_;
            df = dfn;
            if step.norm() <= 1e-13 * k.norm().max(1.0) {
                break;
            }
        }
        Ok(k)
    }
}

/// Roots of κJ_{ν+1}(κR)/J_ν(κR) = kH+_{ν+1}(kR)/H+_ν(kR) for the ball of
/// `medium`, ν = ℓ + (d−2)/2, with 0 < |k| ≤ k_max and Im k ≤ 0.
///
/// Seeds: refined zeros z of H+_ν scaled to z/R (raw asymptotic seeds where
/// refinement fails), 16 points on the lower semicircle |k|R = 1, and a
/// lattice covering the window up to k_max.
pub fn effective_resonances(medium: &Medium, ell: usize, k_max: f64) -> Result<EffectiveResonances> {
    let d = medium.d;
    let radius = medium.radius;
    let nu = order_for(d, ell);
    let eq = ResonanceEq { nu, n: medium.density(), radius, d, model: &medium.model };

    let mut seeds = Vec::new();
    if hankel_zero_count(nu) > 0 {
        for s in hankel_zero_seeds(nu) {
            seeds.push(hankel_zero_refine(nu, s).unwrap_or(s) / radius);
        }
    }
    for j in 0..16 {
        let th = PI * (j as f64 + 0.5) / 16.0;
        seeds.push(Complex64::new(th.cos(), -th.sin()) / radius);
    }
    let dre = PI / (4.0 * radius);
    let nre = (k_max / dre).ceil() as usize;
    for i in 1..=nre {
        for im in [0.05, 0.2, 0.5, 1.0] {
            seeds.push(Complex64::new(i as f64 * dre, -im));
        }
    }

    let mut out = EffectiveResonances::default();
    for seed in seeds {
        let k = match eq.solve(seed) {
            Ok(k) => k,
            Err(e) => {
                out.dropped.push((seed, e.to_string()));
                continue;
            }
        };
        if !(k.norm() > 1e-6 && k.norm() <= k_max && k.im <= 0.0) {
            out.dropped.push((seed, format!("converged outside the search region at {k}")));
            continue;
        }
        let residual = match eq.residual(k) {
            Ok(r) => r,
            Err(e) => {
                out.dropped.push((seed, e.to_string()));
                continue;
            }
        };
        if residual >= 1e-9 {
            out.dropped.push((seed, format!("residual {residual:e} at {k}")));
            continue;
        }
        if out.roots.iter().any(|r| (r.k - k).norm() < 1e-6) {
            continue;
        }
        out.roots.push(EffectiveRoot { ell, k, residual });
    }
    out.roots.sort_by(|a, b| a.k.re.total_cmp(&b.k.re).then(a.k.im.total_cmp(&b.k.im)));
    Ok(out)
}

/// κ at k for the ball of `medium`; convenience for S-matrix evaluation.
pub fn medium_kappa(medium: &Medium, k: ComplexK) -> Result<Complex64> {
    Ok(effective_wavenumber(medium.density(), &medium.model, medium.d, k)?.value)
}
