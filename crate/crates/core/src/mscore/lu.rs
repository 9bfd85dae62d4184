//! Dense complex LU with partial pivoting.
//!
//! Storage is row-major with separate real and imaginary planes so the
//! rank-nb trailing updates vectorize. Columns are processed in panels of
//! `NB`; the trailing update of each panel is applied row by row.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const NB: usize = 48;

#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
    perm: Vec<usize>,
    swaps: usize,
    min_pivot: f64,
    max_pivot: f64,
}

#[inline]
fn axpy(yr: &mut [f64], yi: &mut [f64], lr: f64, li: f64, xr: &[f64], xi: &[f64]) {
    let n = yr.len();
    let (yi, xr, xi) = (&mut yi[..n], &xr[..n], &xi[..n]);
    for j in 0..n {
        let ar = xr[j];
        let ai = xi[j];
        yr[j] -= lr * ar - li * ai;
        yi[j] -= lr * ai + li * ar;
    }
}

impl Lu {
    /// Factor a row-major n×n matrix.
    pub fn factor(n: usize, a: &[Complex64]) -> Result<Self> {
        assert_eq!(a.len(), n * n);
        let mut re: Vec<f64> = a.iter().map(|c| c.re).collect();
        let mut im: Vec<f64> = a.iter().map(|c| c.im).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        let mut min_pivot = f64::INFINITY;
        let mut max_pivot: f64 = 0.0;

        let mut kb = 0;
        while kb < n {
            let ke = (kb + NB).min(n);
            for k in kb..ke {
                let mut p = k;
                let mut best = -1.0;
                for i in k..n {
                    let v = re[i * n + k].abs() + im[i * n + k].abs();
                    if v > best {
                        best = v;
                        p = i;
                    }
                }
                if p != k {
                    for j in 0..n {
                        re.swap(k * n + j, p * n + j);
                        im.swap(k * n + j, p * n + j);
                    }
                    perm.swap(k, p);
                    swaps += 1;
                }
                let u = Complex64::new(re[k * n + k], im[k * n + k]);
                let un = u.norm();
                if !un.is_finite() {
                    return Err(Error::domain("non-finite matrix entry"));
                }
                min_pivot = min_pivot.min(un);
                max_pivot = max_pivot.max(un);
                if un == 0.0 {
                    return Err(Error::Singular { pivot: 0.0 });
                }
                let uinv = 1.0 / u;
                let (top, bottom) = (k * n, (k + 1) * n);
                let (head_re, tail_re) = re.split_at_mut(bottom);
                let (head_im, tail_im) = im.split_at_mut(bottom);
                let ur = &head_re[top + k + 1..top + ke];
                let ui = &head_im[top + k + 1..top + ke];
                for i in k + 1..n {
                    let row = (i - k - 1) * n;
                    let l = Complex64::new(tail_re[row + k], tail_im[row + k]) * uinv;
                    tail_re[row + k] = l.re;
                    tail_im[row + k] = l.im;
                    axpy(
                        &mut tail_re[row + k + 1..row + ke],
                        &mut tail_im[row + k + 1..row + ke],
                        l.re,
                        l.im,
                        ur,
                        ui,
                    );
                }
            }
            if ke < n {
                // U12 = L11⁻¹ A12
                for k in kb..ke {
                    let (head_re, tail_re) = re.split_at_mut((k + 1) * n);
                    let (head_im, tail_im) = im.split_at_mut((k + 1) * n);
                    let ur = &head_re[k * n + ke..k * n + n];
                    let ui = &head_im[k * n + ke..k * n + n];
                    for i in k + 1..ke {
                        let row = (i - k - 1) * n;
                        let (lr, li) = (tail_re[row + k], tail_im[row + k]);
                        axpy(&mut tail_re[row + ke..row + n], &mut tail_im[row + ke..row + n], lr, li, ur, ui);
                    }
                }
                // A22 -= L21 U12
                let (head_re, tail_re) = re.split_at_mut(ke * n);
                let (head_im, tail_im) = im.split_at_mut(ke * n);
                for i in ke..n {
                    let row = (i - ke) * n;
                    for p in kb..ke {
                        let (lr, li) = (tail_re[row + p], tail_im[row + p]);
                        if lr == 0.0 && li == 0.0 {
                            continue;
                        }
                        axpy(
                            &mut tail_re[row + ke..row + n],
                            &mut tail_im[row + ke..row + n],
                            lr,
                            li,
                            &head_re[p * n + ke..p * n + n],
                            &head_im[p * n + ke..p * n + n],
                        );
                    }
                }
            }
            kb = ke;
        }
        if n == 0 {
            min_pivot = 1.0;
            max_pivot = 1.0;
        }
        Ok(Self { n, re, im, perm, swaps, min_pivot, max_pivot })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// ln det = Σ ln u_kk + iπ·(row swaps); the imaginary part is an
    /// unwrapped phase, meaningful modulo 2π.
    pub fn logdet(&self) -> Complex64 {
        let n = self.n;
        let mut lr = 0.0;
        let mut li = PI * (self.swaps % 2) as f64;
        for k in 0..n {
            let u = Complex64::new(self.re[k * n + k], self.im[k * n + k]);
            lr += u.norm().ln();
            li += u.arg();
        }
        Complex64::new(lr, li)
    }

    /// Ratio of the smallest to the largest pivot modulus.
    pub fn pivot_ratio(&self) -> f64 {
        self.min_pivot / self.max_pivot
    }

    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= Complex64::new(self.re[i * n + j], self.im[i * n + j]) * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= Complex64::new(self.re[i * n + j], self.im[i * n + j]) * x[j];
            }
            x[i] = s / Complex64::new(self.re[i * n + i], self.im[i * n + i]);
        }
        x
    }
}
