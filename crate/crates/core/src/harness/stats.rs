use crate::error::{Error, Result};
use crate::harness::ensemble::tree_sum;

/// Per-bin statistics of radially sampled values.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleStats {
    /// bins + 1 edges covering [0, r_max].
    pub edges: Vec<f64>,
    pub mean: Vec<f64>,
    pub q1: Vec<f64>,
    pub q3: Vec<f64>,
    pub count: Vec<usize>,
    /// Bins without samples; their statistics are NaN.
    pub empty: Vec<bool>,
}

impl EnsembleStats {
    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn bins(&self) -> usize {
        self.mean.len()
    }
}

/// Linearly interpolated quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Bin (r, value) samples on [0, r_max]; samples beyond r_max are dropped.
pub fn radial_bin(samples: &[(f64, f64)], bins: usize, r_max: f64) -> Result<EnsembleStats> {
    if bins < 8 {
        return Err(Error::Config(format!("radial binning needs at least 8 bins, got {bins}")));
    }
    if !(r_max > 0.0) {
        return Err(Error::Config("radial binning needs r_max > 0".into()));
    }
    let mut per: Vec<Vec<f64>> = vec![Vec::new(); bins];
    for &(r, v) in samples {
        if !(r >= 0.0) || r > r_max || !v.is_finite() {
            continue;
        }
        let b = ((r / r_max * bins as f64) as usize).min(bins - 1);
        per[b].push(v);
    }
    let edges = (0..=bins).map(|i| r_max * i as f64 / bins as f64).collect();
    let mut st = EnsembleStats {
        edges,
        mean: Vec::with_capacity(bins),
        q1: Vec::with_capacity(bins),
        q3: Vec::with_capacity(bins),
        count: Vec::with_capacity(bins),
        empty: Vec::with_capacity(bins),
    };
    for vals in per {
        st.count.push(vals.len());
        st.empty.push(vals.is_empty());
        if vals.is_empty() {
            st.mean.push(f64::NAN);
            st.q1.push(f64::NAN);
            st.q3.push(f64::NAN);
            continue;
        }
        st.mean.push(tree_sum(&vals) / vals.len() as f64);
        let mut sorted = vals;
        sorted.sort_by(f64::total_cmp);
        st.q1.push(quantile(&sorted, 0.25));
        st.q3.push(quantile(&sorted, 0.75));
    }
    Ok(st)
}
