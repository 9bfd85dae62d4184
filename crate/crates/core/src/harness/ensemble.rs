use rayon::prelude::*;

use crate::error::{Error, Result};

/// Run `task` on configuration indices 0..m in parallel. Results come back
/// in index order; the lowest failing index aborts the run.
pub fn run_ensemble<T, F>(m: usize, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    if m == 0 {
        return Err(Error::Config("at least one configuration is required".into()));
    }
    let results: Vec<Result<T>> = (0..m as u64).into_par_iter().map(&task).collect();
    let mut out = Vec::with_capacity(m);
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => out.push(v),
            Err(e) => return Err(Error::Worker { index: i, source: Box::new(e) }),
        }
    }
    Ok(out)
}

/// Pairwise sum in a fixed tree order.
pub fn tree_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => tree_sum(&xs[..n / 2]) + tree_sum(&xs[n / 2..]),
    }
}

/// Element-wise pairwise sum of equally long vectors.
pub fn tree_sum_vec(xs: &[Vec<f64>]) -> Vec<f64> {
    match xs.len() {
        0 => Vec::new(),
        1 => xs[0].clone(),
        n => {
            let a = tree_sum_vec(&xs[..n / 2]);
            let b = tree_sum_vec(&xs[n / 2..]);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        }
    }
}

/// Element-wise mean with the pairwise order of [`tree_sum_vec`].
pub fn ensemble_mean(xs: &[Vec<f64>]) -> Vec<f64> {
    let n = xs.len() as f64;
    tree_sum_vec(xs).into_iter().map(|s| s / n).collect()
}
