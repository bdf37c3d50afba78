//! Closed-form Laplacian spectra of the circulant graphs `Ci(n, l)`.
//!
//! `lambda_0 = 0` and, for `j = 1..n-1`,
//! `lambda_j = 2l + 1 - sin(j pi (2l + 1) / n) / sin(j pi / n)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectral::NormalModes;

/// Closed-form spectrum of `Ci(n, l)`, stored in index order (not sorted),
/// so that `eigenvalues[j] == eigenvalues[n - j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpectrum {
    pub n: usize,
    pub l: usize,
    pub eigenvalues: Vec<f64>,
}

impl CirculantSpectrum {
    pub fn modes(&self) -> NormalModes {
        NormalModes::new(self.n, self.eigenvalues[1..].to_vec())
            .expect("closed-form circulant modes are positive")
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.eigenvalues.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn circulant_eigenvalues(n: usize, l: usize) -> Result<CirculantSpectrum> {
    if l == 0 || 2 * l >= n {
        return Err(Error::InvalidGenerator(format!(
            "circulant needs 1 <= l and 2l < n, got n={n}, l={l}"
        )));
    }
    let mut eigenvalues = Vec::with_capacity(n);
    eigenvalues.push(0.0);
    eigenvalues.extend((1..n).map(|j| circulant_eigenvalue(n, l, j)));
    Ok(CirculantSpectrum { n, l, eigenvalues })
}

fn circulant_eigenvalue(n: usize, l: usize, j: usize) -> f64 {
    let half_angle = j as f64 * PI / n as f64;
    let width = (2 * l + 1) as f64;
    let denom = half_angle.sin();
    if denom.abs() < 1e-8 {
        2.0 * l as f64 - 2.0 * direct_cosine_sum(n, l, j)
    } else {
        width - (width * half_angle).sin() / denom
    }
}

fn direct_cosine_sum(n: usize, l: usize, j: usize) -> f64 {
    let theta = 2.0 * PI * j as f64 / n as f64;
    (1..=l).map(|s| (theta * s as f64).cos()).sum()
}

/// `|sum_{s=1..l} cos(theta s) - cos((l+1) theta / 2) sin(l theta / 2) / sin(theta / 2)|`
/// at `theta = 2 pi j / n`: the cosine-sum identity behind the closed form.
pub fn cosine_sum_check(n: usize, l: usize, j: usize) -> f64 {
    let theta = 2.0 * PI * j as f64 / n as f64;
    let lf = l as f64;
    let closed = ((lf + 1.0) * theta / 2.0).cos() * (lf * theta / 2.0).sin() / (theta / 2.0).sin();
    (direct_cosine_sum(n, l, j) - closed).abs()
}
