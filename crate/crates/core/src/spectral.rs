//! Laplacian eigendecomposition with the zero mode pinned to the normalized
//! all-ones vector, the Moore-Penrose pseudoinverse, and a numeric check of
//! the normal-mode decoupling of the oscillator energy.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::compensated_sum;

/// Relative factor of the zero-eigenvalue threshold `1e-9 * n * max_degree`.
pub const ZERO_EIGENVALUE_FACTOR: f64 = 1e-9;

/// Zero threshold for an `n`-vertex Laplacian with norm scale `scale`.
///
/// Capped at `1/n^2`: a connected graph has `lambda_1 >= 4 / (n * diameter)
/// >= 4 / n^2`, so long paths and cycles never lose their smallest mode.
pub fn zero_threshold(n: usize, scale: f64) -> f64 {
    let n = n as f64;
    (ZERO_EIGENVALUE_FACTOR * n * scale).min(1.0 / (n * n))
}

/// Eigenvalues in ascending order together with an orthonormal eigenbasis.
///
/// Column `k` of the basis is the unit eigenvector of `eigenvalues[k]`.
/// Column 0 is exactly `(1/sqrt(n)) * (1, ..., 1)` and `eigenvalues[0]` is
/// exactly zero. Every other column has its largest-magnitude entry positive.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    basis: DMatrix<f64>,
    zero_tolerance: f64,
}

impl Spectrum {
    /// Spectrum of the Laplacian of a connected graph.
    pub fn of_graph(g: &Graph) -> Result<Self> {
        g.require_connected()?;
        eigendecompose(&g.laplacian())
    }

    pub fn vertex_count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Threshold below which an eigenvalue counts as zero.
    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    /// Oscillator frequencies `sqrt(lambda_i)` for `i = 1..n`.
    pub fn frequencies(&self) -> Vec<f64> {
        self.eigenvalues[1..].iter().map(|l| l.sqrt()).collect()
    }

    /// The nonzero modes, as consumed by the thermodynamic routines.
    pub fn modes(&self) -> NormalModes {
        NormalModes {
            n: self.vertex_count(),
            lambdas: self.eigenvalues[1..].to_vec(),
        }
    }
}

/// Decomposes a symmetric positive-semidefinite Laplacian.
///
/// The matrix must have exactly one numerically zero eigenvalue, with the
/// all-ones vector spanning its kernel. More than one zero eigenvalue is
/// reported as [`Error::ZeroModeCount`], which for a graph Laplacian means the
/// graph is disconnected.
pub fn eigendecompose(l: &DMatrix<f64>) -> Result<Spectrum> {
    let n = l.nrows();
    if n == 0 || l.ncols() != n {
        return Err(Error::Domain(format!(
            "expected a non-empty square matrix, got {}x{}",
            l.nrows(),
            l.ncols()
        )));
    }
    let scale = l.amax().max(1.0);
    let asym = (l - l.transpose()).amax();
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }

    let max_degree = l.diagonal().max().max(1.0);
    let zero_tolerance = zero_threshold(n, max_degree);

    let eig = SymmetricEigen::new(l.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    if eigenvalues[0] < -zero_tolerance {
        return Err(Error::NegativeEigenvalue(eigenvalues[0]));
    }
    let zeros = eigenvalues.iter().filter(|&&v| v <= zero_tolerance).count();
    if zeros != 1 {
        return Err(Error::ZeroModeCount(zeros));
    }

    let mut basis = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        let pivot = col.iter().fold(0.0_f64, |best, &v| if v.abs() > best.abs() { v } else { best });
        if pivot < 0.0 {
            col.neg_mut();
        }
        basis.set_column(dst, &col);
    }

    let ones = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let alignment = basis.column(0).dot(&ones).abs();
    if alignment < 1.0 - 1e-6 {
        return Err(Error::Domain(
            "kernel is not spanned by the all-ones vector; not a connected-graph Laplacian".into(),
        ));
    }
    basis.set_column(0, &ones);

    let mut eigenvalues = eigenvalues;
    eigenvalues[0] = 0.0;
    Ok(Spectrum {
        eigenvalues,
        basis,
        zero_tolerance,
    })
}

/// Moore-Penrose pseudoinverse `S diag(0, 1/lambda_1, ..) S^T`.
pub fn pseudo_inverse(s: &Spectrum) -> Result<DMatrix<f64>> {
    if let Some(&small) = s.eigenvalues[1..].iter().find(|&&v| v <= s.zero_tolerance) {
        return Err(Error::Numerical(format!(
            "eigenvalue {small:e} below the zero threshold; pseudoinverse undefined for a connected graph"
        )));
    }
    let mut scaled = s.basis.clone();
    scaled.column_mut(0).fill(0.0);
    for k in 1..s.vertex_count() {
        scaled.column_mut(k).scale_mut(1.0 / s.eigenvalues[k]);
    }
    let pinv = &scaled * s.basis.transpose();
    Ok((&pinv + pinv.transpose()) * 0.5)
}

/// Largest absolute gap between the oscillator energy `p.p + q.Lq` and its
/// normal-mode form `sum_k (u_k.p)^2 + lambda_k (u_k.q)^2`, over `trials`
/// random `(q, p)` drawn uniformly from `[-1, 1]^n`.
pub fn decomposition_check<R: Rng + ?Sized>(
    g: &Graph,
    s: &Spectrum,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    let n = g.vertex_count();
    if s.vertex_count() != n {
        return Err(Error::Domain(format!(
            "spectrum has {} modes but graph has {n} vertices",
            s.vertex_count()
        )));
    }
    let lap = g.laplacian();
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let q = DVector::from_fn(n, |_, _| rng.random_range(-1.0..=1.0));
        let p = DVector::from_fn(n, |_, _| rng.random_range(-1.0..=1.0));
        worst = worst.max(decomposition_residual(&lap, s, &q, &p));
    }
    Ok(worst)
}

/// Residual of the normal-mode decomposition for one `(q, p)` pair.
pub fn decomposition_residual(
    lap: &DMatrix<f64>,
    s: &Spectrum,
    q: &DVector<f64>,
    p: &DVector<f64>,
) -> f64 {
    let direct = p.dot(p) + q.dot(&(lap * q));
    let modal = compensated_sum(s.basis.column_iter().zip(&s.eigenvalues).map(|(u, &lambda)| {
        let pk = u.dot(p);
        let qk = u.dot(q);
        pk * pk + lambda * qk * qk
    }));
    (direct - modal).abs()
}

/// The strictly positive Laplacian eigenvalues `lambda_1..lambda_{n-1}` of a
/// connected graph on `n` vertices, in no particular order.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalModes {
    n: usize,
    lambdas: Vec<f64>,
}

impl NormalModes {
    /// Takes a full Laplacian spectrum (any order) and removes its single
    /// zero eigenvalue, using [`zero_threshold`] with `max|lambda|` as scale.
    pub fn from_eigenvalues(eigenvalues: &[f64]) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 {
            return Err(Error::Domain("empty spectrum".into()));
        }
        if let Some(bad) = eigenvalues.iter().find(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!("non-finite eigenvalue {bad}")));
        }
        let scale = eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let tol = zero_threshold(n, scale);
        if let Some(&neg) = eigenvalues.iter().find(|&&v| v < -tol) {
            return Err(Error::NegativeEigenvalue(neg));
        }
        let zeros = eigenvalues.iter().filter(|&&v| v <= tol).count();
        if zeros != 1 {
            return Err(Error::ZeroModeCount(zeros));
        }
        Ok(NormalModes {
            n,
            lambdas: eigenvalues.iter().copied().filter(|&v| v > tol).collect(),
        })
    }

    /// Wraps an already-separated set of `n - 1` positive eigenvalues.
    pub fn new(n: usize, lambdas: Vec<f64>) -> Result<Self> {
        if n == 0 || lambdas.len() != n - 1 {
            return Err(Error::Domain(format!(
                "expected {} nonzero modes, got {}",
                n.saturating_sub(1),
                lambdas.len()
            )));
        }
        if let Some(&bad) = lambdas.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Numerical(format!("mode eigenvalue {bad} is not positive")));
        }
        Ok(NormalModes { n, lambdas })
    }

    /// Number of graph vertices (one more than the number of modes).
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.lambdas.iter().map(|l| l.sqrt())
    }
}
