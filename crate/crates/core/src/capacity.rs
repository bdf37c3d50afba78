//! Equilibrium measures, per-vertex Wiener capacities and the Kirchhoff index.
//!
//! For a connected graph the equilibrium measure `v_i` of `V \ {i}` is the
//! solution of `L v_i = 1 - n e_i` normalised by `(v_i)_i = 0`, and the
//! Wiener capacity is `cap(i) = sum_j (v_i)_j`. The average capacity equals
//! the Kirchhoff index `n * sum 1/lambda_k` and `n * tr(L^+)`; the profile
//! stores the spectral value and keeps the other two as cross-checks.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::compensated_sum;
use crate::spectral::{pseudo_inverse, NormalModes, Spectrum};

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityProfile {
    /// `cap(i)`, indexed by `vertex - 1`.
    pub per_vertex: Vec<f64>,
    /// Average Wiener capacity `(1/n) sum_i cap(i)`.
    pub average: f64,
    /// Kirchhoff index from the nonzero eigenvalues.
    pub kirchhoff: f64,
}

impl CapacityProfile {
    pub fn vertex_count(&self) -> usize {
        self.per_vertex.len()
    }

    /// `cap_bar / n`, the graph quantity that drives both thermodynamic bounds.
    pub fn ratio(&self) -> f64 {
        self.kirchhoff / self.vertex_count() as f64
    }
}

/// Kirchhoff index `R(G) = n * sum_k 1/lambda_k` over the nonzero modes.
pub fn kirchhoff_index(modes: &NormalModes) -> f64 {
    modes.vertex_count() as f64 * compensated_sum(modes.eigenvalues().iter().map(|l| 1.0 / l))
}

/// Holds the spectrum and pseudoinverse of one connected graph so that
/// per-vertex queries share a single eigendecomposition.
#[derive(Debug, Clone)]
pub struct CapacitySolver {
    spectrum: Spectrum,
    pinv: DMatrix<f64>,
}

impl CapacitySolver {
    pub fn new(g: &Graph) -> Result<Self> {
        let spectrum = Spectrum::of_graph(g)?;
        Self::from_spectrum(spectrum)
    }

    pub fn from_spectrum(spectrum: Spectrum) -> Result<Self> {
        let pinv = pseudo_inverse(&spectrum)?;
        Ok(CapacitySolver { spectrum, pinv })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn pseudo_inverse(&self) -> &DMatrix<f64> {
        &self.pinv
    }

    fn n(&self) -> usize {
        self.spectrum.vertex_count()
    }

    fn check_vertex(&self, vertex: usize) -> Result<usize> {
        if vertex == 0 || vertex > self.n() {
            Err(Error::VertexOutOfRange { vertex, n: self.n() })
        } else {
            Ok(vertex - 1)
        }
    }

    /// Equilibrium measure of `V \ {vertex}` (1-indexed vertex).
    ///
    /// `L^+ (1 - n e_i)` solves the singular system because the right-hand
    /// side sums to zero; the constant shift then fixes `(v_i)_i = 0`.
    pub fn equilibrium_measure(&self, vertex: usize) -> Result<DVector<f64>> {
        let i = self.check_vertex(vertex)?;
        let n = self.n();
        let mut rhs = DVector::from_element(n, 1.0);
        rhs[i] -= n as f64;
        let mut v = &self.pinv * rhs;
        let shift = v[i];
        v.add_scalar_mut(-shift);
        v[i] = 0.0;
        Ok(v)
    }

    pub fn wiener_capacity(&self, vertex: usize) -> Result<f64> {
        let v = self.equilibrium_measure(vertex)?;
        Ok(compensated_sum(v.iter().copied()))
    }

    /// `n * tr(L^+)`, the pseudoinverse route to the Kirchhoff index.
    pub fn pinv_trace_route(&self) -> f64 {
        self.n() as f64 * compensated_sum(self.pinv.diagonal().iter().copied())
    }

    pub fn profile(&self) -> Result<CapacityProfile> {
        let per_vertex = (1..=self.n())
            .map(|v| self.wiener_capacity(v))
            .collect::<Result<Vec<_>>>()?;
        let average = compensated_sum(per_vertex.iter().copied()) / self.n() as f64;
        Ok(CapacityProfile {
            per_vertex,
            average,
            kirchhoff: kirchhoff_index(&self.spectrum.modes()),
        })
    }
}

pub fn equilibrium_measure(g: &Graph, vertex: usize) -> Result<DVector<f64>> {
    CapacitySolver::new(g)?.equilibrium_measure(vertex)
}

pub fn wiener_capacity(g: &Graph, vertex: usize) -> Result<f64> {
    CapacitySolver::new(g)?.wiener_capacity(vertex)
}

pub fn capacity_profile(g: &Graph) -> Result<CapacityProfile> {
    CapacitySolver::new(g)?.profile()
}
