//! Phonon-gas thermodynamics of the network oscillator in the
//! centre-of-momentum frame (units with `hbar = m = k_B = 1`).
//!
//! Only the `n - 1` positive modes `omega_i = sqrt(lambda_i)` contribute; the
//! zero mode carries the free total momentum and is dropped.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};
use crate::numeric::compensated_sum;
use crate::spectral::NormalModes;

/// Above this `beta * omega` the exponentials are evaluated as `e^-x`.
const LARGE_X: f64 = 700.0;
/// Below this `beta * omega` the leading series terms are used.
const SMALL_X: f64 = 1e-8;

/// Bose-Einstein occupation `1 / (e^x - 1)` for `x > 0`.
pub fn bose_einstein(x: f64) -> f64 {
    if x > LARGE_X {
        let t = (-x).exp();
        t / (1.0 - t)
    } else if x < SMALL_X {
        1.0 / x - 0.5
    } else {
        1.0 / x.exp_m1()
    }
}

/// Einstein function `x^2 e^x / (e^x - 1)^2`, the heat capacity of one mode.
pub fn einstein(x: f64) -> f64 {
    if x < SMALL_X {
        1.0 - x * x / 12.0
    } else {
        // x^2 e^-x / (1 - e^-x)^2 never overflows
        let d = -(-x).exp_m1();
        x * x * (-x).exp() / (d * d)
    }
}

/// Average occupation `<N_i>` of a mode of frequency `omega` at inverse
/// temperature `beta`.
pub fn mode_occupation(omega: f64, beta: f64) -> Result<f64> {
    require_positive("omega", omega)?;
    require_positive("beta", beta)?;
    Ok(bose_einstein(beta * omega))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub beta: f64,
    /// Total average phonon number `<N>`.
    pub avg_n: f64,
    /// Mean energy `<H>`, zero-point energy included.
    pub avg_h: f64,
    /// Thermal part `<H> - sum_i omega_i / 2` of the mean energy.
    pub thermal_energy: f64,
    /// Specific heat `c(beta) = -beta^2 d<H>/d(beta)`.
    pub heat: f64,
}

pub fn thermo_point(modes: &NormalModes, beta: f64) -> Result<ThermoPoint> {
    require_positive("beta", beta)?;
    let omegas: Vec<f64> = modes.frequencies().collect();
    let avg_n = compensated_sum(omegas.iter().map(|&w| bose_einstein(beta * w)));
    let thermal = compensated_sum(omegas.iter().map(|&w| w * bose_einstein(beta * w)));
    let zero_point = 0.5 * compensated_sum(omegas.iter().copied());
    let heat = compensated_sum(omegas.iter().map(|&w| einstein(beta * w)));
    Ok(ThermoPoint {
        beta,
        avg_n,
        avg_h: thermal + zero_point,
        thermal_energy: thermal,
        heat,
    })
}

/// Convenience entry point taking a full Laplacian spectrum, zero included.
pub fn thermo_point_from_eigenvalues(eigenvalues: &[f64], beta: f64) -> Result<ThermoPoint> {
    thermo_point(&NormalModes::from_eigenvalues(eigenvalues)?, beta)
}

/// Degeneracy indicator `<N> * sqrt(2 pi beta) / V`; values of order one
/// mark the quantum regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeIndicator {
    pub value: f64,
    pub volume: f64,
}

pub fn regime_indicator(tp: &ThermoPoint, volume: f64) -> Result<RegimeIndicator> {
    require_positive("volume", volume)?;
    if !(tp.avg_n >= 0.0) {
        return Err(Error::Domain(format!("negative phonon number {}", tp.avg_n)));
    }
    Ok(RegimeIndicator {
        value: tp.avg_n * (2.0 * PI * tp.beta).sqrt() / volume,
        volume,
    })
}
