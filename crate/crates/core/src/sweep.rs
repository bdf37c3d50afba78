//! Parameter sweeps over circulant families: thermodynamics against graph
//! size, capacity ratio against size, specific heat against neighbourhood
//! width, and the specific-heat bound against temperature.
//!
//! All sweeps use closed-form spectra and evaluate points in parallel; output
//! order is fixed by the sweep index.

use rayon::prelude::*;

use crate::bounds::{heat_bound_threshold_temperature, heat_bound_value};
use crate::capacity::kirchhoff_index;
use crate::circulant::circulant_eigenvalues;
use crate::error::{require_positive, Error, Result};
use crate::spectral::NormalModes;
use crate::thermo::thermo_point;

/// `l = floor((n/2)^r)`, clamped into the admissible range `1..=(n-1)/2`.
pub fn neighbours_for_power(n: usize, r: f64) -> Result<usize> {
    if n < 3 {
        return Err(Error::Domain(format!("circulant family needs n >= 3, got {n}")));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("power r = {r} outside [0, 1]")));
    }
    let raw = (n as f64 / 2.0).powf(r).floor() as usize;
    Ok(raw.clamp(1, (n - 1) / 2))
}

/// Spectrum `{0, n, ..., n}` of the complete graph `K_n`.
pub fn complete_modes(n: usize) -> Result<NormalModes> {
    NormalModes::new(n, vec![n as f64; n.saturating_sub(1)])
}

/// Modes of `Ci(n, l)`; when `2l + 1 = n` the graph is `K_n` and its exact
/// spectrum is used.
pub fn circulant_modes(n: usize, l: usize) -> Result<NormalModes> {
    if 2 * l + 1 == n {
        complete_modes(n)
    } else {
        Ok(circulant_eigenvalues(n, l)?.modes())
    }
}

/// Inclusive grid `start, start + step, ...` up to `stop` (with a little
/// slack for rounding).
pub fn float_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::Domain(format!("empty range {start}:{stop}:{step}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// One CSV cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Flag(bool),
}

/// A sweep record with a fixed column layout.
pub trait SweepRow {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

fn ensure_finite<R: SweepRow>(rows: &[R]) -> Result<()> {
    for row in rows {
        for cell in row.cells() {
            if let Cell::Real(v) = cell {
                if !v.is_finite() {
                    return Err(Error::Numerical(format!("non-finite sweep value {v}")));
                }
            }
        }
    }
    Ok(())
}

fn check_ns(ns: &[usize]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::Domain("empty n range".into()));
    }
    Ok(())
}

fn check_rs(rs: &[f64]) -> Result<()> {
    if rs.is_empty() {
        return Err(Error::Domain("no r values".into()));
    }
    if let Some(r) = rs.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(Error::Domain(format!("power r = {r} outside [0, 1]")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhononRow {
    pub r: f64,
    pub n: usize,
    pub l: usize,
    pub beta: f64,
    pub avg_n: f64,
    pub heat: f64,
}

impl SweepRow for PhononRow {
    const COLUMNS: &'static [&'static str] = &["r", "n", "l", "beta", "avg_n", "heat"];
    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Real(self.r),
            Cell::Int(self.n as u64),
            Cell::Int(self.l as u64),
            Cell::Real(self.beta),
            Cell::Real(self.avg_n),
            Cell::Real(self.heat),
        ]
    }
}

/// `<N>` and `c(beta)` of `Ci(n, floor((n/2)^r))` for every `(r, n)`, grouped by `r`.
pub fn phonons_vs_n(ns: &[usize], rs: &[f64], beta: f64) -> Result<Vec<PhononRow>> {
    check_ns(ns)?;
    check_rs(rs)?;
    require_positive("beta", beta)?;
    let points: Vec<(f64, usize)> = rs.iter().flat_map(|&r| ns.iter().map(move |&n| (r, n))).collect();
    let rows = points
        .par_iter()
        .map(|&(r, n)| {
            let l = neighbours_for_power(n, r)?;
            let tp = thermo_point(&circulant_modes(n, l)?, beta)?;
            Ok(PhononRow { r, n, l, beta, avg_n: tp.avg_n, heat: tp.heat })
        })
        .collect::<Result<Vec<_>>>()?;
    ensure_finite(&rows)?;
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityRow {
    pub r: f64,
    pub n: usize,
    pub l: usize,
    /// `cap_bar / n`.
    pub cap_ratio: f64,
}

impl SweepRow for CapacityRow {
    const COLUMNS: &'static [&'static str] = &["r", "n", "l", "cap_over_n"];
    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Real(self.r),
            Cell::Int(self.n as u64),
            Cell::Int(self.l as u64),
            Cell::Real(self.cap_ratio),
        ]
    }
}

pub fn cap_vs_n(ns: &[usize], rs: &[f64]) -> Result<Vec<CapacityRow>> {
    check_ns(ns)?;
    check_rs(rs)?;
    let points: Vec<(f64, usize)> = rs.iter().flat_map(|&r| ns.iter().map(move |&n| (r, n))).collect();
    let rows = points
        .par_iter()
        .map(|&(r, n)| {
            let l = neighbours_for_power(n, r)?;
            let cap = kirchhoff_index(&circulant_modes(n, l)?);
            Ok(CapacityRow { r, n, l, cap_ratio: cap / n as f64 })
        })
        .collect::<Result<Vec<_>>>()?;
    ensure_finite(&rows)?;
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatRow {
    pub n: usize,
    pub l: usize,
    pub beta: f64,
    pub heat: f64,
    /// Marks the appended complete-graph point.
    pub complete: bool,
}

impl SweepRow for HeatRow {
    const COLUMNS: &'static [&'static str] = &["n", "l", "beta", "heat", "complete"];
    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Int(self.n as u64),
            Cell::Int(self.l as u64),
            Cell::Real(self.beta),
            Cell::Real(self.heat),
            Cell::Flag(self.complete),
        ]
    }
}

/// Specific heat of `Ci(n, l)` across `ls` at fixed `beta`. With
/// `include_complete`, `K_n` is appended as a final row labelled `l = n/2`.
pub fn heat_vs_l(n: usize, ls: &[usize], beta: f64, include_complete: bool) -> Result<Vec<HeatRow>> {
    if ls.is_empty() {
        return Err(Error::Domain("empty l range".into()));
    }
    require_positive("beta", beta)?;
    let mut rows = ls
        .par_iter()
        .map(|&l| {
            let tp = thermo_point(&circulant_eigenvalues(n, l)?.modes(), beta)?;
            Ok(HeatRow { n, l, beta, heat: tp.heat, complete: false })
        })
        .collect::<Result<Vec<_>>>()?;
    if include_complete {
        let tp = thermo_point(&complete_modes(n)?, beta)?;
        rows.push(HeatRow { n, l: n / 2, beta, heat: tp.heat, complete: true });
    }
    ensure_finite(&rows)?;
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    pub l: usize,
    pub temperature: f64,
    pub beta: f64,
    /// Exact specific heat.
    pub exact: f64,
    /// `alpha_E r / (1 + r)`, evaluated at every temperature.
    pub bound: f64,
    /// `sqrt(n / cap_bar)`, the top of the bound's validity range.
    pub threshold: f64,
    /// True when `temperature < threshold`.
    pub valid: bool,
}

impl SweepRow for BoundRow {
    const COLUMNS: &'static [&'static str] =
        &["n", "l", "T", "beta", "exact_heat", "heat_bound", "threshold_T", "valid"];
    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Int(self.n as u64),
            Cell::Int(self.l as u64),
            Cell::Real(self.temperature),
            Cell::Real(self.beta),
            Cell::Real(self.exact),
            Cell::Real(self.bound),
            Cell::Real(self.threshold),
            Cell::Flag(self.valid),
        ]
    }
}

/// Exact specific heat and its bound along a temperature grid, per `l`.
pub fn bound_vs_t(n: usize, ls: &[usize], temperatures: &[f64]) -> Result<Vec<BoundRow>> {
    if ls.is_empty() || temperatures.is_empty() {
        return Err(Error::Domain("empty l or temperature range".into()));
    }
    for &t in temperatures {
        require_positive("temperature", t)?;
    }
    let mut rows = Vec::with_capacity(ls.len() * temperatures.len());
    for &l in ls {
        let modes = circulant_modes(n, l)?;
        let cap = kirchhoff_index(&modes);
        let threshold = heat_bound_threshold_temperature(cap, n);
        let block = temperatures
            .par_iter()
            .map(|&t| {
                let beta = 1.0 / t;
                Ok(BoundRow {
                    n,
                    l,
                    temperature: t,
                    beta,
                    exact: thermo_point(&modes, beta)?.heat,
                    bound: heat_bound_value(cap, n, beta)?,
                    threshold,
                    valid: t < threshold,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(block);
    }
    ensure_finite(&rows)?;
    Ok(rows)
}

/// First temperature in `(0, t_max]` at which the heat bound falls below the
/// exact specific heat, located on a grid of spacing `step` and refined by
/// bisection. `None` if the bound holds on the whole interval.
pub fn heat_bound_breakdown(modes: &NormalModes, t_max: f64, step: f64) -> Result<Option<f64>> {
    require_positive("t_max", t_max)?;
    require_positive("step", step)?;
    let n = modes.vertex_count();
    let cap = kirchhoff_index(modes);
    let fails = |t: f64| -> Result<bool> {
        let beta = 1.0 / t;
        Ok(thermo_point(modes, beta)?.heat > heat_bound_value(cap, n, beta)?)
    };
    let mut prev = 0.0;
    for t in float_grid(step, t_max, step)? {
        if fails(t)? {
            let (mut lo, mut hi) = (prev, t);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if mid <= 0.0 || fails(mid)? {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Some(hi));
        }
        prev = t;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use crate::spectral::Spectrum;

    #[test]
    fn neighbour_rule() {
        assert_eq!(neighbours_for_power(1000, 0.0).unwrap(), 1);
        assert_eq!(neighbours_for_power(1000, 1.0).unwrap(), 499);
        assert_eq!(neighbours_for_power(11, 1.0).unwrap(), 5);
        assert_eq!(neighbours_for_power(1000, 0.4).unwrap(), 12);
        assert!(neighbours_for_power(2, 0.5).is_err());
        assert!(neighbours_for_power(10, 1.5).is_err());
    }

    #[test]
    fn complete_modes_match_dense() {
        let dense = Spectrum::of_graph(&generate(&GeneratorSpec::Complete { n: 9 }).unwrap()).unwrap();
        let mut exact = complete_modes(9).unwrap().eigenvalues().to_vec();
        exact.insert(0, 0.0);
        for (a, b) in exact.iter().zip(dense.eigenvalues()) {
            assert!((a - b).abs() < 1e-12);
        }
        let via_circulant = circulant_modes(9, 4).unwrap();
        assert_eq!(via_circulant, complete_modes(9).unwrap());
    }

    #[test]
    fn grid_endpoints() {
        let g = float_grid(0.1, 0.3, 0.1).unwrap();
        assert_eq!(g.len(), 3);
        assert!((g[2] - 0.3).abs() < 1e-15);
        assert!(float_grid(1.0, 0.0, 0.1).is_err());
        assert!(float_grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn sweeps_preserve_order() {
        let rows = phonons_vs_n(&[10, 20, 30], &[0.0, 1.0], 1.0).unwrap();
        let keys: Vec<(f64, usize)> = rows.iter().map(|r| (r.r, r.n)).collect();
        assert_eq!(keys, vec![(0.0, 10), (0.0, 20), (0.0, 30), (1.0, 10), (1.0, 20), (1.0, 30)]);
        assert!(phonons_vs_n(&[], &[0.0], 1.0).is_err());
        assert!(phonons_vs_n(&[10], &[1.2], 1.0).is_err());
        assert!(phonons_vs_n(&[10], &[0.5], 0.0).is_err());
    }

    #[test]
    fn cycle_capacity_ratio_grows() {
        // cap_bar(C_n) = (n^3 - n) / 12
        let rows = cap_vs_n(&[10, 20, 40, 80], &[0.0]).unwrap();
        for row in &rows {
            let n = row.n as f64;
            assert!((row.cap_ratio - (n * n - 1.0) / 12.0).abs() < 1e-9 * row.cap_ratio);
        }
        assert!(rows.windows(2).all(|w| w[0].cap_ratio < w[1].cap_ratio));
    }

    #[test]
    fn heat_sweep_appends_complete() {
        let rows = heat_vs_l(20, &[1, 2, 9], 1.0, true).unwrap();
        assert_eq!(rows.len(), 4);
        let last = rows.last().unwrap();
        assert!(last.complete && last.l == 10);
        assert!(last.heat < rows[2].heat);
        assert!(heat_vs_l(20, &[10], 1.0, false).is_err());
    }

    #[test]
    fn bound_rows_flag_validity() {
        let rows = bound_vs_t(100, &[10], &[0.1, 0.5, 2.0, 5.0]).unwrap();
        let threshold = rows[0].threshold;
        for row in &rows {
            assert_eq!(row.valid, row.temperature < threshold);
            if row.valid {
                assert!(row.bound > row.exact);
            }
        }
    }

    #[test]
    fn breakdown_found_above_threshold() {
        let modes = circulant_modes(200, 20).unwrap();
        let cap = kirchhoff_index(&modes);
        let threshold = heat_bound_threshold_temperature(cap, 200);
        let t = heat_bound_breakdown(&modes, 10.0, 0.01).unwrap().unwrap();
        assert!(t >= threshold);
        let nf = 200.0;
        let beta = 1.0 / t;
        let c = thermo_point(&modes, beta).unwrap().heat;
        let b = heat_bound_value(cap, 200, beta).unwrap();
        assert!(((c - b) / b).abs() < 1e-9 * nf);
    }
}
