//! Bound constants, the phonon-number and specific-heat bounds in terms of the
//! average Wiener capacity, and the bounded/divergent classification of graph
//! families.
//!
//! The two scalar inequalities behind the bounds hold for every `x > 0`:
//!
//! ```text
//! 1 / (e^x - 1)          <= alpha_N(k) / x^k,   k = 2, 3, ...
//! x^2 e^x / (e^x - 1)^2  <= alpha_E / (x^2 + 1)
//! ```
//!
//! `alpha_N(k)` is the maximum of `x^k / (e^x - 1)`, attained at
//! `x = W0(-k e^-k) + k`. `alpha_E` is the maximum of
//! `(x^2 + 1) x^2 e^x / (e^x - 1)^2`, attained at the unique positive root of
//! `g(x) = x + 2 + (x + 4) x^2 + e^x (x^3 - 4x^2 + x - 2)`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::capacity::kirchhoff_index;
use crate::circulant::circulant_eigenvalues;
use crate::error::{require_positive, Error, Result};
use crate::graph::{generate, GeneratorSpec};
use crate::numeric::{compensated_sum, fit_slope};
use crate::spectral::{NormalModes, Spectrum};
use crate::thermo::{bose_einstein, einstein, thermo_point};

const MAX_HALLEY_STEPS: usize = 64;

/// Principal branch `W0` of the Lambert W function, defined for `x >= -1/e`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    let branch_point = -(-1.0_f64).exp();
    if x.is_nan() || x < branch_point {
        return Err(Error::Domain(format!("lambert_w0 needs x >= -1/e, got {x}")));
    }
    if x == branch_point {
        return Ok(-1.0);
    }
    if x == 0.0 || x == f64::INFINITY {
        return Ok(x);
    }

    let mut w = if x < -0.25 {
        // series about the branch point in p = sqrt(2 (e x + 1))
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x < 3.0 {
        let l = x.ln_1p();
        l * (1.0 - (1.0 + l).ln() / (2.0 + l))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    for _ in 0..MAX_HALLEY_STEPS {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

/// Point `W0(-k e^-k) + k` where `x^k / (e^x - 1)` peaks.
pub fn alpha_n_maximizer(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain(format!("alpha_N needs k >= 2, got {k}")));
    }
    let kf = f64::from(k);
    Ok(lambert_w0(-kf * (-kf).exp())? + kf)
}

/// `alpha_N(k) = -W(-k e^-k) (W(-k e^-k) + k)^(k-1)` on the principal branch.
pub fn alpha_n(k: u32) -> Result<f64> {
    let x_star = alpha_n_maximizer(k)?;
    let w = x_star - f64::from(k);
    Ok(-w * x_star.powi(k as i32 - 1))
}

/// The polynomial-exponential whose positive root locates the maximum of
/// `(x^2 + 1) x^2 e^x / (e^x - 1)^2`.
pub fn einstein_root_function(x: f64) -> f64 {
    x + 2.0 + (x + 4.0) * x * x + x.exp() * (x * x * x - 4.0 * x * x + x - 2.0)
}

fn einstein_root_derivative(x: f64) -> f64 {
    x * (3.0 * x + 8.0) + x.exp() * (x * ((x - 1.0) * x - 7.0) - 1.0) + 1.0
}

/// Positive root of `x^3 - 4x^2 + x - 2`; the Einstein root lies below it.
pub fn einstein_root_upper_bound() -> f64 {
    let r = 6.0 * 87f64.sqrt();
    ((r + 73.0).cbrt() + (73.0 - r).cbrt() + 4.0) / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaE {
    /// Positive root of [`einstein_root_function`].
    pub x_star: f64,
    pub alpha: f64,
}

/// Computes `alpha_E` by bisection on `[1, s0]` followed by Newton polishing.
pub fn alpha_e() -> Result<AlphaE> {
    let g = einstein_root_function;
    let (mut lo, mut hi) = (1.0_f64, einstein_root_upper_bound());
    if !(g(lo) < 0.0 && g(hi) > 0.0) {
        return Err(Error::Numerical(format!(
            "root of g not bracketed: g({lo}) = {}, g({hi}) = {}",
            g(lo),
            g(hi)
        )));
    }
    while hi - lo > 2.0 * f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = if g(lo).abs() < g(hi).abs() { lo } else { hi };
    for _ in 0..3 {
        let candidate = x - g(x) / einstein_root_derivative(x);
        if g(candidate).abs() < g(x).abs() {
            x = candidate;
        } else {
            break;
        }
    }
    let alpha = (x * x + 1.0) * einstein(x);
    Ok(AlphaE { x_star: x, alpha })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundConstants {
    pub alpha_n: BTreeMap<u32, f64>,
    pub alpha_e: f64,
    pub x_star_e: f64,
}

/// Constants computed once per process: `alpha_N(2..=5)`, `alpha_E`, `x*_E`.
pub fn constants() -> &'static BoundConstants {
    static CONSTANTS: OnceLock<BoundConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        let alpha_n = (2..=5)
            .map(|k| (k, alpha_n(k).expect("k >= 2")))
            .collect();
        let e = alpha_e().expect("g(1) < 0 < g(s0) holds analytically");
        BoundConstants {
            alpha_n,
            alpha_e: e.alpha,
            x_star_e: e.x_star,
        }
    })
}

fn capacity_ratio(average_capacity: f64, n: usize, beta: f64) -> Result<f64> {
    require_positive("beta", beta)?;
    require_positive("average capacity", average_capacity)?;
    if n == 0 {
        return Err(Error::Domain("vertex count must be positive".into()));
    }
    Ok(average_capacity / (beta * beta * n as f64))
}

/// Upper bound `alpha_N(2) cap_bar / (beta^2 n)` on the total phonon number.
/// Holds at every temperature.
pub fn phonon_bound(average_capacity: f64, n: usize, beta: f64) -> Result<f64> {
    Ok(constants().alpha_n[&2] * capacity_ratio(average_capacity, n, beta)?)
}

/// `alpha_E r / (1 + r)` with `r = cap_bar / (beta^2 n)`, evaluated without
/// checking the validity condition `beta^2 > cap_bar / n`.
pub fn heat_bound_value(average_capacity: f64, n: usize, beta: f64) -> Result<f64> {
    let r = capacity_ratio(average_capacity, n, beta)?;
    Ok(constants().alpha_e * r / (1.0 + r))
}

/// The closed-form specific-heat bound `alpha_E r / (1 + r)`, or `None`
/// outside its stated validity range (`beta^2 <= cap_bar / n`).
///
/// This is not a rigorous bound for every graph. With
/// `y_i = 1 / (beta^2 lambda_i)` and `r = sum_i y_i`, concavity of
/// `y -> y / (1 + y)` makes `sum_i y_i / (1 + y_i)` exceed `r / (1 + r)`
/// whenever more than one mode contributes. `K_3` at `beta = 2` is a counterexample. See
/// [`heat_bound_termwise`] for the rigorous version.
pub fn heat_bound(average_capacity: f64, n: usize, beta: f64) -> Result<Option<f64>> {
    let r = capacity_ratio(average_capacity, n, beta)?;
    if r < 1.0 {
        Ok(Some(constants().alpha_e * r / (1.0 + r)))
    } else {
        Ok(None)
    }
}

/// Rigorous specific-heat bound `alpha_E sum_i 1 / (beta^2 lambda_i + 1)`,
/// valid at every temperature.
pub fn heat_bound_termwise(modes: &NormalModes, beta: f64) -> Result<f64> {
    require_positive("beta", beta)?;
    let b2 = beta * beta;
    let sum = compensated_sum(modes.eigenvalues().iter().map(|&l| 1.0 / (b2 * l + 1.0)));
    Ok(constants().alpha_e * sum)
}

/// Temperature `sqrt(n / cap_bar)` below which the heat bound applies.
pub fn heat_bound_threshold_temperature(average_capacity: f64, n: usize) -> f64 {
    (n as f64 / average_capacity).sqrt()
}

/// Largest violation of the two scalar inequalities over `grid`. Values at or
/// below zero mean both hold at every grid point.
pub fn check_function_bounds(k: u32, grid: &[f64]) -> Result<f64> {
    let a_n = alpha_n(k)?;
    let a_e = constants().alpha_e;
    let mut worst = f64::NEG_INFINITY;
    for &x in grid {
        require_positive("grid point", x)?;
        let occupation = bose_einstein(x) - a_n / x.powi(k as i32);
        let heat = einstein(x) - a_e / (x * x + 1.0);
        worst = worst.max(occupation.max(heat));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub beta: f64,
    /// `cap_bar / n`.
    pub cap_ratio: f64,
    pub phonon_bound: f64,
    pub phonon_actual: f64,
    pub heat_bound: Option<f64>,
    pub heat_actual: f64,
    pub holds_n: bool,
    /// `None` when the heat bound does not apply at this `beta`.
    pub holds_c: Option<bool>,
}

/// Evaluates both bounds against the exact thermodynamics of `modes`.
pub fn bound_report(modes: &NormalModes, beta: f64) -> Result<BoundReport> {
    let n = modes.vertex_count();
    let cap = kirchhoff_index(modes);
    let tp = thermo_point(modes, beta)?;
    let phonon = phonon_bound(cap, n, beta)?;
    let heat = heat_bound(cap, n, beta)?;
    Ok(BoundReport {
        beta,
        cap_ratio: cap / n as f64,
        phonon_bound: phonon,
        phonon_actual: tp.avg_n,
        heat_bound: heat,
        heat_actual: tp.heat,
        holds_n: tp.avg_n <= phonon,
        holds_c: heat.map(|b| tp.heat < b),
    })
}

/// Average Wiener capacity of a generated graph. Circulant families use the
/// closed-form spectrum, everything else the dense eigensolver.
pub fn average_capacity_of(spec: &GeneratorSpec) -> Result<f64> {
    let modes = match *spec {
        GeneratorSpec::Circulant { n, l } => circulant_eigenvalues(n, l)?.modes(),
        GeneratorSpec::Cycle { n } => circulant_eigenvalues(n, 1)?.modes(),
        _ => Spectrum::of_graph(&generate(spec)?)?.modes(),
    };
    Ok(kirchhoff_index(&modes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Verdict is bounded iff the fitted exponent is at most `1 + slope_tolerance`.
    pub slope_tolerance: f64,
    /// Fraction of the largest sample sizes used in the fit.
    pub window: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            slope_tolerance: 0.1,
            window: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyClassification {
    pub family: String,
    /// `(n, cap_bar / n)` per sample size.
    pub samples: Vec<(usize, f64)>,
    /// Least-squares exponent of `cap_bar` against `n` (log-log).
    pub slope: f64,
    pub verdict: Verdict,
}

/// Classifies a graph family by the growth of its average Wiener capacity.
/// Linear growth keeps `<N>` bounded across the family at every temperature.
pub fn classify_family<F>(
    name: &str,
    family: F,
    ns: &[usize],
    options: ClassifyOptions,
) -> Result<FamilyClassification>
where
    F: Fn(usize) -> GeneratorSpec,
{
    if ns.len() < 4 {
        return Err(Error::Domain(format!(
            "need at least 4 sample sizes, got {}",
            ns.len()
        )));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("sample sizes must be strictly increasing".into()));
    }
    if !(options.window > 0.0 && options.window <= 1.0) {
        return Err(Error::Domain(format!("fit window {} outside (0, 1]", options.window)));
    }
    let samples = ns
        .iter()
        .map(|&n| {
            let spec = family(n);
            let cap = average_capacity_of(&spec)?;
            Ok((spec.vertex_count(), cap / spec.vertex_count() as f64))
        })
        .collect::<Result<Vec<_>>>()?;

    let fit_len = ((samples.len() as f64 * options.window).ceil() as usize).max(2);
    let tail = &samples[samples.len() - fit_len..];
    let xs: Vec<f64> = tail.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|&(n, r)| (r * n as f64).ln()).collect();
    let slope = fit_slope(&xs, &ys);
    let verdict = if slope <= 1.0 + options.slope_tolerance {
        Verdict::Bounded
    } else {
        Verdict::Divergent
    };
    Ok(FamilyClassification {
        family: name.to_string(),
        samples,
        slope,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::capacity_profile;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Golden-section maximisation on `[lo, hi]`; independent of the closed forms.
    fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        let mut a = hi - ratio * (hi - lo);
        let mut b = lo + ratio * (hi - lo);
        let (mut fa, mut fb) = (f(a), f(b));
        for _ in 0..200 {
            if fa < fb {
                lo = a;
                a = b;
                fa = fb;
                b = lo + ratio * (hi - lo);
                fb = f(b);
            } else {
                hi = b;
                b = a;
                fb = fa;
                a = hi - ratio * (hi - lo);
                fa = f(a);
            }
        }
        let x = 0.5 * (lo + hi);
        (x, f(x))
    }

    #[test]
    fn lambert_examples() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        let w = lambert_w0(-2.0 * (-2.0f64).exp()).unwrap();
        assert!((w - -0.406376).abs() < 1e-6);
        assert!((w * w.exp() + 2.0 * (-2.0f64).exp()).abs() < 1e-16);
        assert_eq!(lambert_w0(-(-1.0f64).exp()).unwrap(), -1.0);
        assert!(lambert_w0(-0.5).is_err());
        assert!(lambert_w0(f64::NAN).is_err());
    }

    #[test]
    fn lambert_residual_across_range() {
        let lo = -(-1.0f64).exp() + 1e-12;
        let mut xs: Vec<f64> = (0..=2000).map(|i| lo + (0.0 - lo) * i as f64 / 2000.0).collect();
        xs.extend((0..=2000).map(|i| 10f64.powf(-12.0 + 18.0 * i as f64 / 2000.0)));
        for x in xs {
            let w = lambert_w0(x).unwrap();
            assert!(w >= -1.0);
            let residual = (w * w.exp() - x).abs();
            assert!(residual <= 1e-12 * x.abs().max(1.0), "x={x} w={w} residual={residual}");
        }
    }

    #[test]
    fn alpha_n_values() {
        for (k, expected) in [(2, 0.648), (3, 1.421), (4, 4.780), (5, 21.201)] {
            assert!((alpha_n(k).unwrap() - expected).abs() <= 5e-4, "k={k}");
        }
        assert!(alpha_n(1).is_err());
        assert!(alpha_n(0).is_err());
    }

    #[test]
    fn alpha_n_is_the_maximum() {
        for k in 2..=6 {
            let (_, max) = golden_max(|x| x.powi(k as i32) / x.exp_m1(), 1e-6, 60.0);
            let a = alpha_n(k).unwrap();
            assert!((a - max).abs() <= 1e-9 * a.max(1.0), "k={k} {a} vs {max}");
        }
    }

    #[test]
    fn alpha_e_value_and_root() {
        let e = alpha_e().unwrap();
        assert!((e.alpha - 5.23).abs() <= 0.005);
        assert!(einstein_root_function(e.x_star).abs() <= 1e-10);
        let s0 = einstein_root_upper_bound();
        assert!((s0 - 3.875130).abs() < 1e-6);
        assert!(e.x_star > 0.0 && e.x_star < s0);
        assert!(einstein_root_function(1.0) < 0.0);
        assert!(einstein_root_function(s0) > 0.0);
        // s0 is a root of the cubic factor
        assert!((s0.powi(3) - 4.0 * s0 * s0 + s0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn alpha_e_is_the_maximum() {
        let f = |x: f64| (x * x + 1.0) * einstein(x);
        let (x, max) = golden_max(f, 1e-6, 50.0);
        let e = alpha_e().unwrap();
        assert!((e.alpha - max).abs() <= 1e-9 * e.alpha);
        assert!((e.x_star - x).abs() < 1e-6);
    }

    #[test]
    fn function_bounds_attained_and_tails() {
        for k in 2..=5 {
            let x = alpha_n_maximizer(k).unwrap();
            let gap = bose_einstein(x) - alpha_n(k).unwrap() / x.powi(k as i32);
            assert!(gap.abs() <= 1e-10);
        }
        let c = constants();
        let x = c.x_star_e;
        assert!((einstein(x) - c.alpha_e / (x * x + 1.0)).abs() <= 1e-10);
        assert!(check_function_bounds(2, &[1e-6, 50.0]).unwrap() < 0.0);
        assert!(check_function_bounds(2, &[0.0]).is_err());
    }

    #[test]
    fn function_bounds_on_log_grid() {
        let grid: Vec<f64> = (0..10_000)
            .map(|i| 10f64.powf(-6.0 + (50f64.log10() + 6.0) * i as f64 / 9_999.0))
            .collect();
        for k in 2..=5 {
            assert!(check_function_bounds(k, &grid).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn constants_table() {
        let c = constants();
        assert_eq!(c.alpha_n.keys().copied().collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        assert!((c.alpha_n[&2] - 0.6476).abs() < 1e-4);
    }

    #[test]
    fn k2_phonon_bound_is_nearly_tight() {
        let modes = NormalModes::from_eigenvalues(&[0.0, 2.0]).unwrap();
        let report = bound_report(&modes, 1.0).unwrap();
        assert!((report.cap_ratio - 0.5).abs() < 1e-15);
        assert!((report.phonon_bound - 0.324).abs() < 1e-3);
        assert!(report.holds_n);
        assert!(report.phonon_actual / report.phonon_bound >= 0.99);
    }

    #[test]
    fn complete_and_path_bound_forms() {
        let a2 = constants().alpha_n[&2];
        for n in [3, 10, 40] {
            let k = capacity_profile(&generate(&GeneratorSpec::Complete { n }).unwrap()).unwrap();
            for beta in [0.3, 1.0, 4.0] {
                let b = phonon_bound(k.average, n, beta).unwrap();
                assert!(b * beta * beta < a2);
            }
            let p = capacity_profile(&generate(&GeneratorSpec::Path { n }).unwrap()).unwrap();
            let b = phonon_bound(p.average, n, 1.0).unwrap();
            let nf = n as f64;
            assert!((b - a2 * (nf * nf - 1.0) / 6.0).abs() <= 1e-9 * b);
        }
    }

    #[test]
    fn heat_bound_validity() {
        // cap_bar / n = 4 / 5 for K5: threshold beta^2 = 0.8
        assert_eq!(heat_bound(4.0, 5, 0.8f64.sqrt()).unwrap(), None);
        assert!(heat_bound(4.0, 5, 1.0).unwrap().is_some());
        let cold = heat_bound(4.0, 5, 1e6).unwrap().unwrap();
        assert!(cold < 1e-11);
        assert!(heat_bound(4.0, 5, 0.0).is_err());
        assert!(phonon_bound(4.0, 5, -1.0).is_err());
    }

    #[test]
    fn closed_form_heat_bound_fails_on_k3() {
        // two modes with lambda = 3: c = 2 E(2 sqrt 3) = 0.80056 while
        // r = (2/3) / 4 gives alpha_E / 7 = 0.74683
        let k3 = NormalModes::from_eigenvalues(&[0.0, 3.0, 3.0]).unwrap();
        let report = bound_report(&k3, 2.0).unwrap();
        assert!((report.heat_actual - 2.0 * einstein(2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((report.heat_bound.unwrap() - constants().alpha_e / 7.0).abs() < 1e-14);
        assert_eq!(report.holds_c, Some(false));
        let termwise = heat_bound_termwise(&k3, 2.0).unwrap();
        assert!((termwise - constants().alpha_e * 2.0 / 13.0).abs() < 1e-14);
        assert!(report.heat_actual < termwise);
    }

    #[test]
    fn termwise_heat_bound_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let count = rng.random_range(1..50);
            let mut eig = vec![0.0];
            eig.extend((0..count).map(|_| rng.random_range(0.01..40.0)));
            let modes = NormalModes::from_eigenvalues(&eig).unwrap();
            for beta in [0.05, 0.3, 1.0, 4.0, 30.0] {
                let c = thermo_point(&modes, beta).unwrap().heat;
                assert!(c <= heat_bound_termwise(&modes, beta).unwrap());
            }
        }
    }

    #[test]
    fn heat_bound_on_large_circulant() {
        let modes = circulant_eigenvalues(1000, 100).unwrap().modes();
        // cap_bar / n ~ 5.15 here, so beta = 1 is outside the proven range,
        // yet the bound expression still dominates the exact heat
        let report = bound_report(&modes, 1.0).unwrap();
        assert!(report.cap_ratio > 1.0);
        assert_eq!(report.holds_c, None);
        assert!(report.holds_n);
        let cap = kirchhoff_index(&modes);
        assert!(heat_bound_value(cap, 1000, 1.0).unwrap() > report.heat_actual);
        let cold = bound_report(&modes, 3.0).unwrap();
        assert_eq!(cold.holds_c, Some(true));
    }

    fn range(lo: usize, hi: usize, step: usize) -> Vec<usize> {
        (lo..=hi).step_by(step).collect()
    }

    #[test]
    fn classify_complete_and_path() {
        let ns = range(10, 200, 10);
        let complete =
            classify_family("complete", |n| GeneratorSpec::Complete { n }, &ns, Default::default())
                .unwrap();
        assert_eq!(complete.verdict, Verdict::Bounded);
        assert!((complete.slope - 1.0).abs() < 0.02);
        let path =
            classify_family("path", |n| GeneratorSpec::Path { n }, &ns, Default::default()).unwrap();
        assert_eq!(path.verdict, Verdict::Divergent);
        assert!((path.slope - 3.0).abs() < 0.05);
    }

    // With l = floor((n/2)^0.8) most modes sit near 2l + 1, so
    // cap_bar / n ~ n / (2l) keeps growing like n^0.2 and the fit lands near 1.2.
    #[test]
    fn circulant_power_families() {
        let ns = range(10, 200, 10);
        let power = |r: f64| {
            move |n: usize| {
                let l = ((n as f64 / 2.0).powf(r).floor() as usize).clamp(1, (n - 1) / 2);
                GeneratorSpec::Circulant { n, l }
            }
        };
        let dense = classify_family("r=1", power(1.0), &ns, Default::default()).unwrap();
        assert_eq!(dense.verdict, Verdict::Bounded);
        let r08 = classify_family("r=0.8", power(0.8), &ns, Default::default()).unwrap();
        assert!(r08.slope > 1.1 && r08.slope < 1.3, "slope {}", r08.slope);
        assert_eq!(r08.verdict, Verdict::Divergent);
        let cycle = classify_family("r=0", power(0.0), &ns, Default::default()).unwrap();
        assert_eq!(cycle.verdict, Verdict::Divergent);
    }

    #[test]
    fn classify_rejects_short_or_unsorted() {
        let f = |n| GeneratorSpec::Complete { n };
        assert!(classify_family("k", f, &[5, 6, 7], Default::default()).is_err());
        assert!(classify_family("k", f, &[5, 7, 6, 8], Default::default()).is_err());
    }
}
