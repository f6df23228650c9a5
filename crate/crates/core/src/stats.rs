//! Statistical laboratory: attractor clouds and bifurcation sweeps for the
//! Henon map, indicator correlations with a shuffled noise floor, a greedy
//! (n, epsilon)-separation entropy estimate, Schwarzian and Nowicki
//! derivative sums for the logistic family, and the regular/stochastic
//! parameter dichotomy.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{DynError, Result};
use crate::exec;
use crate::family::{self, Family};
use crate::orbit::{self, ESCAPE_GUARD};
use crate::sweep::{self, DiagramData, SweepTemplate, X0Rule};

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<(f64, f64)>,
    pub burn_in: usize,
}

/// Post-burn-in orbit of the Henon map from `start`, as a planar cloud.
pub fn henon_attractor_from(
    a: f64,
    b: f64,
    start: (f64, f64),
    n: usize,
    burn_in: usize,
) -> Result<PointCloud> {
    let fam = Family::Henon { a, b };
    let mut z = Complex64::new(start.0, start.1);
    for i in 0..burn_in {
        z = family::eval(fam, z).map_err(|_| DynError::EscapedDuringSample(i))?;
        if !family::is_finite(z) || z.norm() > ESCAPE_GUARD {
            return Err(DynError::EscapedDuringSample(i));
        }
    }
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        points.push((z.re, z.im));
        if i + 1 < n {
            z = family::eval(fam, z).map_err(|_| DynError::EscapedDuringSample(burn_in + i))?;
            if !family::is_finite(z) || z.norm() > ESCAPE_GUARD {
                return Err(DynError::EscapedDuringSample(burn_in + i));
            }
        }
    }
    Ok(PointCloud { points, burn_in })
}

/// Attractor cloud from the standard seed (0, 0).
pub fn henon_attractor(a: f64, b: f64, n: usize, burn_in: usize) -> Result<PointCloud> {
    henon_attractor_from(a, b, (0.0, 0.0), n, burn_in)
}

/// Axis-aligned box used as an indicator set on the plane. Infinite bounds
/// are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn contains(&self, p: (f64, f64)) -> bool {
        p.0 >= self.x_min && p.0 <= self.x_max && p.1 >= self.y_min && p.1 <= self.y_max
    }

    /// The right half plane x > 0 (as x >= 0 on the closed box; the Henon
    /// attractor carries no mass exactly on x = 0).
    pub fn right_half() -> Rect {
        Rect { x_min: 0.0, x_max: f64::INFINITY, y_min: f64::NEG_INFINITY, y_max: f64::INFINITY }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSeries {
    /// values[n] = C(n) for lags n = 0..=max_lag:
    /// C(n) = avg_i 1_A(p_{i+n}) 1_B(p_i) - mu_A mu_B.
    pub values: Vec<f64>,
    pub mu_a: f64,
    pub mu_b: f64,
    /// 3x the largest |C~(n)| over lags >= 1 of a shuffled copy of the cloud.
    pub noise_floor: f64,
    /// Least-squares slope of ln|C(n)| over lags with |C(n)| above the noise
    /// floor; `None` when fewer than two lags are usable.
    pub fitted_rate: Option<f64>,
    pub usable_lags: usize,
}

/// Indicator autocorrelation of a planar cloud. The cloud must be at least
/// 10x longer than the largest lag. The shuffle for the noise floor is the
/// seeded Fisher-Yates permutation of the visit order.
pub fn correlation(
    cloud: &PointCloud,
    set_a: Rect,
    set_b: Rect,
    max_lag: usize,
    seed: u64,
) -> Result<CorrelationSeries> {
    let n = cloud.points.len();
    if n < 10 * max_lag.max(1) {
        return Err(DynError::PreconditionViolated(
            "cloud must be at least 10x longer than the largest lag",
        ));
    }
    let ia: Vec<f64> = cloud.points.iter().map(|&p| set_a.contains(p) as u8 as f64).collect();
    let ib: Vec<f64> = cloud.points.iter().map(|&p| set_b.contains(p) as u8 as f64).collect();
    let mu_a = ia.iter().sum::<f64>() / n as f64;
    let mu_b = ib.iter().sum::<f64>() / n as f64;
    if mu_a == 0.0 || mu_b == 0.0 {
        return Err(DynError::DegenerateSet);
    }
    let series = |xa: &[f64], xb: &[f64]| -> Vec<f64> {
        (0..=max_lag)
            .map(|lag| {
                let w = n - lag;
                let dot: f64 = (0..w).map(|i| xa[i + lag] * xb[i]).sum();
                dot / w as f64 - mu_a * mu_b
            })
            .collect()
    };
    let values = series(&ia, &ib);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perm.shuffle(&mut rng);
    let sa: Vec<f64> = perm.iter().map(|&k| ia[k]).collect();
    let sb: Vec<f64> = perm.iter().map(|&k| ib[k]).collect();
    let shuffled = series(&sa, &sb);
    let noise_floor = 3.0
        * shuffled[1..]
            .iter()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let usable: Vec<(f64, f64)> = (1..=max_lag)
        .filter(|&lag| values[lag].abs() > noise_floor)
        .map(|lag| (lag as f64, values[lag].abs().ln()))
        .collect();
    let fitted_rate = if usable.len() >= 2 { Some(lsq_slope(&usable)) } else { None };
    Ok(CorrelationSeries {
        values,
        mu_a,
        mu_b,
        noise_floor,
        fitted_rate,
        usable_lags: usable.len(),
    })
}

fn lsq_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Greedy (n, epsilon)-separated set count over logistic trajectories seeded
/// on a uniform `grid_size`-point grid of [-1, 1], returning ln(count)/n.
/// Two trajectories are separated when some step differs by more than
/// epsilon (sup metric over the n-step window). Trajectories are computed in
/// parallel; the greedy pass itself is sequential because its outcome
/// depends on visit order.
pub fn topological_entropy_estimate(a: f64, n: usize, epsilon: f64, grid_size: usize) -> f64 {
    assert!(n > 0 && grid_size > 1, "need a positive window and at least two seeds");
    let fam = Family::Logistic { a };
    let trajs: Vec<Vec<f64>> = exec::map_indexed(grid_size, |i| {
        let mut x = -1.0 + 2.0 * i as f64 / (grid_size - 1) as f64;
        let mut t = Vec::with_capacity(n);
        for _ in 0..n {
            t.push(x);
            x = family::eval_real(fam, x).expect("logistic map is entire");
        }
        t
    });
    let mut kept: Vec<usize> = Vec::new();
    'cand: for i in 0..grid_size {
        for &k in &kept {
            let mut separated = false;
            for t in 0..n {
                if (trajs[i][t] - trajs[k][t]).abs() > epsilon {
                    separated = true;
                    break;
                }
            }
            if !separated {
                continue 'cand;
            }
        }
        kept.push(i);
    }
    (kept.len() as f64).ln() / n as f64
}

/// Schwarzian derivative of the logistic map: S(F)(x) = -(3/2) / x^2,
/// independent of a. Undefined at the critical point x = 0.
pub fn schwarzian(_a: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(DynError::CriticalPoint);
    }
    Ok(-1.5 / (x * x))
}

/// Partial sums S_k = sum_{i=1..k} |D_i|^(-1/2) where D_i is the derivative
/// of F^i at the critical value F(0) = 1. Logs are accumulated so large
/// products do not overflow. For a = 2 the sums converge to 1.
pub fn nowicki_sums(a: f64, n_terms: usize) -> Result<Vec<f64>> {
    let fam = Family::Logistic { a };
    let mut sums = Vec::with_capacity(n_terms);
    let mut x = 1.0f64;
    let mut log_d = 0.0f64;
    let mut acc = 0.0f64;
    for i in 0..n_terms {
        let d = family::derivative_real(fam, x)?;
        if d == 0.0 {
            return Err(DynError::DerivativeVanished);
        }
        log_d += d.abs().ln();
        acc += (-0.5 * log_d).exp();
        sums.push(acc);
        x = family::eval_real(fam, x)?;
        if !x.is_finite() || x.abs() > ESCAPE_GUARD {
            return Err(DynError::EscapedDuringSample(i));
        }
    }
    Ok(sums)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The critical orbit settles onto a detected cycle.
    Regular,
    /// No cycle, and the Lyapunov exponent exceeds the threshold.
    Stochastic,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomyRow {
    pub a: f64,
    pub verdict: Verdict,
    pub lyapunov: f64,
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyScan {
    pub rows: Vec<DichotomyRow>,
    pub threshold: f64,
}

pub const DICHOTOMY_BURN_IN: usize = 600;
pub const DICHOTOMY_MAX_PERIOD: usize = 64;
pub const DICHOTOMY_CYCLE_TOL: f64 = 1e-7;
pub const DICHOTOMY_SAMPLE_LEN: usize = 3000;

fn dichotomy_row(a: f64, threshold: f64, sample_len: usize) -> DichotomyRow {
    let fam = Family::Logistic { a };
    let zero = Complex64::new(0.0, 0.0);
    let cycle = orbit::detect_cycle(fam, zero, DICHOTOMY_BURN_IN, DICHOTOMY_MAX_PERIOD, DICHOTOMY_CYCLE_TOL);
    let lyap = orbit::lyapunov_1d(fam, 0.0, DICHOTOMY_BURN_IN, sample_len)
        .map(|e| e.exponents[0])
        .unwrap_or(f64::NEG_INFINITY);
    // Only an attracting cycle is regular: at exceptional parameters the
    // critical orbit lands exactly on a repelling cycle (a = 2 reaches the
    // fixed point -1 in two steps) and must fall through to the Lyapunov
    // test.
    if let Ok(report) = &cycle {
        if report.stability == orbit::Stability::Attracting {
            return DichotomyRow { a, verdict: Verdict::Regular, lyapunov: lyap, period: Some(report.period) };
        }
    }
    if lyap > threshold {
        DichotomyRow { a, verdict: Verdict::Stochastic, lyapunov: lyap, period: None }
    } else {
        DichotomyRow { a, verdict: Verdict::Undecided, lyapunov: lyap, period: None }
    }
}

/// Classify each parameter on a uniform grid over `a_range` as Regular
/// (cycle detected from the critical orbit), Stochastic (positive Lyapunov
/// exponent above `threshold`), or Undecided.
pub fn dichotomy_scan(a_range: (f64, f64), samples: usize, threshold: f64) -> DichotomyScan {
    dichotomy_scan_with_len(a_range, samples, threshold, DICHOTOMY_SAMPLE_LEN)
}

/// As [`dichotomy_scan`] with an explicit Lyapunov sample length (the
/// verdicts should be essentially stable under doubling it).
pub fn dichotomy_scan_with_len(
    a_range: (f64, f64),
    samples: usize,
    threshold: f64,
    sample_len: usize,
) -> DichotomyScan {
    let params = sweep::param_grid(a_range, samples);
    let rows = exec::map_indexed(params.len(), |i| dichotomy_row(params[i], threshold, sample_len));
    DichotomyScan { rows, threshold }
}

/// Henon orbit-diagram sweep: b fixed, a swept; rows keep the x coordinate.
/// Escaping parameters keep an empty row.
pub fn henon_bifurcation(
    b: f64,
    a_range: (f64, f64),
    samples: usize,
    burn_in: usize,
    kept: usize,
) -> DiagramData {
    sweep::orbit_diagram(SweepTemplate::Henon { b }, a_range, samples, burn_in, kept, X0Rule::CriticalPoint)
}

/// True when every point of `a` has a point of `b` within `eps`
/// (directed Hausdorff proximity), tested with a uniform bucket grid.
pub fn hausdorff_within(a: &[(f64, f64)], b: &[(f64, f64)], eps: f64) -> bool {
    assert!(eps > 0.0);
    let mut buckets: std::collections::HashMap<(i64, i64), Vec<(f64, f64)>> =
        std::collections::HashMap::new();
    let key = |p: (f64, f64)| ((p.0 / eps).floor() as i64, (p.1 / eps).floor() as i64);
    for &p in b {
        buckets.entry(key(p)).or_default().push(p);
    }
    let eps2 = eps * eps;
    'points: for &p in a {
        let (kx, ky) = key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = buckets.get(&(kx + dx, ky + dy)) {
                    for &q in v {
                        let d2 = (p.0 - q.0) * (p.0 - q.0) + (p.1 - q.1) * (p.1 - q.1);
                        if d2 <= eps2 {
                            continue 'points;
                        }
                    }
                }
            }
        }
        return false;
    }
    true
}
