//! Orbit engine: finite-orbit iteration with escape detection, cycle
//! detection with multipliers, Birkhoff averages, and Lyapunov exponents.

use num_complex::Complex64;

use crate::error::{DynError, Result};
use crate::family::{self, Family};
use crate::nonholo::{self, Mat2};

/// Escape guard for open-ended real/planar iteration (cycle search, sweeps,
/// statistics). Far beyond every basin of interest for all four families.
pub const ESCAPE_GUARD: f64 = 1e6;

/// A finite orbit. `states[0]` is the seed; if the orbit never escapes,
/// `states` holds the seed plus all `max_iter` images (length max_iter + 1).
/// On escape the orbit stops at the first state beyond the radius; a pole hit
/// counts as escape at the next index and records an infinite sentinel state.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResult {
    pub states: Vec<Complex64>,
    pub escaped: bool,
    pub escape_index: Option<usize>,
    pub final_state: Complex64,
}

pub fn iterate(family: Family, z0: Complex64, max_iter: usize, escape_radius: f64) -> OrbitResult {
    let mut states = Vec::with_capacity(max_iter + 1);
    states.push(z0);
    if z0.norm() > escape_radius {
        return OrbitResult { states, escaped: true, escape_index: Some(0), final_state: z0 };
    }
    let mut z = z0;
    for k in 1..=max_iter {
        match family::eval(family, z) {
            Ok(next) => {
                z = next;
                states.push(z);
                if !family::is_finite(z) || z.norm() > escape_radius {
                    return OrbitResult { states, escaped: true, escape_index: Some(k), final_state: z };
                }
            }
            Err(_) => {
                // Pole hit: the next image is at infinity.
                let inf = Complex64::new(f64::INFINITY, 0.0);
                states.push(inf);
                return OrbitResult { states, escaped: true, escape_index: Some(k), final_state: inf };
            }
        }
    }
    OrbitResult { states, escaped: false, escape_index: None, final_state: z }
}

/// Cycle multiplier: a complex scalar for the holomorphic 1-D families, a
/// real 2x2 Jacobian product for the Henon and non-holomorphic maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier {
    Scalar(Complex64),
    Matrix(Mat2),
}

impl Multiplier {
    /// Eigenvalue moduli, descending. A scalar reports itself once.
    pub fn moduli(self) -> Vec<f64> {
        match self {
            Multiplier::Scalar(s) => vec![s.norm()],
            Multiplier::Matrix(m) => {
                let (vals, _) = m.eigenvalues();
                vec![vals[0].norm(), vals[1].norm()]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Attracting,
    Repelling,
    Neutral,
    Saddle,
}

/// Half-width of the band around |multiplier| = 1 that is labelled Neutral.
pub const NEUTRAL_BAND: f64 = 1e-8;

fn classify_moduli(moduli: &[f64]) -> Stability {
    if moduli.iter().any(|&m| (m - 1.0).abs() <= NEUTRAL_BAND) {
        return Stability::Neutral;
    }
    let above = moduli.iter().filter(|&&m| m > 1.0).count();
    if above == 0 {
        Stability::Attracting
    } else if above == moduli.len() {
        Stability::Repelling
    } else {
        Stability::Saddle
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub period: usize,
    /// The detected cycle, starting at the post-burn-in reference point.
    pub points: Vec<Complex64>,
    pub multiplier: Multiplier,
    pub stability: Stability,
}

/// Detect a cycle by iterating `burn_in` steps and then looking for the
/// smallest period p <= max_period with |F^p(w) - w| < tol, where w is the
/// post-burn-in state. Escape (guard 1e6) or a pole during the search yields
/// `NoCycle`.
pub fn detect_cycle(
    family: Family,
    z0: Complex64,
    burn_in: usize,
    max_period: usize,
    tol: f64,
) -> Result<CycleReport> {
    let mut z = z0;
    for _ in 0..burn_in {
        z = family::eval(family, z).map_err(|_| DynError::NoCycle)?;
        if !family::is_finite(z) || z.norm() > ESCAPE_GUARD {
            return Err(DynError::NoCycle);
        }
    }
    let mut orb = Vec::with_capacity(max_period + 1);
    orb.push(z);
    for _ in 0..max_period {
        z = family::eval(family, z).map_err(|_| DynError::NoCycle)?;
        if !family::is_finite(z) || z.norm() > ESCAPE_GUARD {
            return Err(DynError::NoCycle);
        }
        orb.push(z);
    }
    let period = (1..=max_period)
        .find(|&p| (orb[p] - orb[0]).norm() < tol)
        .ok_or(DynError::NoCycle)?;
    let points: Vec<Complex64> = orb[..period].to_vec();
    let multiplier = cycle_multiplier(family, &points)?;
    let stability = classify_moduli(&multiplier.moduli());
    Ok(CycleReport { period, points, multiplier, stability })
}

/// Multiplier of a given cycle: product of one-step derivatives, with the
/// matrix for the last point leftmost in the 2-D cases.
pub fn cycle_multiplier(family: Family, points: &[Complex64]) -> Result<Multiplier> {
    match family {
        Family::HoloPerturbed { .. } | Family::Logistic { .. } | Family::PureQuadratic => {
            let mut mu = Complex64::new(1.0, 0.0);
            for &p in points {
                mu *= family::derivative_holo(family, p)?;
            }
            Ok(Multiplier::Scalar(mu))
        }
        Family::Henon { a, b } => {
            let mut prod = Mat2::IDENTITY;
            for &p in points {
                let j = Mat2 { a11: -2.0 * a * p.re, a12: 1.0, a21: b, a22: 0.0 };
                prod = j.mul(prod);
            }
            Ok(Multiplier::Matrix(prod))
        }
        Family::NonholoPerturbed { beta, .. } => {
            let mut prod = Mat2::IDENTITY;
            for &p in points {
                prod = nonholo::jacobian(beta.re, p.re, p.im)?.mul(prod);
            }
            Ok(Multiplier::Matrix(prod))
        }
    }
}

/// Time average of `observable` along the real orbit of `x0` after burn-in.
pub fn birkhoff_average<F: Fn(f64) -> f64>(
    family: Family,
    x0: f64,
    observable: F,
    burn_in: usize,
    n: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(DynError::PreconditionViolated("sample length must be positive"));
    }
    let mut x = x0;
    for i in 0..burn_in {
        x = family::eval_real(family, x).map_err(|_| DynError::EscapedDuringSample(i))?;
        if !x.is_finite() || x.abs() > ESCAPE_GUARD {
            return Err(DynError::EscapedDuringSample(i));
        }
    }
    let mut sum = 0.0;
    for i in 0..n {
        sum += observable(x);
        if i + 1 < n {
            x = family::eval_real(family, x).map_err(|_| DynError::EscapedDuringSample(burn_in + i))?;
            if !x.is_finite() || x.abs() > ESCAPE_GUARD {
                return Err(DynError::EscapedDuringSample(burn_in + i));
            }
        }
    }
    Ok(sum / n as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovEstimate {
    /// Descending. One entry for 1-D families, two for the Henon map.
    pub exponents: Vec<f64>,
    pub burn_in: usize,
    pub sample_len: usize,
}

/// Lyapunov exponent of a 1-D real family as the Birkhoff average of
/// ln |F'|. If the orbit lands exactly on a critical point the exponent is
/// the -infinity sentinel.
pub fn lyapunov_1d(family: Family, x0: f64, burn_in: usize, n: usize) -> Result<LyapunovEstimate> {
    if matches!(family, Family::Henon { .. }) {
        return Err(DynError::Unsupported("1-D Lyapunov exponent of the Henon map"));
    }
    let hit_critical = std::cell::Cell::new(false);
    let avg = birkhoff_average(
        family,
        x0,
        |x| {
            let d = family::derivative_real(family, x).unwrap_or(f64::INFINITY);
            if d == 0.0 {
                hit_critical.set(true);
                return f64::NEG_INFINITY;
            }
            d.abs().ln()
        },
        burn_in,
        n,
    )?;
    let exponent = if hit_critical.get() || avg == f64::NEG_INFINITY { f64::NEG_INFINITY } else { avg };
    Ok(LyapunovEstimate { exponents: vec![exponent], burn_in, sample_len: n })
}

/// Both Lyapunov exponents of the Henon map by the two-vector
/// Gram-Schmidt (Benettin) method. Exponents are returned descending; their
/// sum converges to ln |b|.
pub fn lyapunov_2d(
    family: Family,
    start: (f64, f64),
    burn_in: usize,
    n: usize,
) -> Result<LyapunovEstimate> {
    let (a, b) = match family {
        Family::Henon { a, b } => (a, b),
        _ => return Err(DynError::Unsupported("2-D Lyapunov exponents need the Henon map")),
    };
    if n == 0 {
        return Err(DynError::PreconditionViolated("sample length must be positive"));
    }
    let mut z = Complex64::new(start.0, start.1);
    for i in 0..burn_in {
        z = family::eval(family, z).map_err(|_| DynError::EscapedDuringSample(i))?;
        if !family::is_finite(z) || z.norm() > ESCAPE_GUARD {
            return Err(DynError::EscapedDuringSample(i));
        }
    }
    let mut v1 = (1.0, 0.0);
    let mut v2 = (0.0, 1.0);
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for i in 0..n {
        let j = Mat2 { a11: -2.0 * a * z.re, a12: 1.0, a21: b, a22: 0.0 };
        v1 = j.apply(v1);
        v2 = j.apply(v2);
        let r1 = (v1.0 * v1.0 + v1.1 * v1.1).sqrt();
        v1 = (v1.0 / r1, v1.1 / r1);
        let proj = v2.0 * v1.0 + v2.1 * v1.1;
        v2 = (v2.0 - proj * v1.0, v2.1 - proj * v1.1);
        let r2 = (v2.0 * v2.0 + v2.1 * v2.1).sqrt();
        v2 = (v2.0 / r2, v2.1 / r2);
        s1 += r1.ln();
        s2 += r2.ln();
        z = family::eval(family, z).map_err(|_| DynError::EscapedDuringSample(burn_in + i))?;
        if !family::is_finite(z) || z.norm() > ESCAPE_GUARD {
            return Err(DynError::EscapedDuringSample(burn_in + i));
        }
    }
    let mut exps = [s1 / n as f64, s2 / n as f64];
    if exps[0] < exps[1] {
        exps.swap(0, 1);
    }
    Ok(LyapunovEstimate { exponents: exps.to_vec(), burn_in, sample_len: n })
}
