//! Fixed points and their bifurcations.
//!
//! Fixed points of F(z) = z^2 + c/z^m solve z^(m+2) - z^(m+1) + c = 0, with
//! multiplier (2+m) z - m at a root. The saddle-node parameter where the two
//! positive real fixed points collide is (1+m)^(1+m) / (2+m)^(2+m).

use num_complex::Complex64;

use crate::error::{DynError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointClass {
    Attracting,
    Repelling,
    Neutral,
    Superattracting,
    /// Only produced by the 2-D Henon classification.
    Saddle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointReport {
    pub location: Complex64,
    /// For the Henon map this is the larger-modulus eigenvalue of the
    /// Jacobian at the fixed point.
    pub multiplier: Complex64,
    pub classification: FixedPointClass,
}

pub const SUPERATTRACTING_TOL: f64 = 1e-10;
pub const NEUTRAL_BAND: f64 = 1e-8;

/// 1-D classification by multiplier modulus.
pub fn classify_multiplier(multiplier: Complex64) -> FixedPointClass {
    let m = multiplier.norm();
    if m < SUPERATTRACTING_TOL {
        FixedPointClass::Superattracting
    } else if (m - 1.0).abs() <= NEUTRAL_BAND {
        FixedPointClass::Neutral
    } else if m < 1.0 {
        FixedPointClass::Attracting
    } else {
        FixedPointClass::Repelling
    }
}

fn sgn(x: f64) -> i32 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Bisection on [lo, hi], assuming f(lo) and f(hi) have opposite (or zero) sign.
fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if sgn(flo) * sgn(fm) <= 0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// The fixed-point polynomial p(x) = x^(m+2) - x^(m+1) + c.
fn fix_poly(m: u32, c: f64, x: f64) -> f64 {
    x.powi(m as i32 + 1) * (x - 1.0) + c
}

/// All real fixed points of x^2 + c/x^m for real c != 0, sorted ascending,
/// with multipliers and stability labels. Roots are isolated on the monotone
/// pieces of p over [-3, 3] (all real roots live there for |c| <= 2); the
/// tangency root at the local minimum is detected separately so the
/// saddle-node collision is reported exactly once.
pub fn real_fixed_points(m: u32, c: f64) -> Result<Vec<FixedPointReport>> {
    if c == 0.0 {
        return Err(DynError::PreconditionViolated("c must be nonzero"));
    }
    let p = |x: f64| fix_poly(m, c, x);
    let xstar = (m as f64 + 1.0) / (m as f64 + 2.0);
    let tangency_tol = 1e-13 * (1.0 + c.abs());
    let tangency = p(xstar).abs() <= tangency_tol;
    let mut roots: Vec<f64> = Vec::new();
    let bps = [-3.0, 0.0, xstar, 3.0];
    for w in bps.windows(2) {
        let (a, b) = (w[0], w[1]);
        if sgn(p(a)) * sgn(p(b)) < 0 {
            roots.push(bisect(&p, a, b));
        }
    }
    if tangency {
        // Rounding noise at the double root can fabricate sign changes a few
        // ulps-of-sqrt away from x*; the exact tangency root supersedes them.
        roots.retain(|x| (x - xstar).abs() > 1e-6);
        roots.push(xstar);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-8);
    Ok(roots
        .into_iter()
        .map(|x| {
            let mult = Complex64::new((m as f64 + 2.0) * x - m as f64, 0.0);
            FixedPointReport {
                location: Complex64::new(x, 0.0),
                multiplier: mult,
                classification: classify_multiplier(mult),
            }
        })
        .collect())
}

/// All three fixed points of z^2 + lambda/z (m = 1) in the complex plane:
/// the roots of z^3 - z^2 + lambda, with multiplier 3z - 1. Sorted by
/// (re, im). A double root is listed twice.
pub fn complex_fixed_points_m1(lambda: Complex64) -> Result<Vec<FixedPointReport>> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(DynError::PreconditionViolated("lambda must be nonzero"));
    }
    let mut roots = if lambda.im == 0.0 {
        cubic_roots_real(lambda.re)
    } else {
        cubic_roots_cardano(lambda)
    };
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(roots
        .into_iter()
        .map(|z| {
            let mult = 3.0 * z - Complex64::new(1.0, 0.0);
            FixedPointReport {
                location: z,
                multiplier: mult,
                classification: classify_multiplier(mult),
            }
        })
        .collect())
}

/// Roots of z^3 - z^2 + c for real c: one real root by bisection, the other
/// two from the deflated quadratic. Keeps conjugate pairs exactly conjugate.
fn cubic_roots_real(c: f64) -> Vec<Complex64> {
    let p = |x: f64| x * x * x - x * x + c;
    let bound = 3.0 + c.abs();
    let bps = [-bound, 0.0, 2.0 / 3.0, bound];
    let mut first: Option<f64> = None;
    for w in bps.windows(2) {
        if sgn(p(w[0])) * sgn(p(w[1])) < 0 {
            first = Some(bisect(&p, w[0], w[1]));
            break;
        }
        if p(w[1]) == 0.0 {
            first = Some(w[1]);
            break;
        }
    }
    let r = first.expect("a cubic with real coefficients has a real root");
    // z^3 - z^2 + c = (z - r)(z^2 + b z + q) with b = r - 1, q = -c / r.
    let b = r - 1.0;
    let q = -c / r;
    let disc = b * b - 4.0 * q;
    let scale = 1.0 + b * b + q.abs();
    let mut roots = vec![Complex64::new(r, 0.0)];
    if disc.abs() <= 1e-12 * scale {
        let d = -0.5 * b;
        roots.push(Complex64::new(d, 0.0));
        roots.push(Complex64::new(d, 0.0));
    } else if disc > 0.0 {
        let s = disc.sqrt();
        roots.push(Complex64::new(0.5 * (-b + s), 0.0));
        roots.push(Complex64::new(0.5 * (-b - s), 0.0));
    } else {
        let s = 0.5 * (-disc).sqrt();
        roots.push(Complex64::new(-0.5 * b, s));
        roots.push(Complex64::new(-0.5 * b, -s));
    }
    roots
}

/// Cardano's formula for z^3 - z^2 + lambda with genuinely complex lambda.
fn cubic_roots_cardano(lambda: Complex64) -> Vec<Complex64> {
    // Depress with z = t + 1/3: t^3 + p t + q, p = -1/3, q = lambda - 2/27.
    let p: f64 = -1.0 / 3.0;
    let q = lambda - Complex64::new(2.0 / 27.0, 0.0);
    let d = (q * q / 4.0 + Complex64::new((p / 3.0).powi(3), 0.0)).sqrt();
    let mut u3 = -q / 2.0 + d;
    if u3.norm() < 1e-30 {
        u3 = -q / 2.0 - d;
    }
    let u = u3.cbrt();
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    (0..3)
        .map(|k| {
            let uk = u * crate::family::zpow(omega, k);
            uk - p / (3.0 * uk) + Complex64::new(1.0 / 3.0, 0.0)
        })
        .collect()
}

/// Closed-form saddle-node parameter (1+m)^(1+m) / (2+m)^(2+m).
pub fn saddle_node_value(m: u32) -> f64 {
    let a = m as f64 + 1.0;
    let b = m as f64 + 2.0;
    a.powf(a) / b.powf(b)
}

/// Locate the saddle-node parameter by bisecting on the number of positive
/// real fixed points (two below the collision, none above).
pub fn saddle_node_numeric(m: u32) -> Result<f64> {
    let count = |c: f64| positive_root_count(m, c);
    let mut lo = 1e-9;
    let mut hi = 1.0;
    if count(lo) < 2 {
        return Err(DynError::BracketFailure(
            "expected two positive fixed points at the lower end",
        ));
    }
    if count(hi) != 0 {
        return Err(DynError::BracketFailure(
            "expected no positive fixed points at the upper end",
        ));
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if count(mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn positive_root_count(m: u32, c: f64) -> usize {
    let p = |x: f64| fix_poly(m, c, x);
    let xstar = (m as f64 + 1.0) / (m as f64 + 2.0);
    if p(xstar).abs() <= 1e-13 * (1.0 + c.abs()) {
        return 1;
    }
    let mut count = 0;
    for w in [[1e-12, xstar], [xstar, 3.0]] {
        if sgn(p(w[0])) * sgn(p(w[1])) < 0 {
            count += 1;
        }
    }
    count
}

/// Fixed points of the Henon map: x solves a x^2 + (1-b) x - 1 = 0 and
/// y = b x. Classified through the eigenvalue moduli of the Jacobian
/// [[-2ax, 1], [b, 0]]: Attracting when both are inside the unit circle,
/// Repelling when both are outside, Saddle otherwise (Neutral on the band).
pub fn henon_fixed_points(a: f64, b: f64) -> Vec<FixedPointReport> {
    let xs: Vec<f64> = if a == 0.0 {
        if (1.0 - b).abs() < 1e-15 {
            vec![]
        } else {
            vec![1.0 / (1.0 - b)]
        }
    } else {
        let disc = (1.0 - b) * (1.0 - b) + 4.0 * a;
        if disc < 0.0 {
            vec![]
        } else {
            let s = disc.sqrt();
            let mut v = vec![(-(1.0 - b) + s) / (2.0 * a), (-(1.0 - b) - s) / (2.0 * a)];
            v.sort_by(|p, q| p.partial_cmp(q).unwrap());
            if disc == 0.0 {
                v.truncate(1);
            }
            v
        }
    };
    xs.into_iter()
        .map(|x| {
            let j = crate::nonholo::Mat2 { a11: -2.0 * a * x, a12: 1.0, a21: b, a22: 0.0 };
            let (eigs, _) = j.eigenvalues();
            let moduli = [eigs[0].norm(), eigs[1].norm()];
            let classification = if moduli.iter().any(|&m| (m - 1.0).abs() <= NEUTRAL_BAND) {
                FixedPointClass::Neutral
            } else if moduli.iter().all(|&m| m < 1.0) {
                FixedPointClass::Attracting
            } else if moduli.iter().all(|&m| m > 1.0) {
                FixedPointClass::Repelling
            } else {
                FixedPointClass::Saddle
            };
            FixedPointReport {
                location: Complex64::new(x, b * x),
                multiplier: eigs[0],
                classification,
            }
        })
        .collect()
}
