//! Map kernel: family definitions, one-step evaluation, derivatives, and
//! critical data.
//!
//! The perturbed families are
//!   F(z) = z^2 + lambda / z^m          (holomorphic)
//!   G(z) = z^2 + beta / conj(z)^m      (non-holomorphic)
//! together with the real logistic family x -> 1 - a x^2 and the Henon map
//! (x, y) -> (1 - a x^2 + y, b x). Real 1-D states and Henon states both ride
//! in a `Complex64`: the logistic map uses only the real part, Henon uses
//! (re, im) = (x, y).

use num_complex::Complex64;

use crate::error::{DynError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// z^2 + lambda / z^m, m >= 1. lambda = 0 degenerates to z^2 (no pole).
    HoloPerturbed { m: u32, lambda: Complex64 },
    /// z^2 + beta / conj(z)^m, m >= 1. beta = 0 degenerates to z^2 (no pole).
    NonholoPerturbed { m: u32, beta: Complex64 },
    /// x -> 1 - a x^2 on the real line.
    Logistic { a: f64 },
    /// (x, y) -> (1 - a x^2 + y, b x).
    Henon { a: f64, b: f64 },
    /// z -> z^2, the unperturbed reference.
    PureQuadratic,
}

impl Family {
    /// Modulus of the perturbation/parameter, used by escape-radius rules.
    pub fn param_modulus(self) -> f64 {
        match self {
            Family::HoloPerturbed { lambda, .. } => lambda.norm(),
            Family::NonholoPerturbed { beta, .. } => beta.norm(),
            _ => 0.0,
        }
    }
}

/// Integer power by repeated squaring. Unlike the polar-form `powf`, this
/// keeps exactly-real inputs exactly real, which the axis-sampling renders
/// rely on.
pub fn zpow(z: Complex64, m: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// One application of the map. `PoleHit` when a perturbed family is evaluated
/// at its pole z = 0 (with a nonzero perturbation).
pub fn eval(family: Family, z: Complex64) -> Result<Complex64> {
    match family {
        Family::HoloPerturbed { m, lambda } => {
            if lambda == ZERO {
                return Ok(z * z);
            }
            if z == ZERO {
                return Err(DynError::PoleHit);
            }
            Ok(z * z + lambda / zpow(z, m))
        }
        Family::NonholoPerturbed { m, beta } => {
            if beta == ZERO {
                return Ok(z * z);
            }
            if z == ZERO {
                return Err(DynError::PoleHit);
            }
            Ok(z * z + beta / zpow(z.conj(), m))
        }
        Family::Logistic { a } => Ok(Complex64::new(1.0 - a * z.re * z.re, 0.0)),
        Family::Henon { a, b } => Ok(Complex64::new(1.0 - a * z.re * z.re + z.im, b * z.re)),
        Family::PureQuadratic => Ok(z * z),
    }
}

/// One application restricted to the real line (1-D families only). Routed
/// through [`eval`] so the real and complex paths agree bit for bit; for
/// real parameters both perturbed kinds restrict to x^2 + p / x^m.
pub fn eval_real(family: Family, x: f64) -> Result<f64> {
    if matches!(family, Family::Henon { .. }) {
        return Err(DynError::Unsupported("real-line evaluation of the Henon map"));
    }
    eval(family, Complex64::new(x, 0.0)).map(|z| z.re)
}

/// Complex derivative F'(z) for the holomorphic families.
/// Undefined for the non-holomorphic family (use the 2x2 Jacobian) and for
/// the Henon map.
pub fn derivative_holo(family: Family, z: Complex64) -> Result<Complex64> {
    match family {
        Family::HoloPerturbed { m, lambda } => {
            if lambda == ZERO {
                return Ok(2.0 * z);
            }
            if z == ZERO {
                return Err(DynError::PoleHit);
            }
            Ok(2.0 * z - (m as f64) * lambda / zpow(z, m + 1))
        }
        Family::Logistic { a } => Ok(Complex64::new(-2.0 * a * z.re, 0.0)),
        Family::PureQuadratic => Ok(2.0 * z),
        Family::NonholoPerturbed { .. } => Err(DynError::Unsupported(
            "complex derivative of the non-holomorphic family",
        )),
        Family::Henon { .. } => Err(DynError::Unsupported("complex derivative of the Henon map")),
    }
}

/// d/dx of the real-line restriction (1-D families only). For both perturbed
/// kinds with a real parameter this is 2x - m p / x^(m+1): the x-directional
/// stretch, which for the non-holomorphic family is the first diagonal entry
/// of its on-axis Jacobian.
pub fn derivative_real(family: Family, x: f64) -> Result<f64> {
    match family {
        Family::NonholoPerturbed { m, beta } => {
            let p = beta.re;
            if p == 0.0 {
                return Ok(2.0 * x);
            }
            if x == 0.0 {
                return Err(DynError::PoleHit);
            }
            Ok(2.0 * x - (m as f64) * p / x.powi(m as i32 + 1))
        }
        Family::Henon { .. } => Err(DynError::Unsupported("real-line derivative of the Henon map")),
        _ => derivative_holo(family, Complex64::new(x, 0.0)).map(|z| z.re),
    }
}

/// The set of critical points of one map application.
#[derive(Debug, Clone, PartialEq)]
pub enum CriticalSet {
    /// Finitely many critical points, sorted by argument in [0, 2pi).
    Points(Vec<Complex64>),
    /// The non-holomorphic family is critical along a whole circle |z| = radius.
    Circle { radius: f64 },
}

/// All n-th roots of w, sorted by argument in [0, 2pi).
pub fn polar_roots(n: u32, w: Complex64) -> Vec<Complex64> {
    if w == ZERO {
        return vec![ZERO];
    }
    let r = w.norm().powf(1.0 / n as f64);
    let base = w.arg();
    let tau = std::f64::consts::TAU;
    let mut args: Vec<f64> = (0..n)
        .map(|k| ((base + tau * k as f64) / n as f64).rem_euclid(tau))
        .collect();
    args.sort_by(|a, b| a.partial_cmp(b).unwrap());
    args.into_iter().map(|t| Complex64::from_polar(r, t)).collect()
}

/// Critical points (or circle) of the family. For the holomorphic family the
/// m+2 finite critical points solve z^(m+2) = m*lambda/2; the degenerate
/// lambda = 0 case collapses them to {0}.
pub fn critical_set(family: Family) -> Result<CriticalSet> {
    match family {
        Family::HoloPerturbed { m, lambda } => {
            if lambda == ZERO {
                return Ok(CriticalSet::Points(vec![ZERO]));
            }
            Ok(CriticalSet::Points(polar_roots(m + 2, (m as f64) * lambda / 2.0)))
        }
        Family::NonholoPerturbed { m, beta } => Ok(CriticalSet::Circle {
            radius: ((m as f64) * beta.norm() / 2.0).powf(1.0 / (m as f64 + 2.0)),
        }),
        Family::Logistic { .. } => Ok(CriticalSet::Points(vec![ZERO])),
        Family::Henon { .. } => Err(DynError::Unsupported("critical set of the Henon map")),
        Family::PureQuadratic => Err(DynError::Unsupported("critical set of the unperturbed map")),
    }
}

/// A deterministic representative critical point: the first entry of the
/// argument-sorted list, or the positive real point on the critical circle.
pub fn principal_critical_point(family: Family) -> Result<Complex64> {
    match critical_set(family)? {
        CriticalSet::Points(pts) => Ok(pts[0]),
        CriticalSet::Circle { radius } => Ok(Complex64::new(radius, 0.0)),
    }
}

/// Prepoles of the holomorphic family: solutions of z^(m+2) = -lambda
/// (F maps them onto the pole's forward image through 0). {0} when lambda = 0.
pub fn prepoles(m: u32, lambda: Complex64) -> Vec<Complex64> {
    if lambda == ZERO {
        return vec![ZERO];
    }
    polar_roots(m + 2, -lambda)
}

/// Rotational symmetry generator omega = exp(2 pi i / (m+2)):
/// F(omega z) = omega^2 F(z) for the holomorphic family.
pub fn symmetry_root(m: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU / (m as f64 + 2.0))
}

/// Escape radius that is provably sound for the holomorphic family:
/// max(2, 1 + |param|) + 1. Every orbit leaving this disk tends to infinity.
pub fn default_escape_radius(family: Family) -> f64 {
    f64::max(2.0, 1.0 + family.param_modulus()) + 1.0
}

pub fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
