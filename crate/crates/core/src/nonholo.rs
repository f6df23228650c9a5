//! Analysis of the non-holomorphic family G(z) = z^2 + beta / conj(z)^m with
//! real beta: the real Jacobian, products along real cycles, their
//! eigenvalues, and the transverse stability dichotomy for cycles living on
//! the invariant real axis.

use num_complex::Complex64;

use crate::error::{DynError, Result};
use crate::family::{self, Family};

/// 2x2 real matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };

    pub fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 * rhs.a11 + self.a12 * rhs.a21,
            a12: self.a11 * rhs.a12 + self.a12 * rhs.a22,
            a21: self.a21 * rhs.a11 + self.a22 * rhs.a21,
            a22: self.a21 * rhs.a12 + self.a22 * rhs.a22,
        }
    }

    pub fn trace(self) -> f64 {
        self.a11 + self.a22
    }

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Eigenvalues sorted by descending modulus, plus a complex-pair flag.
    /// Ties (equal moduli) are ordered by descending real part, then
    /// descending imaginary part, so output is deterministic.
    pub fn eigenvalues(self) -> ([Complex64; 2], bool) {
        let tr = self.trace();
        let det = self.det();
        let disc = tr * tr - 4.0 * det;
        if disc >= 0.0 {
            let s = disc.sqrt();
            let mut vals = [
                Complex64::new(0.5 * (tr + s), 0.0),
                Complex64::new(0.5 * (tr - s), 0.0),
            ];
            vals.sort_by(|a, b| {
                b.norm()
                    .partial_cmp(&a.norm())
                    .unwrap()
                    .then(b.re.partial_cmp(&a.re).unwrap())
            });
            ([vals[0], vals[1]], false)
        } else {
            let s = (-disc).sqrt();
            (
                [
                    Complex64::new(0.5 * tr, 0.5 * s),
                    Complex64::new(0.5 * tr, -0.5 * s),
                ],
                true,
            )
        }
    }

    pub fn apply(self, v: (f64, f64)) -> (f64, f64) {
        (
            self.a11 * v.0 + self.a12 * v.1,
            self.a21 * v.0 + self.a22 * v.1,
        )
    }
}

/// Real Jacobian of G_beta(z) = z^2 + beta/conj(z) (m = 1) at z = x + iy.
/// With s = x^2 + y^2:
///   [ 2x - beta (x^2 - y^2)/s^2    -2y - 2 beta x y / s^2 ]
///   [ 2y - 2 beta x y / s^2         2x + beta (x^2 - y^2)/s^2 ]
/// On the real axis this is diag(2x - beta/x^2, 2x + beta/x^2).
pub fn jacobian(beta: f64, x: f64, y: f64) -> Result<Mat2> {
    let s = x * x + y * y;
    if s == 0.0 {
        return Err(DynError::PoleHit);
    }
    let s2 = s * s;
    let d = beta * (x * x - y * y) / s2;
    let e = 2.0 * beta * x * y / s2;
    Ok(Mat2 {
        a11: 2.0 * x - d,
        a12: -2.0 * y - e,
        a21: 2.0 * y - e,
        a22: 2.0 * x + d,
    })
}

/// Jacobian product and eigenvalue data along a real cycle of G_beta.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleEigenReport {
    pub beta: f64,
    pub period: usize,
    pub points: Vec<f64>,
    /// J(x_{p-1}) * ... * J(x_1) * J(x_0): the matrix for the last point is
    /// leftmost, so the product acts on tangent vectors at x_0.
    pub product: Mat2,
    /// Sorted by descending modulus.
    pub eigenvalues: [Complex64; 2],
    pub complex_pair: bool,
}

/// Residual tolerance for accepting `points` as a closed cycle. Loose on
/// purpose: published cycle points are typically rounded to ~6 digits, which
/// smears the closure residual at repelling directions.
pub const CYCLE_RESIDUAL_TOL: f64 = 2e-2;

/// Verify that `points` is a cycle of G_beta on the real axis (up to
/// [`CYCLE_RESIDUAL_TOL`]) and accumulate the Jacobian product around it.
pub fn cycle_eigen(beta: f64, points: &[f64]) -> Result<CycleEigenReport> {
    if points.is_empty() {
        return Err(DynError::PreconditionViolated("cycle needs at least one point"));
    }
    let fam = Family::NonholoPerturbed { m: 1, beta: Complex64::new(beta, 0.0) };
    let mut residual: f64 = 0.0;
    for (i, &x) in points.iter().enumerate() {
        let next = family::eval_real(fam, x)?;
        let target = points[(i + 1) % points.len()];
        residual = residual.max((next - target).abs());
    }
    if residual > CYCLE_RESIDUAL_TOL {
        return Err(DynError::NotACycle { residual });
    }
    let mut product = Mat2::IDENTITY;
    for &x in points {
        product = jacobian(beta, x, 0.0)?.mul(product);
    }
    let (eigenvalues, complex_pair) = product.eigenvalues();
    Ok(CycleEigenReport {
        beta,
        period: points.len(),
        points: points.to_vec(),
        product,
        eigenvalues,
        complex_pair,
    })
}

/// Stability of a real cycle of G_beta against perturbations off the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransverseStability {
    AttractingInPlane,
    /// Exactly one eigenvalue of the cycle's Jacobian product lies outside
    /// the unit circle.
    SaddleInPlane,
}

pub fn transverse_stability(beta: f64, points: &[f64]) -> Result<TransverseStability> {
    let report = cycle_eigen(beta, points)?;
    let outside = report
        .eigenvalues
        .iter()
        .filter(|e| e.norm() > 1.0)
        .count();
    if outside == 1 {
        Ok(TransverseStability::SaddleInPlane)
    } else {
        Ok(TransverseStability::AttractingInPlane)
    }
}

/// On the real axis (away from 0) the holomorphic and non-holomorphic maps
/// with the same real parameter agree to machine precision. Checks one point.
pub fn real_line_agreement(param: f64, x: f64) -> Result<bool> {
    if x == 0.0 {
        return Err(DynError::PoleHit);
    }
    let p = Complex64::new(param, 0.0);
    let z = Complex64::new(x, 0.0);
    let h = family::eval(Family::HoloPerturbed { m: 1, lambda: p }, z)?;
    let g = family::eval(Family::NonholoPerturbed { m: 1, beta: p }, z)?;
    Ok(h.im == 0.0 && g.im == 0.0 && (h.re - g.re).abs() < 1e-12)
}

/// Radius of the critical circle of G_beta for m = 1: (|beta|/2)^(1/3).
pub fn critical_circle_radius(beta: Complex64) -> Result<f64> {
    if beta == Complex64::new(0.0, 0.0) {
        return Err(DynError::PreconditionViolated("beta must be nonzero"));
    }
    Ok((beta.norm() / 2.0).powf(1.0 / 3.0))
}
