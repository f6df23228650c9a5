//! quadlab: a numerical laboratory for low-dimensional quadratic dynamics.
//!
//! The library covers four families — the singularly perturbed complex
//! quadratics z^2 + lambda/z^m (holomorphic) and z^2 + beta/conj(z)^m
//! (non-holomorphic), the real logistic family 1 - a x^2, and the Henon
//! map — with a shared orbit engine, fixed-point and bifurcation solvers,
//! escape-time rendering with component analysis, Julia-set classification
//! from critical-orbit evidence, and a statistics toolbox (Lyapunov
//! exponents, correlations, entropy estimates, derivative sums).
//!
//! Bulk operations run data-parallel under the default `parallel` feature
//! and fall back to sequential execution without it; either way results are
//! deterministic and identical across worker counts.

pub mod equilibria;
pub mod error;
pub mod exec;
pub mod family;
pub mod julia;
pub mod nonholo;
pub mod orbit;
pub mod render;
pub mod stats;
pub mod sweep;

pub use error::DynError;
pub use family::Family;
