//! Sine-kernel gap probabilities.
//!
//! Evaluates `D(s, γ) = det(I − γ K_s)` on `L²(−1, 1)` for the sine kernel
//! `K_s(x, y) = sin(s(x − y)) / (π(x − y))`, both numerically (Nyström
//! discretization plus a symmetric eigensolver) and through the large-`s`
//! asymptotic formulas valid in the different regions of the `(s, v)`
//! quarter-plane, where `γ = 1 − e^{−2v}`.
//!
//! Modules:
//! - [`specialfn`]: complete elliptic integrals, Jacobi θ₃, the Barnes G pair
//!   `G(1 + iv/π) G(1 − iv/π)` and the Widom–Dyson constant.
//! - [`fredholm`]: quadrature, Nyström matrices, the eigensolver and the
//!   numerical log-determinant.
//! - [`asymptotics`]: regime classification, Stokes curves and the
//!   asymptotic expansions (Gaussian, perturbative, Stokes ladder, elliptic).
//! - [`thinning`]: thinned-process gap probabilities and a Monte Carlo GUE check.
//! - [`cli`]: the command-line front end used by the `sinegap` binary.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod fredholm;
pub mod oracle;
pub mod report;
pub mod specialfn;
pub mod thinning;
pub mod verify;

pub use error::{Result, SineGapError};
pub use fredholm::{GapParams, Precision};
pub use report::{Component, EvalReport, Method};
