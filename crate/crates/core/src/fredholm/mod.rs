//! Numerical evaluation of `D(s, γ) = det(I − γK_s)` on `L²(−1, 1)`.
//!
//! The operator is discretized with a Gauss–Legendre Nyström rule,
//! symmetrized as `√wᵢ K(xᵢ, xⱼ) √wⱼ`, and diagonalized. `ln D` is then
//! `Σⱼ ln(1 − γλⱼ)`, evaluated through the deficits `1 − λⱼ` so that the
//! `γ = 1` case keeps its accuracy.

mod determinant;
pub mod eigen;
mod params;
mod quadrature;

pub use determinant::{
    eigenvalue_deficits, log_det, log_det_at_order, log_det_lu, nystrom_matrix, sine_kernel,
    spectrum, FredholmConfig, Precision, Spectrum, SINC_SERIES_THRESHOLD,
};
pub use eigen::SymMatrix;
pub use params::GapParams;
pub use quadrature::{gauss_legendre, Quadrature};
