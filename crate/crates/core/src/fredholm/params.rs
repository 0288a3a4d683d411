use serde::Serialize;

use crate::error::{Result, SineGapError};

/// A point `(s, v)` of the quarter-plane with `γ = 1 − e^{−2v}` and
/// `κ = v/s`.
///
/// `v = +∞` (equivalently `γ = 1`) is the pure gap probability. The
/// complement `1 − γ = e^{−2v}` is stored separately because it is the
/// quantity that matters when `γ` is close to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapParams {
    pub s: f64,
    pub v: f64,
    pub gamma: f64,
    pub kappa: f64,
    gamma_complement: f64,
}

impl GapParams {
    pub fn from_v(s: f64, v: f64) -> Result<Self> {
        check_s(s)?;
        if !(v >= 0.0) {
            return Err(SineGapError::domain(
                "GapParams::from_v",
                format!("v = {v} must be nonnegative"),
            ));
        }
        let complement = (-2.0 * v).exp();
        Ok(GapParams {
            s,
            v,
            gamma: -(-2.0 * v).exp_m1(),
            kappa: v / s,
            gamma_complement: complement,
        })
    }

    pub fn from_gamma(s: f64, gamma: f64) -> Result<Self> {
        check_s(s)?;
        if !(0.0..=1.0).contains(&gamma) {
            return Err(SineGapError::domain(
                "GapParams::from_gamma",
                format!("gamma = {gamma} outside [0, 1]"),
            ));
        }
        let v = if gamma == 1.0 {
            f64::INFINITY
        } else {
            -0.5 * (-gamma).ln_1p()
        };
        Ok(GapParams {
            s,
            v,
            gamma,
            kappa: v / s,
            gamma_complement: 1.0 - gamma,
        })
    }

    /// `γ = 1`, `v = +∞`.
    pub fn saturated(s: f64) -> Result<Self> {
        Self::from_gamma(s, 1.0)
    }

    /// `1 − γ`, exact when constructed from `v`.
    pub fn gamma_complement(&self) -> f64 {
        self.gamma_complement
    }

    pub fn is_saturated(&self) -> bool {
        self.gamma_complement == 0.0
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(SineGapError::domain(
            "GapParams",
            format!("s = {s} must be positive and finite"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_from_v() {
        let p = GapParams::from_v(10.0, 1.0).unwrap();
        assert!((p.gamma - (1.0 - (-2.0f64).exp())).abs() < 1e-16);
        assert_eq!(p.kappa, 0.1);
        let p = GapParams::from_v(10.0, f64::INFINITY).unwrap();
        assert_eq!(p.gamma, 1.0);
        assert!(p.is_saturated());
    }

    #[test]
    fn gamma_one_is_infinite_v() {
        let p = GapParams::from_gamma(3.0, 1.0).unwrap();
        assert!(p.v.is_infinite() && p.kappa.is_infinite());
        let q = GapParams::from_gamma(3.0, 0.75).unwrap();
        assert!((q.v - 0.5 * 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GapParams::from_v(0.0, 1.0).is_err());
        assert!(GapParams::from_v(1.0, -1.0).is_err());
        assert!(GapParams::from_gamma(1.0, 1.5).is_err());
        assert!(GapParams::from_gamma(f64::NAN, 0.5).is_err());
    }
}
