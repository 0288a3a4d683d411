use std::fmt;

use serde::Serialize;

use crate::fredholm::GapParams;

/// A region of the `(s, v)` quarter-plane where one asymptotic formula holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "label")]
pub enum Regime {
    /// `κ > 1 − ¼(ln s)/s`: `D(s, γ) = D(s, 1)(1 + o(1))`.
    Saturation,
    /// `u ∈ [q − ½, q + ½)` with `κ = 1 − (u/2)(ln s)/s`.
    StokesLadder { q: u32 },
    /// `0 < κ < 1 − ¼(ln s)^{4/3}/s`.
    Elliptic,
    /// `0 ≤ v < s^{1/3}`.
    PerturbativeFixedV,
    /// `s ≤ 1`, where the boundaries (which involve `ln s`) are meaningless.
    OutOfTheory,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Saturation => f.write_str("Saturation"),
            Regime::StokesLadder { q } => write!(f, "StokesLadder(q={q})"),
            Regime::Elliptic => f.write_str("Elliptic"),
            Regime::PerturbativeFixedV => f.write_str("PerturbativeFixedV"),
            Regime::OutOfTheory => f.write_str("OutOfTheory"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeInfo {
    pub regime: Regime,
    pub boundary_note: String,
}

/// Position relative to the Stokes curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesIndex {
    /// `u = 2(s − v)/ln s`, so that `e^{2(s−v)} = s^u`.
    pub u: f64,
    /// Number of ladder factors, `None` on the saturation side (`u < ½`) or
    /// beyond the growth cap.
    pub q: Option<u32>,
}

/// `v = s − ¼(2k + 1) ln s`, the `k`-th Stokes curve.
pub fn stokes_curve_v(s: f64, k: u32) -> f64 {
    s - 0.25 * (2 * k + 1) as f64 * s.ln()
}

/// `v = s − ¼ ln s`; saturation holds strictly above it.
pub fn saturation_edge_v(s: f64) -> f64 {
    stokes_curve_v(s, 0)
}

/// `v = s − ¼(ln s)^{4/3}`; the elliptic regime holds strictly below it.
pub fn elliptic_edge_v(s: f64) -> f64 {
    s - 0.25 * s.ln().powf(4.0 / 3.0)
}

/// Largest admissible ladder index, `[(ln s)^{1/3}] + 1`.
pub fn ladder_cap(s: f64) -> u32 {
    s.ln().cbrt().floor() as u32 + 1
}

/// `q` with `u ∈ [q − ½, q + ½)`; `None` when `u < ½`. Ties go to the
/// larger `q`.
pub fn q_from_u(u: f64) -> Option<u32> {
    if !(u >= 0.5) || !u.is_finite() {
        return None;
    }
    Some((u + 0.5).floor() as u32)
}

pub fn stokes_q(s: f64, v: f64) -> StokesIndex {
    let u = 2.0 * (s - v) / s.ln();
    let q = q_from_u(u).filter(|&q| q <= ladder_cap(s));
    StokesIndex { u, q }
}

/// Every regime whose range contains `(s, v)`. Overlap bands yield more than
/// one entry; `s ≤ 1` yields `[OutOfTheory]`.
pub fn classify(params: &GapParams) -> Vec<RegimeInfo> {
    let (s, v, kappa) = (params.s, params.v, params.kappa);
    if !(s > 1.0) {
        return vec![RegimeInfo {
            regime: Regime::OutOfTheory,
            boundary_note: format!("s = {s} <= 1: regime boundaries involve ln s"),
        }];
    }
    let mut out = Vec::new();
    let sat_edge = saturation_edge_v(s);
    if v > sat_edge {
        out.push(RegimeInfo {
            regime: Regime::Saturation,
            boundary_note: format!("v > s - ln(s)/4 = {sat_edge}"),
        });
    }
    let idx = stokes_q(s, v);
    if let Some(q) = idx.q {
        out.push(RegimeInfo {
            regime: Regime::StokesLadder { q },
            boundary_note: format!(
                "u = {} in [{}, {}), cap {}",
                idx.u,
                q as f64 - 0.5,
                q as f64 + 0.5,
                ladder_cap(s)
            ),
        });
    }
    let ell_edge = 1.0 - 0.25 * s.ln().powf(4.0 / 3.0) / s;
    if kappa > 0.0 && kappa < ell_edge {
        out.push(RegimeInfo {
            regime: Regime::Elliptic,
            boundary_note: format!("0 < kappa < 1 - (ln s)^(4/3)/(4s) = {ell_edge}"),
        });
    }
    let pert_edge = s.cbrt();
    if v < pert_edge {
        out.push(RegimeInfo {
            regime: Regime::PerturbativeFixedV,
            boundary_note: format!("v < s^(1/3) = {pert_edge}"),
        });
    }
    out
}

/// Labels joined with `+`, e.g. `Elliptic+PerturbativeFixedV`; `none` if
/// the point lies in no printed range.
pub fn regime_label(regimes: &[RegimeInfo]) -> String {
    if regimes.is_empty() {
        return "none".to_string();
    }
    regimes
        .iter()
        .map(|r| r.regime.to_string())
        .collect::<Vec<_>>()
        .join("+")
}
