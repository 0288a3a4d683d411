use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::modulus::{solve_modulus, EllipticData};
use super::regime::{classify, ladder_cap, stokes_q, Regime};
use crate::error::{Result, SineGapError};
use crate::fredholm::GapParams;
use crate::report::{EvalReport, Method};
use crate::specialfn::{ln_a, ln_barnes_g_pair, theta3, widom_dyson_ln_c0, ThetaArgs};

/// How the undetermined factor `B(s, v)` of the elliptic formula is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BMode {
    /// `B = 1`, the `κ ↓ 0` limit.
    Unit,
    /// `ln B = −(1/12) ln((1 − κ)(ln s)⁵) + (1/6) ln(8π)`, the `κ ↑ 1` limit.
    KappaUp,
    /// `ln B` left out and flagged.
    #[default]
    Omit,
}

impl BMode {
    pub fn name(self) -> &'static str {
        match self {
            BMode::Unit => "unit",
            BMode::KappaUp => "kappa_up",
            BMode::Omit => "omit",
        }
    }
}

impl std::str::FromStr for BMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "unit" => Ok(BMode::Unit),
            "kappa_up" | "kappa-up" => Ok(BMode::KappaUp),
            "omit" => Ok(BMode::Omit),
            other => Err(format!("unknown b_mode '{other}' (unit, kappa_up, omit)")),
        }
    }
}

/// The factors `1 + (j!/√π) 2^{−3j−2} s^{−j−½} e^{2(s−v)}`, `j = 0..q−1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderFactors {
    pub q: u32,
    pub factors: Vec<f64>,
    /// `ln` of each factor, kept separately since the factors themselves can
    /// overflow deep in the ladder.
    pub ln_factors: Vec<f64>,
}

pub fn ladder_factors(s: f64, v: f64, q: u32) -> LadderFactors {
    let mut ln_fact = 0.0;
    let mut ln_factors = Vec::with_capacity(q as usize);
    for j in 0..q {
        if j > 0 {
            ln_fact += (j as f64).ln();
        }
        let jf = j as f64;
        let ln_term = ln_fact - 0.5 * PI.ln() - (3.0 * jf + 2.0) * 2f64.ln() - (jf + 0.5) * s.ln()
            + 2.0 * (s - v);
        ln_factors.push(softplus(ln_term));
    }
    LadderFactors {
        q,
        factors: ln_factors.iter().map(|l| l.exp()).collect(),
        ln_factors,
    }
}

/// `ln(1 + eˣ)`.
fn softplus(x: f64) -> f64 {
    if x > 35.0 {
        x + (-x).exp()
    } else {
        x.exp().ln_1p()
    }
}

/// `ln D(s, 1) ≈ −s²/2 − ¼ ln s + ln c₀`, with `err_est = 1/s`.
pub fn eq2_ln_d(s: f64) -> Result<EvalReport> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(SineGapError::domain(
            "eq2_ln_d",
            format!("s = {s} must be positive"),
        ));
    }
    let gaussian = -0.5 * s * s;
    let power = -0.25 * s.ln();
    let constant = widom_dyson_ln_c0();
    let mut r = EvalReport::new(Method::AsymptoticEq2, gaussian + power + constant, 1.0 / s)
        .with_component("gaussian", gaussian)
        .with_component("power", power)
        .with_component("ln_c0", constant);
    r.regime = Some(Regime::Saturation);
    if s <= 1.0 {
        r.warnings
            .push(format!("s = {s} <= 1 is outside asymptotic validity"));
    }
    Ok(r)
}

/// `ln D ≈ −4vs/π + (2v²/π²) ln(4s) + 2 ln[G(1 + iv/π)G(1 − iv/π)]`.
///
/// The remainder bound `c₁v/s + c₂v³/s` has unspecified constants; `err_est`
/// reports it with `c₁ = c₂ = 1`.
pub fn eq3_ln_d(s: f64, v: f64) -> Result<EvalReport> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(SineGapError::domain(
            "eq3_ln_d",
            format!("s = {s} must be positive"),
        ));
    }
    if !(v >= 0.0) || !v.is_finite() {
        return Err(SineGapError::domain(
            "eq3_ln_d",
            format!("v = {v} must be finite and nonnegative"),
        ));
    }
    let linear = -4.0 * v * s / PI;
    let power = 2.0 * v * v / (PI * PI) * (4.0 * s).ln();
    let barnes = 2.0 * ln_barnes_g_pair(v)?;
    let err = v / s + v * v * v / s;
    let mut r = EvalReport::new(Method::AsymptoticEq3, linear + power + barnes, err)
        .with_component("linear", linear)
        .with_component("power", power)
        .with_component("barnes", barnes);
    r.regime = Some(Regime::PerturbativeFixedV);
    if v >= s.cbrt() {
        r.warnings.push(format!(
            "v = {v} >= s^(1/3) = {}: outside the stated range",
            s.cbrt()
        ));
    }
    Ok(r)
}

/// Gaussian value times the Stokes-ladder factors.
///
/// On the saturation side (`u < ½`, including `v = ∞`) the product is
/// empty and the result is the Gaussian value. Beyond the ladder cap the
/// formula does not apply and a regime error is returned.
pub fn eq5_ln_d(s: f64, v: f64) -> Result<EvalReport> {
    if !(s > 1.0) {
        return Err(SineGapError::domain(
            "eq5_ln_d",
            format!("s = {s} must exceed 1"),
        ));
    }
    if !(v >= 0.0) {
        return Err(SineGapError::domain(
            "eq5_ln_d",
            format!("v = {v} must be nonnegative"),
        ));
    }
    let base = eq2_ln_d(s)?;
    let idx = stokes_q(s, v);
    let q = match idx.q {
        Some(q) => q,
        None if idx.u < 0.5 => 0,
        None => {
            return Err(SineGapError::Regime(format!(
                "u = {} is beyond the Stokes ladder (q <= {}) at s = {s}",
                idx.u,
                ladder_cap(s)
            )))
        }
    };
    let ladder = ladder_factors(s, v, q);
    let mut r = EvalReport::new(
        Method::AsymptoticEq5,
        base.ln_d + ladder.ln_factors.iter().sum::<f64>(),
        // o(1) with unknown rate
        1.0 / s.ln(),
    );
    r.components = base.components;
    for (j, lf) in ladder.ln_factors.iter().enumerate() {
        r.components.push(crate::report::Component {
            name: format!("ladder_{j}"),
            value: *lf,
        });
    }
    r.regime = Some(if q == 0 {
        Regime::Saturation
    } else {
        Regime::StokesLadder { q }
    });
    Ok(r)
}

/// Full result of the elliptic formula.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eq6Evaluation {
    pub report: EvalReport,
    pub elliptic: EllipticData,
    /// `θ(sV | τ)`.
    pub theta: f64,
}

/// `ln D ≈ −s²(1 − a²)/2 + vsV + ln θ(sV|τ) + ln A(v) + ln B(s, v)`.
pub fn eq6_ln_d(s: f64, v: f64, b_mode: BMode) -> Result<EvalReport> {
    eq6_with_data(s, v, b_mode).map(|e| e.report)
}

pub fn eq6_with_data(s: f64, v: f64, b_mode: BMode) -> Result<Eq6Evaluation> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(SineGapError::domain(
            "eq6_ln_d",
            format!("s = {s} must be positive"),
        ));
    }
    let kappa = v / s;
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(SineGapError::Regime(format!(
            "kappa = {kappa} outside (0, 1): the elliptic formula does not apply"
        )));
    }
    if b_mode == BMode::KappaUp && !(s > 1.0) {
        return Err(SineGapError::domain(
            "eq6_ln_d",
            "the kappa_up form of ln B needs s > 1",
        ));
    }
    let ell = solve_modulus(kappa)?;
    let gaussian = -0.5 * s * s * ell.a_prime * ell.a_prime;
    let potential = v * s * ell.v_coef;
    // θ is 1-periodic; theta3 reduces its argument
    let theta = theta3(ThetaArgs::new(s * ell.v_coef, ell.tau_im))?;
    let ln_theta = theta.ln();
    let ln_a_val = ln_a(v)?;
    let ln_b = match b_mode {
        BMode::Unit => Some(0.0),
        BMode::KappaUp => {
            Some(-((1.0 - kappa) * s.ln().powi(5)).ln() / 12.0 + (8.0 * PI).ln() / 6.0)
        }
        BMode::Omit => None,
    };
    let total = gaussian + potential + ln_theta + ln_a_val + ln_b.unwrap_or(0.0);
    let err = match b_mode {
        BMode::Unit => kappa,
        BMode::KappaUp => 1.0 / s.ln().max(1.0),
        // ln B is an unknown bounded quantity
        BMode::Omit => 1.0,
    };
    let mut r = EvalReport::new(Method::AsymptoticEq6, total, err)
        .with_component("gaussian", gaussian)
        .with_component("potential", potential)
        .with_component("theta", ln_theta)
        .with_component("ln_A", ln_a_val);
    match ln_b {
        Some(b) => r = r.with_component("ln_B", b),
        None => r.warnings.push("ln B omitted (b_mode = omit)".to_string()),
    }
    let params = GapParams::from_v(s, v)?;
    if !classify(&params)
        .iter()
        .any(|ri| ri.regime == Regime::Elliptic)
    {
        r.warnings
            .push(format!("(s, v) = ({s}, {v}) is outside the elliptic range"));
    }
    r.regime = Some(Regime::Elliptic);
    Ok(Eq6Evaluation {
        report: r,
        elliptic: ell,
        theta,
    })
}
