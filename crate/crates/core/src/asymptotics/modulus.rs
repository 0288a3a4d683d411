//! The elliptic modulus `a(κ)` and the derived quantities `V` and `τ`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Result, SineGapError};
use crate::specialfn::elliptic_ke_with_complement;

const A_MIN: f64 = 1e-12;
const A_MAX: f64 = 1.0 - 1e-12;

/// Elliptic data for the `κ`-dependent regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticData {
    pub kappa: f64,
    pub a: f64,
    pub a_prime: f64,
    pub k_a: f64,
    pub k_aprime: f64,
    pub e_a: f64,
    pub e_aprime: f64,
    /// `V = −(2/π)[E(a) − (1 − a²)K(a)]`, in `(−2/π, 0)`.
    pub v_coef: f64,
    /// `−iτ = 2K(a)/K(a′)`.
    pub tau_im: f64,
}

/// Leading terms of `a`, `V` and `−iτ` as `κ ↓ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallKappaExpansion {
    pub a: f64,
    pub v_coef: f64,
    pub tau_im: f64,
}

/// `κ(a) = ∫_a¹ √((x² − a²)/(1 − x²)) dx = E(a′) − a²K(a′)`.
pub fn kappa_of_a(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(SineGapError::domain(
            "kappa_of_a",
            format!("modulus {a} outside (0, 1)"),
        ));
    }
    Ok(kappa_closed_form(a, complement(a)))
}

fn kappa_closed_form(a: f64, ap: f64) -> f64 {
    let (k, e) = elliptic_ke_with_complement(ap, a);
    e - a * a * k
}

fn complement(a: f64) -> f64 {
    ((1.0 - a) * (1.0 + a)).sqrt()
}

/// Finds the unique `a ∈ (0, 1)` with `κ(a) = kappa` and fills in the
/// elliptic data.
///
/// `κ(a)` is strictly decreasing with `κ′(a) = −a K(a′)`; the root is
/// bracketed in `[1e−12, 1 − 1e−12]` and refined by Newton steps that fall
/// back to bisection whenever they leave the bracket.
pub fn solve_modulus(kappa: f64) -> Result<EllipticData> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(SineGapError::domain(
            "solve_modulus",
            format!("kappa = {kappa} outside (0, 1)"),
        ));
    }
    let (mut lo, mut hi) = (A_MIN, A_MAX);
    let mut a = if kappa < 0.2 {
        (1.0 - 2.0 * kappa / PI - kappa * kappa / (PI * PI)).clamp(lo, hi)
    } else {
        0.5
    };
    let mut converged = false;
    for _ in 0..200 {
        let ap = complement(a);
        let f = kappa_closed_form(a, ap) - kappa;
        if f > 0.0 {
            lo = a;
        } else {
            hi = a;
        }
        let (k_ap, _) = elliptic_ke_with_complement(ap, a);
        let slope = -a * k_ap;
        let newton = a - f / slope;
        let next = if newton > lo && newton < hi && slope != 0.0 {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - a).abs();
        a = next;
        if step <= 1e-15 || hi - lo <= 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SineGapError::Convergence {
            func: "solve_modulus",
            msg: format!("no convergence for kappa = {kappa}"),
        });
    }
    Ok(elliptic_data(kappa, a))
}

fn elliptic_data(kappa: f64, a: f64) -> EllipticData {
    let ap = complement(a);
    let (k_a, e_a) = elliptic_ke_with_complement(a, ap);
    let (k_aprime, e_aprime) = elliptic_ke_with_complement(ap, a);
    EllipticData {
        kappa,
        a,
        a_prime: ap,
        k_a,
        k_aprime,
        e_a,
        e_aprime,
        v_coef: -2.0 / PI * (e_a - ap * ap * k_a),
        tau_im: 2.0 * k_a / k_aprime,
    }
}

/// `a ≈ 1 − 2κ/π − κ²/π²`,
/// `V ≈ −(2/π)(1 + (κ/π) ln κ − (κ/π)(1 + ln 4π))`,
/// `−iτ ≈ (2/π) ln(4π/κ)`. Meaningful for `κ` below about 0.2.
pub fn small_kappa_expansion(kappa: f64) -> Result<SmallKappaExpansion> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(SineGapError::domain(
            "small_kappa_expansion",
            format!("kappa = {kappa} outside (0, 1)"),
        ));
    }
    let r = kappa / PI;
    Ok(SmallKappaExpansion {
        a: 1.0 - 2.0 * r - r * r,
        v_coef: -2.0 / PI * (1.0 + r * kappa.ln() - r * (1.0 + (4.0 * PI).ln())),
        tau_im: 2.0 / PI * (4.0 * PI / kappa).ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::kappa_quadrature;
    use crate::specialfn::{theta3, ThetaArgs};

    #[test]
    fn closed_form_matches_quadrature() {
        for a in [0.5, 0.05, 0.3, 0.7, 0.95, 0.999] {
            let q = kappa_quadrature(a, 1e-15);
            assert!((kappa_of_a(a).unwrap() - q).abs() < 1e-12, "a={a}");
        }
    }

    #[test]
    fn endpoint_limits() {
        assert!((kappa_of_a(1e-9).unwrap() - 1.0).abs() < 1e-15);
        assert!(kappa_of_a(1.0 - 1e-12).unwrap() < 1e-10);
        assert!(kappa_of_a(0.0).is_err() && kappa_of_a(1.0).is_err());
    }

    #[test]
    fn round_trip() {
        for i in 1..=20 {
            let a = i as f64 / 21.0;
            let e = solve_modulus(kappa_of_a(a).unwrap()).unwrap();
            assert!((e.a - a).abs() < 1e-12, "a={a} got {}", e.a);
        }
        let e = solve_modulus(0.5).unwrap();
        assert!((kappa_quadrature(e.a, 1e-15) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn limits_of_v_and_tau() {
        let near_one = solve_modulus(1.0 - 1e-8).unwrap();
        assert!(near_one.a < 1e-3 && near_one.v_coef.abs() < 1e-5);
        let near_zero = solve_modulus(1e-8).unwrap();
        assert!(near_zero.a > 1.0 - 1e-7);
        assert!((near_zero.v_coef + 2.0 / PI).abs() < 1e-6);
        for i in 1..50 {
            let e = solve_modulus(i as f64 / 50.0).unwrap();
            assert!(e.v_coef > -2.0 / PI && e.v_coef < 0.0);
            assert!(e.tau_im > 0.0);
        }
    }

    #[test]
    fn small_kappa_against_exact() {
        let k = 0.01;
        let exact = solve_modulus(k).unwrap();
        let approx = small_kappa_expansion(k).unwrap();
        assert!((approx.a - exact.a).abs() <= 1e-5);
        assert!((approx.v_coef - exact.v_coef).abs() <= 1e-3);
        let th = theta3(ThetaArgs::new(37.0 * approx.v_coef, approx.tau_im)).unwrap();
        assert!((th - 1.0).abs() < 1e-3);
        assert!((approx.tau_im - exact.tau_im).abs() < 0.05);
    }

    #[test]
    fn a_decreases_with_kappa() {
        let mut prev = 1.0;
        for i in 1..100 {
            let a = solve_modulus(i as f64 / 100.0).unwrap().a;
            assert!(a < prev);
            prev = a;
        }
    }
}
