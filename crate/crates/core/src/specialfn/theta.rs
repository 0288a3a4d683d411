//! Jacobi's third theta function `θ(z|τ) = Σ_k exp(iπk²τ + 2πikz)` on the
//! imaginary axis `τ = i·tau_im`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, SineGapError};

/// Terms below this fraction of the leading term are dropped.
const TRUNCATION: f64 = 1e-18;

/// Below this value of `tau_im` the modular transformation `τ → −1/τ` is
/// applied first, so the summed series always has ratio at most `e^{−π}`.
pub const MODULAR_SWITCH: f64 = 1.0;

/// Real argument `z` and the imaginary part of `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaArgs {
    pub z: f64,
    pub tau_im: f64,
}

impl ThetaArgs {
    pub fn new(z: f64, tau_im: f64) -> Self {
        ThetaArgs { z, tau_im }
    }
}

/// `θ(z | i·tau_im)` for real `z`. The value is real and positive.
pub fn theta3(args: ThetaArgs) -> Result<f64> {
    check(&args)?;
    let z = reduce(args.z);
    if args.tau_im >= MODULAR_SWITCH {
        Ok(direct(z, args.tau_im))
    } else {
        Ok(modular(z, args.tau_im))
    }
}

/// The `q`-series `1 + 2 Σ_{k≥1} e^{−π·tau_im·k²} cos(2πkz)`, with no
/// modular transformation.
pub fn theta3_direct(args: ThetaArgs) -> Result<f64> {
    check(&args)?;
    Ok(direct(reduce(args.z), args.tau_im))
}

/// `tau_im^{−1/2} Σ_k exp(−π(z − k)²/tau_im)`, the image of the series under
/// `τ → −1/τ`.
pub fn theta3_modular(args: ThetaArgs) -> Result<f64> {
    check(&args)?;
    Ok(modular(reduce(args.z), args.tau_im))
}

/// Direct series for complex `z`. Used for the quasi-periodicity identity,
/// which moves `z` off the real line.
pub fn theta3_complex(z: Complex64, tau_im: f64) -> Result<Complex64> {
    if !(tau_im > 0.0) || !tau_im.is_finite() {
        return Err(SineGapError::domain(
            "theta3_complex",
            format!("tau_im = {tau_im} must be positive"),
        ));
    }
    // |term_k| = exp(−π tau_im k² − 2π k Im z), peaked at k = −Im z / tau_im
    let centre = -z.im / tau_im;
    let spread = (45.0 / (PI * tau_im)).sqrt();
    let lo = (centre - spread).floor() as i64 - 1;
    let hi = (centre + spread).ceil() as i64 + 1;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in lo..=hi {
        let kf = k as f64;
        let exponent =
            Complex64::new(-PI * tau_im * kf * kf, 0.0) + Complex64::new(0.0, 2.0 * PI * kf) * z;
        sum += exponent.exp();
    }
    Ok(sum)
}

fn check(args: &ThetaArgs) -> Result<()> {
    if !(args.tau_im > 0.0) || !args.tau_im.is_finite() {
        return Err(SineGapError::domain(
            "theta3",
            format!("tau_im = {} must be positive and finite", args.tau_im),
        ));
    }
    if !args.z.is_finite() {
        return Err(SineGapError::domain("theta3", "z must be finite"));
    }
    Ok(())
}

/// Reduce to `[−½, ½]` using `θ(z + 1) = θ(z)`.
fn reduce(z: f64) -> f64 {
    z - z.round()
}

fn direct(z: f64, tau_im: f64) -> f64 {
    let mut sum = 1.0;
    let mut k = 1.0_f64;
    loop {
        let w = (-PI * tau_im * k * k).exp();
        if w < TRUNCATION {
            break;
        }
        sum += 2.0 * w * (2.0 * PI * k * z).cos();
        k += 1.0;
    }
    sum
}

fn modular(z: f64, tau_im: f64) -> f64 {
    // |z| ≤ ½ so the k = 0 term dominates up to a factor e^{−π/(4 tau_im)}
    let mut sum = (-PI * z * z / tau_im).exp();
    let mut k = 1.0_f64;
    loop {
        let wp = (-PI * (z - k) * (z - k) / tau_im).exp();
        let wm = (-PI * (z + k) * (z + k) / tau_im).exp();
        sum += wp + wm;
        if wp.max(wm) < TRUNCATION * sum {
            break;
        }
        k += 1.0;
    }
    sum / tau_im.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn large_tau_limit() {
        let t = 5.0;
        let v = theta3(ThetaArgs::new(0.0, t)).unwrap();
        let expected = 1.0 + 2.0 * (-PI * t).exp() + 2.0 * (-4.0 * PI * t).exp();
        assert!((v - expected).abs() < 1e-16);
        assert!((theta3(ThetaArgs::new(0.3, 40.0)).unwrap() - 1.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_tau() {
        assert!(theta3(ThetaArgs::new(0.0, 0.0)).is_err());
        assert!(theta3(ThetaArgs::new(0.0, -1.0)).is_err());
        assert!(theta3_complex(Complex64::new(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn modular_overlap_band() {
        for i in 0..=40 {
            let t = 0.8 + 0.01 * i as f64;
            for j in 0..=10 {
                let z = -0.5 + 0.1 * j as f64;
                let a = theta3_direct(ThetaArgs::new(z, t)).unwrap();
                let b = theta3_modular(ThetaArgs::new(z, t)).unwrap();
                assert!((a - b).abs() < 1e-13, "t={t} z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn small_tau_stays_accurate() {
        // Gaussian limit: θ(0|it) ≈ t^{−1/2} for small t
        let v = theta3(ThetaArgs::new(0.0, 0.01)).unwrap();
        assert!((v - 10.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn periodic(z in -3.0f64..3.0, t in 0.05f64..4.0) {
            let a = theta3(ThetaArgs::new(z, t)).unwrap();
            let b = theta3(ThetaArgs::new(z + 1.0, t)).unwrap();
            prop_assert!((a - b).abs() < 1e-12 * a.max(1.0));
            prop_assert!(a > 0.0);
        }

        #[test]
        fn quasi_periodic(x in -1.0f64..1.0, t in 0.6f64..3.0) {
            let z = Complex64::new(x, 0.0);
            let shifted = z + Complex64::new(0.0, t);
            let lhs = theta3_complex(shifted, t).unwrap();
            let factor = Complex64::new(PI * t, -2.0 * PI * x).exp();
            let rhs = theta3_complex(z, t).unwrap() * factor;
            prop_assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
            let real = theta3(ThetaArgs::new(x, t)).unwrap();
            prop_assert!((theta3_complex(z, t).unwrap().re - real).abs() < 1e-12);
        }
    }
}
