//! The Barnes G-function on the conjugate pair `1 ± iv/π`.
//!
//! `ln G(1 + z)` is summed from its Weierstrass product,
//!
//! ```text
//! G(1 + z) = (2π)^{z/2} exp(−z(z + 1)/2 − z²γ_E/2)
//!            · Π_{k≥1} (1 + z/k)^k exp(−z + z²/(2k)),
//! ```
//!
//! with the first `N` factors taken explicitly and the remainder of the sum
//! expanded in powers of `1/k` and resummed with Hurwitz zeta tails. For
//! `z = iy` the conjugate pair only needs real parts, so
//!
//! ```text
//! ln G(1 + iy) + ln G(1 − iy) = (1 + γ_E) y² + Σ_k [k ln(1 + y²/k²) − y²/k].
//! ```

use std::f64::consts::PI;

use super::{BERNOULLI_EVEN, EULER_GAMMA};
use crate::error::{Result, SineGapError};

const MIN_FACTORS: usize = 10_000;
/// `y = v/π` beyond which the product would need more than ~10⁷ factors.
const MAX_Y: f64 = 1.0e6;

/// `ln[G(1 + iv/π) G(1 − iv/π)]` for `v ≥ 0`.
pub fn ln_barnes_g_pair(v: f64) -> Result<f64> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(SineGapError::domain(
            "ln_barnes_g_pair",
            format!("v = {v} must be finite and nonnegative"),
        ));
    }
    let y = v / PI;
    if y > MAX_Y {
        return Err(SineGapError::domain(
            "ln_barnes_g_pair",
            format!("v = {v} too large for the product representation"),
        ));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let n = MIN_FACTORS.max((8.0 * y).ceil() as usize);
    Ok(pair_partial_sum(y, n) + pair_tail(y, n))
}

/// `ln A(v) = 2 ln[G(1 + iv/π) G(1 − iv/π)] − (v²/π²)(3 − 2 ln(v/π))`.
pub fn ln_a(v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(SineGapError::domain(
            "ln_a",
            format!("v = {v} must be positive"),
        ));
    }
    let g = ln_barnes_g_pair(v)?;
    let r = v / PI;
    Ok(2.0 * g - r * r * (3.0 - 2.0 * r.ln()))
}

/// Explicit part: the polynomial prefactor plus the first `n` factors.
pub(crate) fn pair_partial_sum(y: f64, n: usize) -> f64 {
    let y2 = y * y;
    // smallest terms first
    let mut sum = 0.0;
    for k in (1..=n).rev() {
        let kf = k as f64;
        sum += kf * log1p_minus_x(y2 / (kf * kf));
    }
    (1.0 + EULER_GAMMA) * y2 + sum
}

/// `Σ_{k>n} k[ln(1 + t_k) − t_k]`, `t_k = y²/k²`, via
/// `Σ_{m≥2} (−1)^{m+1} y^{2m}/m · ζ(2m − 1, n + 1)`.
pub(crate) fn pair_tail(y: f64, n: usize) -> f64 {
    let a = (n + 1) as f64;
    let y2 = y * y;
    let mut power = y2;
    let mut tail = 0.0;
    for m in 2..200 {
        power *= y2;
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
        let term = sign * power / m as f64 * hurwitz_zeta_int(2 * m - 1, a);
        tail += term;
        if term.abs() < 1e-20 * tail.abs().max(1e-300) {
            break;
        }
    }
    tail
}

/// `ζ(p, a) = Σ_{j≥0} (a + j)^{−p}` for integer `p ≥ 2` and large `a`, by
/// Euler–Maclaurin.
pub(crate) fn hurwitz_zeta_int(p: u32, a: f64) -> f64 {
    let pf = p as f64;
    let mut sum = a.powf(1.0 - pf) / (pf - 1.0) + 0.5 * a.powf(-pf);
    // rising factorial p(p+1)…(p+2j−2) / (2j)!
    let mut coeff = pf;
    let mut fact = 2.0;
    let mut apow = a.powf(-pf - 1.0);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(5) {
        let term = b / fact * coeff * apow;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        let jj = (j + 1) as f64;
        coeff *= (pf + 2.0 * jj - 1.0) * (pf + 2.0 * jj);
        fact *= (2.0 * jj + 1.0) * (2.0 * jj + 2.0);
        apow /= a * a;
    }
    sum
}

/// `ln(1 + t) − t` without cancellation for small `t`.
fn log1p_minus_x(t: f64) -> f64 {
    if t.abs() < 0.05 {
        let mut term = -t * t / 2.0;
        let mut sum = term;
        let mut m = 2.0;
        while term.abs() > 1e-19 * sum.abs() {
            term *= -t * m / (m + 1.0);
            sum += term;
            m += 1.0;
        }
        sum
    } else {
        t.ln_1p() - t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with an arbitrary-precision library.
    const PAIR_V1: f64 = 0.153_970_141_049_603_47;
    const PAIR_VPI: f64 = 1.179_890_040_036_998_8;
    const PAIR_V10: f64 = 2.943_676_757_290_054;
    const PAIR_V50: f64 = -321.801_122_121_413;
    const LN_A_V2: f64 = -0.465_194_740_322_891_3;

    /// Brute-force product: 10⁶ explicit factors plus the leading tail term.
    fn product_oracle(v: f64) -> f64 {
        let y = v / PI;
        let n = 1_000_000usize;
        let y2 = y * y;
        let mut sum = 0.0;
        for k in (1..=n).rev() {
            let kf = k as f64;
            let t = y2 / (kf * kf);
            sum += kf * (t.ln_1p() - t);
        }
        // Σ_{k>n} −y⁴/(2k³) ≈ −y⁴/(4n²)
        (1.0 + EULER_GAMMA) * y2 + sum - y2 * y2 / (4.0 * (n as f64).powi(2))
    }

    #[test]
    fn zero_potential() {
        assert_eq!(ln_barnes_g_pair(0.0).unwrap(), 0.0);
        assert!(ln_barnes_g_pair(-1.0).is_err());
        assert!(ln_a(0.0).is_err());
    }

    #[test]
    fn matches_reference_values() {
        for (v, r) in [
            (1.0, PAIR_V1),
            (PI, PAIR_VPI),
            (10.0, PAIR_V10),
            (50.0, PAIR_V50),
        ] {
            let g = ln_barnes_g_pair(v).unwrap();
            assert!((g - r).abs() < 1e-10, "v={v}: {g} vs {r}");
        }
        assert!((ln_a(2.0).unwrap() - LN_A_V2).abs() < 1e-9);
    }

    #[test]
    fn matches_product_oracle() {
        for v in [1.0, PI] {
            let o = product_oracle(v);
            assert!((ln_barnes_g_pair(v).unwrap() - o).abs() < 1e-9, "v={v}");
        }
        let r = 2.0 / PI;
        let a_oracle = 2.0 * product_oracle(2.0) - r * r * (3.0 - 2.0 * r.ln());
        assert!((ln_a(2.0).unwrap() - a_oracle).abs() < 1e-9);
    }

    #[test]
    fn ln_a_limits() {
        assert!((ln_a(PI).unwrap() - (2.0 * ln_barnes_g_pair(PI).unwrap() - 3.0)).abs() < 1e-14);
        assert!(ln_a(1e-4).unwrap().abs() < 1e-6);
    }

    #[test]
    fn tail_is_independent_of_cut() {
        let y = 7.3;
        let a = pair_partial_sum(y, 2_000) + pair_tail(y, 2_000);
        let b = pair_partial_sum(y, 20_000) + pair_tail(y, 20_000);
        assert!((a - b).abs() < 1e-11);
    }

    #[test]
    fn hurwitz_matches_direct_sum() {
        let direct: f64 = (0..2_000_000).map(|j| (50.0 + j as f64).powi(-3)).sum();
        let tail = (50.0_f64 + 2.0e6).powi(-2) / 2.0;
        assert!((hurwitz_zeta_int(3, 50.0) - (direct + tail)).abs() < 1e-15);
    }
}
