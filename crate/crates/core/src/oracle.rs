//! Reference routines that share no code path with the production
//! evaluators. They back the `verify` command and the test suites.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::specialfn::BERNOULLI_EVEN;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]` to
/// absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (k, g) = gk15(f, a, b);
        if (k - g).abs() <= tol || depth == 0 {
            return k;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(&f, a, b, tol, 50)
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * h, gauss * h)
}

/// `K(k)` from its defining integral after `t = sin θ`.
pub fn elliptic_k_quadrature(k: f64, tol: f64) -> f64 {
    integrate(
        |th| 1.0 / (1.0 - k * k * th.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        tol,
    )
}

/// `E(k)` from its defining integral after `t = sin θ`.
pub fn elliptic_e_quadrature(k: f64, tol: f64) -> f64 {
    integrate(
        |th| (1.0 - k * k * th.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        tol,
    )
}

/// `κ(a) = ∫_a¹ √((x² − a²)/(1 − x²)) dx`.
///
/// With `x = cos θ` the integral becomes `∫₀^{θ₀} √(cos²θ − a²) dθ`,
/// `θ₀ = arccos a`; the square-root zero at `θ₀` is removed with
/// `θ = θ₀(1 − w²)`.
pub fn kappa_quadrature(a: f64, tol: f64) -> f64 {
    let th0 = a.acos();
    integrate(
        |w| {
            let th = th0 * (1.0 - w * w);
            let c = th.cos();
            ((c - a) * (c + a)).max(0.0).sqrt() * 2.0 * th0 * w
        },
        0.0,
        1.0,
        tol,
    )
}

/// `ζ′(−1) = 1/12 − ln A`, with Glaisher's constant `A` from the
/// hyperfactorial asymptotics
/// `ln Π_{k≤n} k^k = (n²/2 + n/2 + 1/12) ln n − n²/4 + ln A + O(n⁻²)`.
pub fn zeta_prime_minus_one_glaisher() -> f64 {
    let n = 24u32;
    let nf = n as f64;
    let ln_h: f64 = (1..=n).map(|k| k as f64 * (k as f64).ln()).sum();
    let mut ln_glaisher = ln_h - (nf * nf / 2.0 + nf / 2.0 + 1.0 / 12.0) * nf.ln() + nf * nf / 4.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().skip(1).take(8) {
        let m = 2.0 * (j + 1) as f64;
        ln_glaisher += b / (m * (m - 1.0) * (m - 2.0)) * nf.powf(2.0 - m);
    }
    1.0 / 12.0 - ln_glaisher
}

/// First-order trace approximation `ln(1 − γ·2s/π)` of `ln D` for small `s`.
pub fn small_s_ln_d(s: f64, gamma: f64) -> f64 {
    (1.0 - gamma * 2.0 * s / PI).ln()
}

/// Slepian-type prediction of the `j`-th eigenvalue deficit of the sine
/// kernel, `(√π/j!)·2^{3j+2}·s^{j+1/2}·e^{−2s}`.
pub fn slepian_deficit(s: f64, j: u32) -> f64 {
    let fact: f64 = (1..=j).map(f64::from).product();
    PI.sqrt() / fact * 2f64.powi(3 * j as i32 + 2) * s.powf(j as f64 + 0.5) * (-2.0 * s).exp()
}
