//! `ζ′(−1)` and the Widom–Dyson constant.

use super::BERNOULLI_EVEN;

/// Euler's constant `γ_E`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Constants entering the asymptotic formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub ln_c0: f64,
    pub zeta_prime_minus1: f64,
    pub euler_gamma: f64,
}

pub fn constants() -> Constants {
    let zp = zeta_prime_minus_one();
    Constants {
        ln_c0: std::f64::consts::LN_2 / 12.0 + 3.0 * zp,
        zeta_prime_minus1: zp,
        euler_gamma: EULER_GAMMA,
    }
}

/// `ln c₀ = (1/12) ln 2 + 3ζ′(−1)`.
pub fn widom_dyson_ln_c0() -> f64 {
    constants().ln_c0
}

/// `ζ′(−1)` by differentiating the Euler–Maclaurin continuation of `ζ(s)`
/// at `s = −1` with forward-mode dual numbers.
///
/// ```text
/// ζ(s) = Σ_{k<N} k^{−s} + N^{1−s}/(s − 1) + N^{−s}/2
///        + Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
/// ```
pub fn zeta_prime_minus_one() -> f64 {
    const N: u32 = 12;
    let s = Dual::new(-1.0, 1.0);
    let nf = N as f64;
    let ln_n = nf.ln();

    let mut z = Dual::constant(0.0);
    for k in 1..N {
        z = z + (s * -(k as f64).ln()).exp();
    }
    let n_pow = |d: Dual| (d * ln_n).exp();
    z = z + n_pow(Dual::constant(1.0) - s) / (s - Dual::constant(1.0));
    z = z + n_pow(-s) * 0.5;

    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let jj = (j + 1) as f64;
        let power = n_pow(-s - Dual::constant(2.0 * jj - 1.0));
        z = z + rising * power * (b / fact);
        rising = rising * (s + Dual::constant(2.0 * jj - 1.0)) * (s + Dual::constant(2.0 * jj));
        fact *= (2.0 * jj + 1.0) * (2.0 * jj + 2.0);
    }
    z.eps
}

/// `re + eps·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy)]
struct Dual {
    re: f64,
    eps: f64,
}

impl Dual {
    fn new(re: f64, eps: f64) -> Self {
        Dual { re, eps }
    }

    fn constant(re: f64) -> Self {
        Dual { re, eps: 0.0 }
    }

    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, e * self.eps)
    }
}

impl std::ops::Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl std::ops::Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl std::ops::Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.eps)
    }
}

impl std::ops::Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl std::ops::Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, c: f64) -> Dual {
        Dual::new(self.re * c, self.eps * c)
    }
}

impl std::ops::Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual::new(
            self.re / o.re,
            (self.eps * o.re - self.re * o.eps) / (o.re * o.re),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::zeta_prime_minus_one_glaisher;

    // 15-digit mirror value from an arbitrary-precision library.
    const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_93;

    #[test]
    fn zeta_prime_at_minus_one() {
        let zp = zeta_prime_minus_one();
        assert!((zp - ZETA_PRIME_MINUS_ONE).abs() < 1e-14, "{zp}");
        assert!((zp - zeta_prime_minus_one_glaisher()).abs() < 1e-12);
    }

    #[test]
    fn widom_dyson() {
        let c = constants();
        assert_eq!(
            c.ln_c0,
            std::f64::consts::LN_2 / 12.0 + 3.0 * c.zeta_prime_minus1
        );
        assert!((c.ln_c0 + 0.4385).abs() < 1e-4);
        assert!((c.ln_c0.exp() - 0.645).abs() < 5e-4);
        assert!((c.ln_c0.exp() * (-c.ln_c0).exp() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dual_value_is_zeta_minus_one() {
        // the real part of the same continuation gives ζ(−1) = −1/12
        let s = Dual::constant(-1.0);
        let n = 12.0_f64;
        let mut z = Dual::constant(0.0);
        for k in 1..12 {
            z = z + (s * -(k as f64).ln()).exp();
        }
        z = z + ((Dual::constant(1.0) - s) * n.ln()).exp() / (s - Dual::constant(1.0));
        z = z + (-s * n.ln()).exp() * 0.5;
        z = z + s * (-s * n.ln() - Dual::constant(n.ln())).exp() * (BERNOULLI_EVEN[0] / 2.0);
        assert!((z.re + 1.0 / 12.0).abs() < 1e-13);
    }
}
