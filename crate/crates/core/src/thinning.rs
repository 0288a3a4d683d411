//! Gap probabilities of the thinned sine process.
//!
//! Deleting each particle independently with probability `1 − γ` turns the
//! gap probability of `(−s/π, s/π)` into `D(s, γ)`. Rescaling by `1/γ`
//! restores unit mean spacing and interpolates between the Poisson gap
//! `e^{−2s/π}` (`γ → 0`) and the random-matrix gap (`γ = 1`).

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SineGapError};
use crate::fredholm::eigen::tridiagonal_eigenvalues_in;
use crate::fredholm::{log_det, FredholmConfig, GapParams};
use crate::report::EvalReport;

/// Half-width of the eligible bulk window, as a fraction of the semicircle
/// radius `2√n`.
pub const BULK_WINDOW_FRACTION: f64 = 0.1;

/// `ln D(s/γ, γ)`: gap probability of `(−s/(πγ), s/(πγ))` for the thinned
/// process at unit mean spacing.
pub fn thinned_gap_ln_d(s: f64, gamma: f64, cfg: &FredholmConfig) -> Result<EvalReport> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(SineGapError::domain(
            "thinned_gap_ln_d",
            format!("gamma = {gamma} outside (0, 1]"),
        ));
    }
    if !(s > 0.0) {
        return Err(SineGapError::domain(
            "thinned_gap_ln_d",
            format!("s = {s} must be positive"),
        ));
    }
    log_det(&GapParams::from_gamma(s / gamma, gamma)?, cfg)
}

/// The thinned-Poisson gap probability as a series and in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoissonGap {
    pub series: f64,
    pub closed_form: f64,
}

/// `Σ_k (1/k!)(2s/(πγ))^k e^{−2s/(πγ)} (1 − γ)^k`, which sums to `e^{−2s/π}`.
pub fn poisson_thinned_gap(s: f64, gamma: f64) -> Result<PoissonGap> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(SineGapError::domain(
            "poisson_thinned_gap",
            format!("s = {s} must be positive"),
        ));
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(SineGapError::domain(
            "poisson_thinned_gap",
            format!("gamma = {gamma} outside (0, 1]"),
        ));
    }
    let mu = 2.0 * s / (PI * gamma);
    let x = mu * (1.0 - gamma);
    let closed_form = (-2.0 * s / PI).exp();
    if x == 0.0 {
        return Ok(PoissonGap {
            series: (-mu).exp(),
            closed_form,
        });
    }
    // terms are summed relative to the largest one, at k = ⌊x⌋
    let ln_x = x.ln();
    let ln_term = |k: u64, ln_fact: f64| k as f64 * ln_x - ln_fact;
    let mode = x.floor() as u64;
    let ln_fact_mode: f64 = (1..=mode).map(|j| (j as f64).ln()).sum();
    let peak = ln_term(mode, ln_fact_mode);
    let mut sum = 0.0;
    let mut ln_fact = 0.0;
    let mut k = 0u64;
    loop {
        if k > 0 {
            ln_fact += (k as f64).ln();
        }
        let rel = (ln_term(k, ln_fact) - peak).exp();
        sum += rel;
        if k as f64 > 2.0 * x + 1.0 && rel < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    Ok(PoissonGap {
        series: (peak - mu).exp() * sum,
        closed_form,
    })
}

/// Monte Carlo setup for the thinned GUE bulk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub matrix_size: usize,
    pub sample_count: usize,
    pub seed: u64,
    pub s: f64,
    pub gamma: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            matrix_size: 256,
            sample_count: 10_000,
            seed: 0x5eed,
            s: 1.0,
            gamma: 0.5,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.matrix_size < 64 {
            return Err(SineGapError::InvalidConfig(format!(
                "matrix_size {} < 64",
                self.matrix_size
            )));
        }
        if self.sample_count < 100 {
            return Err(SineGapError::InvalidConfig(format!(
                "sample_count {} < 100",
                self.sample_count
            )));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(SineGapError::InvalidConfig(format!(
                "gamma {} outside (0, 1]",
                self.gamma
            )));
        }
        if !(self.s > 0.0) || !self.s.is_finite() {
            return Err(SineGapError::InvalidConfig(format!(
                "s {} must be positive",
                self.s
            )));
        }
        let n = self.matrix_size as f64;
        if self.s / n.sqrt() > BULK_WINDOW_FRACTION * 2.0 * n.sqrt() {
            return Err(SineGapError::InvalidConfig(format!(
                "s {} too large for matrix_size {}: interval leaves the bulk window",
                self.s, self.matrix_size
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// Diagonal and off-diagonal of a tridiagonal matrix whose eigenvalues are
/// distributed as those of an `n × n` GUE matrix (unit-variance diagonal,
/// `E|Hᵢⱼ|² = 1` off the diagonal).
///
/// Diagonal entries are `N(0, 1)`; the `k`-th off-diagonal entry is
/// `χ_{2k}/√2`, i.e. the square root of a `Gamma(k, 1)` variate.
pub fn sample_gue_tridiagonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let diag: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let off: Vec<f64> = (1..n)
        .rev()
        .map(|k| {
            let g = Gamma::new(k as f64, 1.0).expect("shape is positive");
            g.sample(rng).sqrt()
        })
        .collect();
    (diag, off)
}

/// Semicircle density `√n/π` at the origin, i.e. the unfolding factor that
/// gives unit mean spacing at the spectral centre.
pub fn centre_density(n: usize) -> f64 {
    (n as f64).sqrt() / PI
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One sample: is `(−s/π, s/π)` empty after thinning, in unfolded units?
fn gap_is_empty(cfg: &McConfig, index: u64) -> bool {
    let mut rng = sample_rng(cfg.seed, index);
    let n = cfg.matrix_size;
    let (diag, off) = sample_gue_tridiagonal(n, &mut rng);
    let rho = centre_density(n);
    let window = BULK_WINDOW_FRACTION * 2.0 * (n as f64).sqrt();
    // interval in raw units is ±(s/π)/ρ, which lies inside the window
    let half = (cfg.s / PI / rho).min(window);
    tridiagonal_eigenvalues_in(&diag, &off, -half, half)
        .into_iter()
        .filter(|&x| x * rho > -cfg.s / PI)
        .all(|_| !rng.gen_bool(cfg.gamma))
}

/// Empirical gap probability of the thinned, unfolded GUE bulk.
///
/// Sample `i` uses stream `i` of a ChaCha generator keyed by `seed`, so the
/// estimate does not depend on how samples are spread over threads.
pub fn mc_gue_gap_estimate(cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let empty = (0..cfg.sample_count as u64)
        .into_par_iter()
        .filter(|&i| gap_is_empty(cfg, i))
        .count();
    let samples = cfg.sample_count;
    let p_hat = empty as f64 / samples as f64;
    Ok(McEstimate {
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / samples as f64).sqrt(),
        samples,
    })
}
