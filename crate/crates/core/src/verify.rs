//! Named numerical checks, grouped by module, reporting measured against
//! tolerated values.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotics::{
    eq2_ln_d, eq3_ln_d, eq5_ln_d, eq6_with_data, kappa_of_a, ladder_cap, q_from_u,
    small_kappa_expansion, solve_modulus, stokes_curve_v, stokes_q, BMode,
};
use crate::error::Result;
use crate::fredholm::{
    eigenvalue_deficits, log_det, log_det_at_order, log_det_lu, FredholmConfig, GapParams,
};
use crate::oracle::{
    elliptic_e_quadrature, elliptic_k_quadrature, slepian_deficit, zeta_prime_minus_one_glaisher,
};
use crate::specialfn::{
    elliptic_pair, ln_barnes_g_pair, theta3, theta3_complex, theta3_direct, theta3_modular,
    widom_dyson_ln_c0, ThetaArgs,
};
use crate::thinning::{mc_gue_gap_estimate, poisson_thinned_gap, thinned_gap_ln_d, McConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specialfn,
    Fredholm,
    Asymptotics,
    Thinning,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Specialfn,
        Suite::Fredholm,
        Suite::Asymptotics,
        Suite::Thinning,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specialfn => "specialfn",
            Suite::Fredholm => "fredholm",
            Suite::Asymptotics => "asymptotics",
            Suite::Thinning => "thinning",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// How `measured` is compared with `tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    Below,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    pub note: String,
}

impl Check {
    fn new(
        suite: Suite,
        name: &'static str,
        measured: f64,
        comparison: Comparison,
        tolerance: f64,
        note: impl Into<String>,
    ) -> Self {
        let passed = match comparison {
            Comparison::AtMost => measured <= tolerance,
            Comparison::Below => measured < tolerance,
        };
        Check {
            suite,
            name,
            measured,
            tolerance,
            comparison,
            passed,
            note: note.into(),
        }
    }

    fn at_most(
        suite: Suite,
        name: &'static str,
        measured: f64,
        tol: f64,
        note: impl Into<String>,
    ) -> Self {
        Check::new(suite, name, measured, Comparison::AtMost, tol, note)
    }

    fn below(
        suite: Suite,
        name: &'static str,
        measured: f64,
        tol: f64,
        note: impl Into<String>,
    ) -> Self {
        Check::new(suite, name, measured, Comparison::Below, tol, note)
    }

    fn errored(suite: Suite, name: &'static str, err: impl fmt::Display) -> Self {
        Check {
            suite,
            name,
            measured: f64::NAN,
            tolerance: f64::NAN,
            comparison: Comparison::AtMost,
            passed: false,
            note: format!("error: {err}"),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.comparison {
            Comparison::AtMost => "<=",
            Comparison::Below => "<",
        };
        write!(
            f,
            "[{}] {}/{}: measured {:.3e} {op} {:.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite.name(),
            self.name,
            self.measured,
            self.tolerance,
        )?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Skip the slower Monte Carlo variations.
    pub quick: bool,
    pub seed: u64,
    pub fredholm: FredholmConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            quick: false,
            seed: McConfig::default().seed,
            fredholm: FredholmConfig::default(),
        }
    }
}

pub fn run(suites: &[Suite], opts: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for &suite in suites {
        out.extend(match suite {
            Suite::Specialfn => specialfn_checks(),
            Suite::Fredholm => fredholm_checks(opts),
            Suite::Asymptotics => asymptotics_checks(opts),
            Suite::Thinning => thinning_checks(opts),
        });
    }
    out
}

fn guard(suite: Suite, name: &'static str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::errored(suite, name, e))
}

fn guard_many(
    suite: Suite,
    name: &'static str,
    f: impl FnOnce() -> Result<Vec<Check>>,
) -> Vec<Check> {
    f().unwrap_or_else(|e| vec![Check::errored(suite, name, e)])
}

fn numeric(s: f64, v: f64, cfg: &FredholmConfig) -> Result<f64> {
    Ok(log_det(&GapParams::from_v(s, v)?, cfg)?.ln_d)
}

fn numeric_saturated(s: f64, cfg: &FredholmConfig) -> Result<f64> {
    Ok(log_det(&GapParams::saturated(s)?, cfg)?.ln_d)
}

fn std_dev(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

// ---------------------------------------------------------------- specialfn

pub fn specialfn_checks() -> Vec<Check> {
    let mut out = vec![
        guard(Suite::Specialfn, "legendre_relation", legendre_relation),
        guard(
            Suite::Specialfn,
            "elliptic_vs_quadrature",
            elliptic_vs_quadrature,
        ),
    ];
    out.extend(guard_many(Suite::Specialfn, "theta", theta_identities));
    out.extend(widom_dyson_constant());
    out.push(guard(
        Suite::Specialfn,
        "barnes_reference",
        barnes_reference,
    ));
    out
}

pub fn legendre_relation() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for i in 1..40 {
        let k = i as f64 / 40.0;
        let p = elliptic_pair(k)?;
        let q = elliptic_pair((1.0 - k * k).sqrt())?;
        let lhs = p.e_val * q.k_val + q.e_val * p.k_val - p.k_val * q.k_val;
        worst = worst.max((lhs - PI / 2.0).abs());
    }
    Ok(Check::at_most(
        Suite::Specialfn,
        "legendre_relation",
        worst,
        1e-12,
        "max |EK' + E'K - KK' - pi/2| over 39 moduli",
    ))
}

pub fn elliptic_vs_quadrature() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let k = 0.05 * i as f64;
        let p = elliptic_pair(k)?;
        worst = worst
            .max((p.k_val - elliptic_k_quadrature(k, 1e-14)).abs())
            .max((p.e_val - elliptic_e_quadrature(k, 1e-14)).abs());
    }
    Ok(Check::at_most(
        Suite::Specialfn,
        "elliptic_vs_quadrature",
        worst,
        1e-11,
        "AGM against adaptive Gauss-Kronrod, k in [0, 0.95]",
    ))
}

pub fn theta_identities() -> Result<Vec<Check>> {
    let taus = [0.3, 0.7, 1.0, 1.6, 3.0];
    let zs = [0.0, 0.1, 0.37, 0.5, 0.81];
    let (mut per, mut quasi, mut modular): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for &t in &taus {
        for &z in &zs {
            let a = theta3_complex(Complex64::new(z, 0.0), t)?;
            let b = theta3_complex(Complex64::new(z + 1.0, 0.0), t)?;
            per = per.max((a - b).norm() / a.norm());
            // θ(z + τ) = e^{−iπτ − 2πiz} θ(z) with τ = it
            let shifted = theta3_complex(Complex64::new(z, t), t)?;
            let factor = (Complex64::new(PI * t, -2.0 * PI * z)).exp();
            quasi = quasi.max((shifted - factor * a).norm() / (factor * a).norm());
        }
    }
    for i in 0..=20 {
        let t = 0.8 + 0.02 * i as f64;
        for &z in &zs {
            let args = ThetaArgs::new(z, t);
            modular = modular.max((theta3_direct(args)? - theta3_modular(args)?).abs());
        }
    }
    Ok(vec![
        Check::at_most(
            Suite::Specialfn,
            "theta_periodicity",
            per,
            1e-12,
            "theta(z+1) = theta(z)",
        ),
        Check::at_most(
            Suite::Specialfn,
            "theta_quasi_periodicity",
            quasi,
            1e-12,
            "theta(z+tau) = exp(-i pi tau - 2 pi i z) theta(z), relative",
        ),
        Check::at_most(
            Suite::Specialfn,
            "theta_modular_overlap",
            modular,
            1e-13,
            "direct vs modular series for tau_im in [0.8, 1.2]",
        ),
    ])
}

pub fn widom_dyson_constant() -> Vec<Check> {
    let ln_c0 = widom_dyson_ln_c0();
    let oracle = 2f64.ln() / 12.0 + 3.0 * zeta_prime_minus_one_glaisher();
    vec![
        Check::at_most(
            Suite::Specialfn,
            "widom_dyson_ln_c0",
            (ln_c0 - oracle).abs(),
            1e-10,
            "against the Glaisher hyperfactorial route",
        ),
        Check::at_most(
            Suite::Specialfn,
            "widom_dyson_c0_digits",
            (ln_c0.exp() - 0.645).abs(),
            5e-4,
            format!("c0 = {:.6}", ln_c0.exp()),
        ),
    ]
}

pub fn barnes_reference() -> Result<Check> {
    let refs = [
        (1.0, 0.153_970_141_049_603_47),
        (PI, 1.179_890_040_036_998_8),
        (10.0, 2.943_676_757_290_054),
        (50.0, -321.801_122_121_413),
    ];
    let mut worst: f64 = 0.0;
    for (v, r) in refs {
        worst = worst.max((ln_barnes_g_pair(v)? - r).abs() / r.abs().max(1.0));
    }
    Ok(Check::at_most(
        Suite::Specialfn,
        "barnes_reference",
        worst,
        1e-10,
        "ln G(1+iv/pi)G(1-iv/pi) at v = 1, pi, 10, 50",
    ))
}

// ---------------------------------------------------------------- fredholm

pub fn fredholm_checks(opts: &VerifyOptions) -> Vec<Check> {
    let cfg = &opts.fredholm;
    let mut out = vec![guard(Suite::Fredholm, "trace_identity", trace_identity)];
    out.push(guard(Suite::Fredholm, "lu_cross_check", || {
        lu_cross_check(cfg)
    }));
    out.extend(guard_many(Suite::Fredholm, "gaussian_gap", || {
        gaussian_gap(cfg)
    }));
    out.extend(guard_many(Suite::Fredholm, "perturbative_gap", || {
        perturbative_gap(cfg)
    }));
    out.push(guard(Suite::Fredholm, "ladder_ratio", || ladder_ratio(cfg)));
    out.push(guard(Suite::Fredholm, "slepian_deficits", || {
        slepian_deficits(cfg)
    }));
    out
}

pub fn trace_identity() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for s in [1.0, 5.0, 10.0] {
        let (_, spec) = log_det_at_order(&GapParams::saturated(s)?, 128)?;
        let tr: f64 = spec.eigenvalues.iter().sum();
        worst = worst.max((tr - 2.0 * s / PI).abs());
    }
    Ok(Check::at_most(
        Suite::Fredholm,
        "trace_identity",
        worst,
        1e-10,
        "sum of eigenvalues = 2s/pi",
    ))
}

pub fn lu_cross_check(cfg: &FredholmConfig) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for s in [2.0, 6.0, 10.0] {
        for g in [0.3, 0.9] {
            let p = GapParams::from_gamma(s, g)?;
            worst = worst.max((log_det(&p, cfg)?.ln_d - log_det_lu(&p, cfg)?.ln_d).abs());
        }
    }
    Ok(Check::at_most(
        Suite::Fredholm,
        "lu_cross_check",
        worst,
        1e-9,
        "eigenvalue route vs LU route",
    ))
}

/// `R(s) = ln D(s, 1) + s²/2 + ¼ ln s − ln c₀` at `s = 8, 10, 12`.
pub fn gaussian_gap(cfg: &FredholmConfig) -> Result<Vec<Check>> {
    let mut res = Vec::new();
    for s in [8.0, 10.0, 12.0] {
        res.push(numeric_saturated(s, cfg)? - eq2_ln_d(s)?.ln_d);
    }
    let scaled = [8.0, 10.0, 12.0]
        .iter()
        .zip(&res)
        .map(|(s, r)| r.abs() * s)
        .fold(0.0, f64::max);
    Ok(vec![
        Check::at_most(
            Suite::Fredholm,
            "gaussian_gap_residual",
            scaled,
            2.0,
            format!(
                "max s|R(s)|, R = {:.3e}, {:.3e}, {:.3e}",
                res[0], res[1], res[2]
            ),
        ),
        Check::below(
            Suite::Fredholm,
            "gaussian_gap_residual_decay",
            res[2].abs() / res[0].abs(),
            1.0,
            "|R(12)| / |R(8)|",
        ),
    ])
}

/// Numeric `ln D` against the fixed-`v` formula at `v = 1`.
pub fn perturbative_gap(cfg: &FredholmConfig) -> Result<Vec<Check>> {
    let mut res = Vec::new();
    for s in [8.0, 10.0, 12.0] {
        res.push((numeric(s, 1.0, cfg)? - eq3_ln_d(s, 1.0)?.ln_d).abs());
    }
    let worst_ratio = (res[1] / res[0]).max(res[2] / res[1]);
    Ok(vec![
        Check::at_most(
            Suite::Fredholm,
            "perturbative_residual",
            res.iter().copied().fold(0.0, f64::max),
            0.3,
            format!(
                "|residual| = {:.3e}, {:.3e}, {:.3e}",
                res[0], res[1], res[2]
            ),
        ),
        Check::below(
            Suite::Fredholm,
            "perturbative_residual_decay",
            worst_ratio,
            1.0,
            "largest ratio of successive residuals",
        ),
    ])
}

/// `exp(eq5 − eq2)` against `Π_{j<q} (1 + e^{−2v} λⱼ/(1 − λⱼ))` at `s = 10`.
pub fn ladder_ratio(cfg: &FredholmConfig) -> Result<Check> {
    let s: f64 = 10.0;
    let deficits = eigenvalue_deficits(s, 3, cfg)?;
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    for u in [1.0, 2.0] {
        let v = s - 0.5 * u * s.ln();
        let predicted = (eq5_ln_d(s, v)?.ln_d - eq2_ln_d(s)?.ln_d).exp();
        let q = stokes_q(s, v).q.unwrap_or(0) as usize;
        let product: f64 = deficits[..q]
            .iter()
            .map(|&(_, d)| 1.0 + (-2.0 * v).exp() * (1.0 - d) / d)
            .product();
        let ratio = predicted / product;
        ratios.push(ratio);
        worst = worst.max((ratio - 1.0).abs());
    }
    Ok(Check::at_most(
        Suite::Fredholm,
        "ladder_ratio",
        worst,
        0.15,
        format!(
            "ratios {:.4} (u=1), {:.4} (u=2) at s=10",
            ratios[0], ratios[1]
        ),
    ))
}

/// Numeric deficits `1 − λⱼ` against `(√π/j!) 2^{3j+2} s^{j+½} e^{−2s}`.
pub fn slepian_deficits(cfg: &FredholmConfig) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let mut at = (0.0, 0);
    for s in [8.0, 10.0] {
        for (j, d) in eigenvalue_deficits(s, 3, cfg)? {
            let dev = (d / slepian_deficit(s, j as u32) - 1.0).abs();
            if dev > worst {
                worst = dev;
                at = (s, j);
            }
        }
    }
    Ok(Check::at_most(
        Suite::Fredholm,
        "slepian_deficits",
        worst,
        0.35,
        format!("largest relative deviation at s={}, j={}", at.0, at.1),
    ))
}

// ---------------------------------------------------------------- asymptotics

pub fn asymptotics_checks(opts: &VerifyOptions) -> Vec<Check> {
    let cfg = &opts.fredholm;
    let mut out = Vec::new();
    out.extend(guard_many(Suite::Asymptotics, "elliptic_residual", || {
        elliptic_residual(cfg)
    }));
    out.extend(guard_many(
        Suite::Asymptotics,
        "elliptic_recovers_perturbative",
        elliptic_recovers_perturbative,
    ));
    out.push(guard(
        Suite::Asymptotics,
        "modulus_round_trip",
        modulus_round_trip,
    ));
    out.extend(guard_many(Suite::Asymptotics, "small_kappa", small_kappa));
    out.push(stokes_crossing(opts.seed, 100));
    out
}

/// Elliptic formula against the numeric determinant at `κ = 0.5`.
pub fn elliptic_residual(cfg: &FredholmConfig) -> Result<Vec<Check>> {
    let kappa = 0.5;
    let mut worst: f64 = 0.0;
    for s in [8.0, 10.0, 12.0] {
        let e = eq6_with_data(s, kappa * s, BMode::Omit)?;
        worst = worst.max((numeric(s, kappa * s, cfg)? - e.report.ln_d).abs());
    }
    let (mut with, mut without) = (Vec::new(), Vec::new());
    for i in 0..40 {
        let s = 6.0 + 8.0 * i as f64 / 39.0;
        let e = eq6_with_data(s, kappa * s, BMode::Omit)?;
        let r = numeric(s, kappa * s, cfg)? - e.report.ln_d;
        with.push(r);
        without.push(r + e.theta.ln());
    }
    let (sw, so) = (std_dev(&with), std_dev(&without));
    Ok(vec![
        Check::at_most(
            Suite::Asymptotics,
            "elliptic_residual_bounded",
            worst,
            2.0,
            "max |numeric - eq6(omit B)| at kappa=0.5, s = 8, 10, 12",
        ),
        Check::below(
            Suite::Asymptotics,
            "elliptic_theta_oscillation",
            sw / so,
            1.0,
            format!("std with theta {sw:.3e} / without {so:.3e}, 40 points s in [6, 14]"),
        ),
    ])
}

pub fn elliptic_recovers_perturbative() -> Result<Vec<Check>> {
    let diff = |s: f64| -> Result<f64> {
        Ok((eq6_with_data(s, 1.0, BMode::Unit)?.report.ln_d - eq3_ln_d(s, 1.0)?.ln_d).abs())
    };
    let (d100, d1000) = (diff(100.0)?, diff(1000.0)?);
    Ok(vec![
        Check::at_most(
            Suite::Asymptotics,
            "elliptic_to_perturbative_s100",
            d100,
            0.5,
            "|eq6(unit B) - eq3| at v=1, s=100",
        ),
        Check::below(
            Suite::Asymptotics,
            "elliptic_to_perturbative_improves",
            d1000,
            d100,
            "same difference at s=1000 against s=100",
        ),
    ])
}

pub fn modulus_round_trip() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        let a = i as f64 / 21.0;
        let back = solve_modulus(kappa_of_a(a)?)?.a;
        worst = worst.max((back - a).abs());
    }
    Ok(Check::at_most(
        Suite::Asymptotics,
        "modulus_round_trip",
        worst,
        1e-12,
        "a -> kappa -> a on 20 moduli",
    ))
}

pub fn small_kappa() -> Result<Vec<Check>> {
    let kappa = 0.01;
    let approx = small_kappa_expansion(kappa)?;
    let exact = solve_modulus(kappa)?;
    let s = 100.0;
    let th = theta3(ThetaArgs::new(s * approx.v_coef, approx.tau_im))?;
    Ok(vec![
        Check::at_most(
            Suite::Asymptotics,
            "small_kappa_a",
            (approx.a - exact.a).abs(),
            1e-5,
            "kappa = 0.01",
        ),
        Check::at_most(
            Suite::Asymptotics,
            "small_kappa_v",
            (approx.v_coef - exact.v_coef).abs(),
            1e-3,
            "kappa = 0.01",
        ),
        Check::at_most(
            Suite::Asymptotics,
            "small_kappa_theta",
            (th - 1.0).abs(),
            1e-3,
            "theta(sV | i tau_im) at kappa = 0.01, s = 100",
        ),
    ])
}

/// `q` steps from `k` to `k + 1` exactly at `v = s − ¼(2k + 1) ln s`.
pub fn stokes_crossing(seed: u64, probes: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut done = 0usize;
    while done < probes {
        let s = 10f64.powf(rng.gen_range(0.5..6.0));
        let k = rng.gen_range(0..ladder_cap(s));
        let vk = stokes_curve_v(s, k);
        let h = 1e-9 * s;
        let above = stokes_q(s, vk + h).q;
        let below = stokes_q(s, vk - h).q;
        let expected_above = if k == 0 { None } else { Some(k) };
        let tie = q_from_u(k as f64 + 0.5);
        if above != expected_above || below != Some(k + 1) || tie != Some(k + 1) {
            failures += 1;
        }
        done += 1;
    }
    Check::at_most(
        Suite::Asymptotics,
        "stokes_crossing",
        failures as f64,
        0.0,
        format!("failed probes out of {probes}"),
    )
}

// ---------------------------------------------------------------- thinning

pub fn thinning_checks(opts: &VerifyOptions) -> Vec<Check> {
    let cfg = &opts.fredholm;
    let mut out = vec![
        poisson_identity(opts.seed, 100),
        guard(Suite::Thinning, "contracted_poisson_end", || {
            contracted_poisson_end(cfg)
        }),
    ];
    let mc = McConfig {
        seed: opts.seed,
        ..McConfig::default()
    };
    out.extend(guard_many(Suite::Thinning, "monte_carlo", || {
        monte_carlo(&mc, cfg)
    }));
    if !opts.quick {
        for (s, gamma) in [(0.5, 0.5), (1.0, 0.8)] {
            let c = McConfig { s, gamma, ..mc };
            out.push(guard(Suite::Thinning, "monte_carlo_extra", || {
                let (z, _) = mc_z_score(&c, cfg)?;
                Ok(Check::at_most(
                    Suite::Thinning,
                    "monte_carlo_extra",
                    z.abs(),
                    3.0,
                    format!("|z| at s={s}, gamma={gamma}"),
                ))
            }));
        }
        out.push(guard(Suite::Thinning, "monte_carlo_finite_size", || {
            let a = mc_gue_gap_estimate(&mc)?;
            let b = mc_gue_gap_estimate(&McConfig {
                matrix_size: 2 * mc.matrix_size,
                ..mc
            })?;
            Ok(Check::below(
                Suite::Thinning,
                "monte_carlo_finite_size",
                (a.p_hat - b.p_hat).abs() / a.stderr,
                2.0,
                "|p(256) - p(512)| / stderr",
            ))
        }));
    }
    out
}

pub fn poisson_identity(seed: u64, points: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let s = rng.gen_range(0.01..10.0);
        let gamma = rng.gen_range(0.01..=1.0);
        match poisson_thinned_gap(s, gamma) {
            Ok(p) => worst = worst.max((p.series - p.closed_form).abs()),
            Err(e) => return Check::errored(Suite::Thinning, "poisson_identity", e),
        }
    }
    Check::at_most(
        Suite::Thinning,
        "poisson_identity",
        worst,
        1e-12,
        format!("series vs exp(-2s/pi) on {points} random points"),
    )
}

pub fn contracted_poisson_end(cfg: &FredholmConfig) -> Result<Check> {
    let r = thinned_gap_ln_d(1.0, 0.25, cfg)?.ln_d;
    Ok(Check::at_most(
        Suite::Thinning,
        "contracted_poisson_end",
        (r + 2.0 / PI).abs(),
        0.05,
        format!("ln D(4, 0.25) = {r:.10}, -2/pi = {:.10}", -2.0 / PI),
    ))
}

/// `(p̂ − D)/stderr` and `D`.
pub fn mc_z_score(mc: &McConfig, cfg: &FredholmConfig) -> Result<(f64, f64)> {
    let est = mc_gue_gap_estimate(mc)?;
    let det = log_det(&GapParams::from_gamma(mc.s, mc.gamma)?, cfg)?
        .ln_d
        .exp();
    Ok(((est.p_hat - det) / est.stderr, det))
}

pub fn monte_carlo(mc: &McConfig, cfg: &FredholmConfig) -> Result<Vec<Check>> {
    let first = mc_gue_gap_estimate(mc)?;
    let det = log_det(&GapParams::from_gamma(mc.s, mc.gamma)?, cfg)?
        .ln_d
        .exp();
    let z = (first.p_hat - det) / first.stderr;
    let same = mc_gue_gap_estimate(mc)?.p_hat.to_bits() == first.p_hat.to_bits();
    Ok(vec![
        Check::at_most(
            Suite::Thinning,
            "monte_carlo_gap",
            z.abs(),
            3.0,
            format!(
                "|z|, size {}, {} samples, s={}, gamma={}, det={det:.6}",
                mc.matrix_size, mc.sample_count, mc.s, mc.gamma
            ),
        ),
        Check::at_most(
            Suite::Thinning,
            "monte_carlo_reproducible",
            if same { 0.0 } else { 1.0 },
            0.0,
            "bit-identical p_hat on rerun",
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("all".parse::<Suite>().is_err());
    }

    #[test]
    fn specialfn_suite_passes() {
        for c in specialfn_checks() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn display_shows_values() {
        let c = Check::at_most(Suite::Thinning, "x", 0.5, 1.0, "");
        assert_eq!(
            c.to_string(),
            "[PASS] thinning/x: measured 5.000e-1 <= 1.000e0"
        );
        assert!(!Check::below(Suite::Thinning, "x", 1.0, 1.0, "").passed);
    }
}
