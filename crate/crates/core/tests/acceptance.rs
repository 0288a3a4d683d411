//! Acceptance criteria, one test each. Every test prints a single
//! `criterion NN PASS|FAIL ...` line with the measured values.

use std::time::{Duration, Instant};

use sinegap::fredholm::FredholmConfig;
use sinegap::thinning::McConfig;
use sinegap::verify::{self, Check, Suite, VerifyOptions};

fn cfg() -> FredholmConfig {
    FredholmConfig::default()
}

fn judge(id: u32, title: &str, checks: &[Check]) {
    let ok = checks.iter().all(|c| c.passed);
    let detail: Vec<String> = checks
        .iter()
        .map(|c| format!("{}={:.4e}/{:.1e}", c.name, c.measured, c.tolerance))
        .collect();
    println!(
        "criterion {id:02} {} {title}: {}",
        if ok { "PASS" } else { "FAIL" },
        detail.join(", ")
    );
    for c in checks.iter().filter(|c| !c.passed) {
        println!("    {c}");
    }
    assert!(ok, "criterion {id} failed");
}

fn all(checks: Vec<Check>, names: &[&str]) -> Vec<Check> {
    let picked: Vec<Check> = checks
        .into_iter()
        .filter(|c| names.contains(&c.name))
        .collect();
    assert_eq!(picked.len(), names.len(), "missing checks among {names:?}");
    picked
}

#[test]
fn criterion_01_gaussian_gap() {
    let checks = verify::gaussian_gap(&cfg()).unwrap();
    judge(1, "Gaussian gap residual", &checks);
}

#[test]
fn criterion_02_widom_dyson_constant() {
    judge(2, "Widom-Dyson constant", &verify::widom_dyson_constant());
}

#[test]
fn criterion_03_fixed_v() {
    let checks = verify::perturbative_gap(&cfg()).unwrap();
    judge(3, "fixed-v expansion at v=1", &checks);
}

#[test]
fn criterion_04_ladder() {
    let checks = vec![verify::ladder_ratio(&cfg()).unwrap()];
    judge(4, "Stokes ladder vs eigenvalue factors", &checks);
}

#[test]
fn criterion_05_slepian_deficits() {
    let checks = vec![verify::slepian_deficits(&cfg()).unwrap()];
    judge(5, "Slepian-type deficits", &checks);
}

#[test]
fn criterion_06_elliptic_oscillation() {
    let checks = verify::elliptic_residual(&cfg()).unwrap();
    judge(
        6,
        "elliptic formula boundedness and theta oscillation",
        &checks,
    );
}

#[test]
fn criterion_07_elliptic_to_fixed_v() {
    let checks = verify::elliptic_recovers_perturbative().unwrap();
    judge(7, "elliptic formula recovers fixed-v expansion", &checks);
}

#[test]
fn criterion_08_modulus_pipeline() {
    let mut checks = vec![verify::modulus_round_trip().unwrap()];
    checks.extend(verify::small_kappa().unwrap());
    judge(8, "a(kappa) pipeline", &checks);
}

#[test]
fn criterion_09_special_function_identities() {
    let checks = all(
        verify::specialfn_checks(),
        &[
            "legendre_relation",
            "theta_periodicity",
            "theta_quasi_periodicity",
            "theta_modular_overlap",
            "elliptic_vs_quadrature",
        ],
    );
    judge(9, "special-function identities", &checks);
}

#[test]
fn criterion_10_thinned_poisson() {
    let checks = vec![
        verify::poisson_identity(2024, 100),
        verify::contracted_poisson_end(&cfg()).unwrap(),
    ];
    judge(10, "thinned Poisson identity and contracted scale", &checks);
}

#[test]
fn criterion_11_monte_carlo() {
    let start = Instant::now();
    let checks = verify::monte_carlo(&McConfig::default(), &cfg()).unwrap();
    let elapsed = start.elapsed();
    println!("    monte carlo wall time {elapsed:?}");
    assert!(elapsed < Duration::from_secs(120));
    judge(11, "Monte Carlo gap probability", &checks);
}

#[test]
fn criterion_12_regime_classifier() {
    let start = Instant::now();
    let opts = VerifyOptions {
        quick: true,
        ..VerifyOptions::default()
    };
    let report = verify::run(&Suite::ALL, &opts);
    let elapsed = start.elapsed();
    println!(
        "    verify all --quick: {} checks in {elapsed:?}",
        report.len()
    );
    let crossing = verify::stokes_crossing(0x5eed, 100);
    assert!(elapsed < Duration::from_secs(300));
    judge(
        12,
        "Stokes crossings and quick verification budget",
        &[crossing],
    );
}
