use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::eigen::{lu_log_det, symmetric_eigenvalues, SymMatrix};
use super::params::GapParams;
use super::quadrature::{gauss_legendre, Quadrature};
use crate::error::{Result, SineGapError};
use crate::report::{EvalReport, Method};

/// Below this value of `|s(x − y)|` the kernel uses its Taylor series.
pub const SINC_SERIES_THRESHOLD: f64 = 1e-4;

const MIN_START_ORDER: usize = 64;

/// Floating-point backend for the discretized operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// IEEE binary64.
    #[default]
    Baseline,
    /// Software floating point with at least 30 significant digits.
    Extended,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Baseline => "baseline",
            Precision::Extended => "extended",
        }
    }

    /// `(s_max, complement_floor)`: beyond `s_max` the backend cannot resolve
    /// eigenvalue deficits once `1 − γ < complement_floor`.
    pub fn envelope(self) -> (f64, f64) {
        match self {
            // deficits ~ e^{−2s} reach 1e−11 near s = 14; the eigensolver
            // resolves about 1e−13 absolute
            Precision::Baseline => (14.0, 1e-6),
            Precision::Extended => (30.0, 1e-6),
        }
    }

    fn ensure_available(self) -> Result<()> {
        match self {
            Precision::Baseline => Ok(()),
            // TODO: double-double Nyström + Jacobi eigensolver for the extended backend
            Precision::Extended => Err(SineGapError::BackendUnavailable("extended")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FredholmConfig {
    /// Stop doubling once successive `ln D` differ by less than this.
    pub target_tol: f64,
    pub precision: Precision,
    /// Evaluate outside the precision envelope instead of failing.
    pub unsafe_envelope: bool,
    pub max_order: usize,
}

impl Default for FredholmConfig {
    fn default() -> Self {
        FredholmConfig {
            target_tol: 1e-10,
            precision: Precision::Baseline,
            unsafe_envelope: false,
            max_order: 4096,
        }
    }
}

/// Eigenvalues of the discretized operator, descending, with their deficits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub deficits: Vec<f64>,
    pub order: usize,
}

/// `K_s(x, y) = sin(s(x − y)) / (π(x − y))`, continuous through `x = y`.
pub fn sine_kernel(s: f64, x: f64, y: f64) -> f64 {
    let d = x - y;
    let t = s * d;
    if t.abs() < SINC_SERIES_THRESHOLD {
        s / PI * (1.0 - t * t / 6.0)
    } else {
        t.sin() / (PI * d)
    }
}

/// `Aᵢⱼ = √wᵢ K_s(xᵢ, xⱼ) √wⱼ`.
pub fn nystrom_matrix(params: &GapParams, quad: &Quadrature) -> SymMatrix {
    let sqrt_w: Vec<f64> = quad.weights.iter().map(|w| w.sqrt()).collect();
    SymMatrix::from_fn(quad.order, |i, j| {
        sqrt_w[i] * sine_kernel(params.s, quad.nodes[i], quad.nodes[j]) * sqrt_w[j]
    })
}

pub fn spectrum(matrix: &SymMatrix) -> Result<Spectrum> {
    let mut eigenvalues = symmetric_eigenvalues(matrix)?;
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let deficits = eigenvalues.iter().map(|l| 1.0 - l).collect();
    Ok(Spectrum {
        eigenvalues,
        deficits,
        order: matrix.dim(),
    })
}

/// `ln D` at a fixed discretization order, with the spectrum used.
pub fn log_det_at_order(params: &GapParams, order: usize) -> Result<(f64, Spectrum)> {
    let quad = gauss_legendre(order);
    let spec = spectrum(&nystrom_matrix(params, &quad))?;
    let ln_d = ln_det_from_spectrum(params, &spec)?;
    Ok((ln_d, spec))
}

fn ln_det_from_spectrum(params: &GapParams, spec: &Spectrum) -> Result<f64> {
    let gamma = params.gamma;
    let comp = params.gamma_complement();
    let mut sum = 0.0;
    for (&lambda, &deficit) in spec.eigenvalues.iter().zip(&spec.deficits) {
        let term = if lambda <= 0.5 {
            (-gamma * lambda).ln_1p()
        } else {
            // 1 − γλ = (1 − γ) + γ(1 − λ)
            let x = comp + gamma * deficit;
            if x <= 0.0 {
                return Err(SineGapError::PrecisionCeiling {
                    s: params.s,
                    gamma_complement: comp,
                    backend: "baseline",
                    s_max: Precision::Baseline.envelope().0,
                    complement_floor: Precision::Baseline.envelope().1,
                });
            }
            x.ln()
        };
        sum += term;
    }
    Ok(sum)
}

fn start_order(s: f64) -> usize {
    MIN_START_ORDER.max((4.0 * s).ceil() as usize)
}

fn check_envelope(params: &GapParams, cfg: &FredholmConfig) -> Result<()> {
    cfg.precision.ensure_available()?;
    let (s_max, floor) = cfg.precision.envelope();
    if !cfg.unsafe_envelope && params.s > s_max && params.gamma_complement() < floor {
        return Err(SineGapError::PrecisionCeiling {
            s: params.s,
            gamma_complement: params.gamma_complement(),
            backend: cfg.precision.name(),
            s_max,
            complement_floor: floor,
        });
    }
    if !(cfg.target_tol > 0.0) {
        return Err(SineGapError::InvalidConfig(format!(
            "target tolerance {} must be positive",
            cfg.target_tol
        )));
    }
    Ok(())
}

/// Numerical `ln D(s, γ)` with discretization doubling.
///
/// Starts at order `max(64, ⌈4s⌉)` and doubles until two successive values
/// differ by less than `cfg.target_tol`; `err_est` is that last difference.
pub fn log_det(params: &GapParams, cfg: &FredholmConfig) -> Result<EvalReport> {
    check_envelope(params, cfg)?;
    if params.gamma == 0.0 {
        let mut r = EvalReport::new(Method::NumericEigen, 0.0, 0.0);
        r.order = Some(0);
        return Ok(r);
    }
    let order = start_order(params.s);
    if order > cfg.max_order {
        return Err(order_cap_error(order, cfg.max_order));
    }
    let (prev, _) = log_det_at_order(params, order)?;
    refine(prev, order, cfg, Method::NumericEigen, |n| {
        log_det_at_order(params, n).map(|(v, _)| v)
    })
}

/// Doubles the order from `order` until successive values agree to
/// `cfg.target_tol`, or until the differences stop shrinking because the
/// roundoff floor has been reached.
fn refine(
    mut prev: f64,
    mut order: usize,
    cfg: &FredholmConfig,
    method: Method,
    at: impl Fn(usize) -> Result<f64>,
) -> Result<EvalReport> {
    let mut prev_diff = f64::INFINITY;
    loop {
        let next_order = 2 * order;
        if next_order > cfg.max_order {
            return Err(order_cap_error(next_order, cfg.max_order));
        }
        let cur = at(next_order)?;
        let diff = (cur - prev).abs();
        order = next_order;
        if diff < cfg.target_tol {
            let mut r = EvalReport::new(method, cur, diff);
            r.order = Some(order);
            return Ok(r);
        }
        if diff > 0.5 * prev_diff {
            let err = diff.max(prev_diff);
            let mut r = EvalReport::new(method, cur, err);
            r.order = Some(order);
            r.warnings.push(format!(
                "roundoff floor {err:.1e} reached before target tolerance {:.1e}",
                cfg.target_tol
            ));
            return Ok(r);
        }
        prev_diff = diff;
        prev = cur;
    }
}

fn order_cap_error(order: usize, cap: usize) -> SineGapError {
    SineGapError::Convergence {
        func: "log_det",
        msg: format!("discretization order {order} exceeds cap {cap}"),
    }
}

/// `ln D` from an LU factorization of `I − γA`; a cross-check for `γ`
/// bounded away from one.
pub fn log_det_lu(params: &GapParams, cfg: &FredholmConfig) -> Result<EvalReport> {
    check_envelope(params, cfg)?;
    let at = |order: usize| -> f64 {
        let quad = gauss_legendre(order);
        let a = nystrom_matrix(params, &quad);
        let n = a.dim();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = if i == j { 1.0 } else { 0.0 } - params.gamma * a.get(i, j);
            }
        }
        lu_log_det(n, m).0
    };
    let order = start_order(params.s);
    refine(at(order), order, cfg, Method::NumericLu, |n| Ok(at(n)))
}

/// The first `count` deficits `1 − λⱼ`, at a discretization where each has
/// settled to a relative change below `1e−6`.
pub fn eigenvalue_deficits(
    s: f64,
    count: usize,
    cfg: &FredholmConfig,
) -> Result<Vec<(usize, f64)>> {
    let params = GapParams::saturated(s)?;
    check_envelope(&params, cfg)?;
    let mut order = start_order(s).max(count + 2);
    let mut prev = spectrum(&nystrom_matrix(&params, &gauss_legendre(order)))?;
    loop {
        let next_order = 2 * order;
        if next_order > cfg.max_order {
            return Err(order_cap_error(next_order, cfg.max_order));
        }
        let cur = spectrum(&nystrom_matrix(&params, &gauss_legendre(next_order)))?;
        let settled = (0..count).all(|j| {
            let (a, b) = (prev.deficits[j], cur.deficits[j]);
            (a - b).abs() <= 1e-6 * b.abs() || (a - b).abs() < 1e-15
        });
        if settled {
            return Ok(cur
                .deficits
                .iter()
                .copied()
                .take(count)
                .enumerate()
                .collect());
        }
        order = next_order;
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{slepian_deficit, small_s_ln_d};
    use crate::specialfn::widom_dyson_ln_c0;

    fn cfg() -> FredholmConfig {
        FredholmConfig::default()
    }

    #[test]
    fn kernel_values() {
        assert_eq!(sine_kernel(3.0, 0.2, 0.2), 3.0 / PI);
        assert!(sine_kernel(PI, 1.0, 0.0).abs() < 1e-16);
        let v = sine_kernel(1.0, 0.5, 0.0);
        assert!((v - 0.5f64.sin() / (0.5 * PI)).abs() < 1e-16);
        // continuity across the series threshold
        let s = 2.0;
        let d = SINC_SERIES_THRESHOLD / s;
        let below = sine_kernel(s, d * (1.0 - 1e-12), 0.0);
        let above = sine_kernel(s, d * (1.0 + 1e-12), 0.0);
        assert!((below - above).abs() < 1e-15);
    }

    #[test]
    fn nystrom_is_symmetric_with_known_trace() {
        let p = GapParams::saturated(5.0).unwrap();
        let m = nystrom_matrix(&p, &gauss_legendre(64));
        assert!(m.is_symmetric());
        assert!((m.trace() - 10.0 / PI).abs() < 1e-13);
    }

    #[test]
    fn spectrum_bounds_and_trace() {
        for s in [1.0, 5.0, 10.0] {
            let (_, spec) = log_det_at_order(&GapParams::saturated(s).unwrap(), 128).unwrap();
            assert!(spec.eigenvalues[0] < 1.0);
            assert!(spec
                .eigenvalues
                .iter()
                .all(|&l| l > -1e-12 && l < 1.0 + 1e-12));
            let tr: f64 = spec.eigenvalues.iter().sum();
            assert!((tr - 2.0 * s / PI).abs() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn gamma_zero_is_zero() {
        let r = log_det(&GapParams::from_gamma(3.0, 0.0).unwrap(), &cfg()).unwrap();
        assert_eq!(r.ln_d, 0.0);
    }

    #[test]
    fn small_s_trace_expansion() {
        let r = log_det(&GapParams::from_gamma(0.1, 0.5).unwrap(), &cfg()).unwrap();
        assert!((r.ln_d - small_s_ln_d(0.1, 0.5)).abs() < 2e-3);
    }

    #[test]
    fn gaussian_gap_at_s_ten() {
        let r = log_det(&GapParams::saturated(10.0).unwrap(), &cfg()).unwrap();
        let formula = -50.0 - 0.25 * 10f64.ln() + widom_dyson_ln_c0();
        assert!((r.ln_d - formula).abs() <= 0.2);
        assert!(r.err_est < 1e-6);
    }

    #[test]
    fn precision_envelope() {
        let err = log_det(&GapParams::saturated(20.0).unwrap(), &cfg()).unwrap_err();
        assert!(matches!(err, SineGapError::PrecisionCeiling { .. }));
        // far from γ = 1 the baseline backend is fine at larger s
        assert!(log_det(&GapParams::from_gamma(20.0, 0.5).unwrap(), &cfg()).is_ok());
        let ext = FredholmConfig {
            precision: Precision::Extended,
            ..cfg()
        };
        assert!(matches!(
            log_det(&GapParams::saturated(2.0).unwrap(), &ext),
            Err(SineGapError::BackendUnavailable(_))
        ));
    }

    #[test]
    fn order_cap_reported() {
        let c = FredholmConfig {
            max_order: 100,
            ..cfg()
        };
        assert!(matches!(
            log_det(&GapParams::from_gamma(30.0, 0.5).unwrap(), &c),
            Err(SineGapError::Convergence { .. })
        ));
    }

    #[test]
    fn lu_route_agrees() {
        for s in [1.0, 4.0, 10.0] {
            for g in [0.2, 0.6, 0.9] {
                let p = GapParams::from_gamma(s, g).unwrap();
                let a = log_det(&p, &cfg()).unwrap().ln_d;
                let b = log_det_lu(&p, &cfg()).unwrap().ln_d;
                assert!((a - b).abs() < 1e-9, "s={s} g={g}");
            }
        }
    }

    #[test]
    fn monotone_in_gamma_and_s() {
        let ss = [1.0, 3.0, 5.0, 7.0, 9.0];
        let gs = [0.1, 0.3, 0.5, 0.8, 1.0];
        let grid: Vec<Vec<f64>> = ss
            .iter()
            .map(|&s| {
                gs.iter()
                    .map(|&g| {
                        log_det(&GapParams::from_gamma(s, g).unwrap(), &cfg())
                            .unwrap()
                            .ln_d
                    })
                    .collect()
            })
            .collect();
        for i in 0..5 {
            for j in 0..5 {
                if j > 0 {
                    assert!(grid[i][j] <= grid[i][j - 1]);
                }
                if i > 0 {
                    assert!(grid[i][j] <= grid[i - 1][j]);
                }
            }
        }
    }

    #[test]
    fn spectral_convergence() {
        let p = GapParams::from_gamma(6.0, 0.7).unwrap();
        let exact = log_det_at_order(&p, 512).unwrap().0;
        let e6 = (log_det_at_order(&p, 6).unwrap().0 - exact).abs();
        let e9 = (log_det_at_order(&p, 9).unwrap().0 - exact).abs();
        let e12 = (log_det_at_order(&p, 12).unwrap().0 - exact).abs();
        assert!(e9 < e6 / 10.0 && e12 < e9 / 10.0, "{e6} {e9} {e12}");
    }

    #[test]
    fn deficits_follow_slepian() {
        let d = eigenvalue_deficits(10.0, 3, &cfg()).unwrap();
        assert!(d[0].1 < d[1].1 && d[1].1 < d[2].1);
        let pred = slepian_deficit(10.0, 0);
        assert!((pred - 4.6e-8).abs() < 1e-9);
        assert!((d[0].1 / pred - 1.0).abs() < 0.35);
        let ratio = d[2].1 / d[1].1;
        let pred_ratio = slepian_deficit(8.0, 2) / slepian_deficit(8.0, 1);
        let d8 = eigenvalue_deficits(8.0, 3, &cfg()).unwrap();
        assert!((d8[2].1 / d8[1].1 / pred_ratio - 1.0).abs() < 0.5);
        assert!(ratio > 1.0);
    }
}
