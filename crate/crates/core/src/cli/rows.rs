use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::asymptotics::{
    classify, eq2_ln_d, eq3_ln_d, eq5_ln_d, eq6_with_data, regime_label, BMode, Regime,
};
use crate::error::{Result, SineGapError};
use crate::fredholm::{log_det, FredholmConfig, GapParams};
use crate::report::EvalReport;

pub const CSV_HEADER: [&str; 13] = [
    "s",
    "v",
    "gamma",
    "kappa",
    "regime",
    "method",
    "ln_D",
    "err_est",
    "a",
    "V",
    "tau_im",
    "theta",
    "residual_vs_numeric",
];

/// A method selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodSel {
    Numeric,
    Eq2,
    Eq3,
    Eq5,
    Eq6,
}

impl MethodSel {
    pub fn name(self) -> &'static str {
        match self {
            MethodSel::Numeric => "numeric",
            MethodSel::Eq2 => "eq2",
            MethodSel::Eq3 => "eq3",
            MethodSel::Eq5 => "eq5",
            MethodSel::Eq6 => "eq6",
        }
    }
}

impl FromStr for MethodSel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "numeric" => Ok(MethodSel::Numeric),
            "eq2" => Ok(MethodSel::Eq2),
            "eq3" => Ok(MethodSel::Eq3),
            "eq5" => Ok(MethodSel::Eq5),
            "eq6" => Ok(MethodSel::Eq6),
            other => Err(format!(
                "unknown method '{other}' (numeric, eq2, eq3, eq5, eq6)"
            )),
        }
    }
}

impl fmt::Display for MethodSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn ser_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&fmt_f64(*x))
    }
}

fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_f64(x, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e16) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// One evaluation: a point, a method and its result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRow {
    #[serde(serialize_with = "ser_f64")]
    pub s: f64,
    #[serde(serialize_with = "ser_f64")]
    pub v: f64,
    pub gamma: f64,
    #[serde(serialize_with = "ser_f64")]
    pub kappa: f64,
    pub regime: String,
    pub method: String,
    #[serde(rename = "ln_D", serialize_with = "ser_opt_f64")]
    pub ln_d: Option<f64>,
    #[serde(serialize_with = "ser_opt_f64")]
    pub err_est: Option<f64>,
    pub a: Option<f64>,
    #[serde(rename = "V")]
    pub v_coef: Option<f64>,
    pub tau_im: Option<f64>,
    pub theta: Option<f64>,
    #[serde(serialize_with = "ser_opt_f64")]
    pub residual_vs_numeric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<RowError>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowError {
    pub kind: &'static str,
    pub message: String,
}

impl From<&SineGapError> for RowError {
    fn from(e: &SineGapError) -> Self {
        RowError {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

impl OutputRow {
    pub fn csv_record(&self) -> [String; 13] {
        let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        [
            fmt_f64(self.s),
            fmt_f64(self.v),
            fmt_f64(self.gamma),
            fmt_f64(self.kappa),
            self.regime.clone(),
            self.method.clone(),
            opt(self.ln_d),
            opt(self.err_est),
            opt(self.a),
            opt(self.v_coef),
            opt(self.tau_im),
            opt(self.theta),
            opt(self.residual_vs_numeric),
        ]
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

/// Settings shared by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalSettings {
    pub fredholm: FredholmConfig,
    pub b_mode: BMode,
    /// Report `D` instead of `ln D`.
    pub linear: bool,
}

/// Smallest `ln D` whose exponential is a normal double.
const LINEAR_FLOOR: f64 = -708.0;

struct Evaluated {
    report: EvalReport,
    a: Option<f64>,
    v_coef: Option<f64>,
    tau_im: Option<f64>,
    theta: Option<f64>,
}

fn evaluate(p: &GapParams, method: MethodSel, set: &EvalSettings) -> Result<Evaluated> {
    let plain = |report| Evaluated {
        report,
        a: None,
        v_coef: None,
        tau_im: None,
        theta: None,
    };
    match method {
        MethodSel::Numeric => log_det(p, &set.fredholm).map(plain),
        MethodSel::Eq2 => {
            let saturated = classify(p).iter().any(|r| r.regime == Regime::Saturation);
            if !p.is_saturated() && !saturated {
                return Err(SineGapError::Regime(format!(
                    "eq2 needs gamma = 1 or the saturation regime (s = {}, v = {})",
                    p.s, p.v
                )));
            }
            eq2_ln_d(p.s).map(plain)
        }
        MethodSel::Eq3 => {
            if !p.v.is_finite() {
                return Err(SineGapError::Regime("eq3 needs finite v".into()));
            }
            eq3_ln_d(p.s, p.v).map(plain)
        }
        MethodSel::Eq5 => eq5_ln_d(p.s, p.v).map(plain),
        MethodSel::Eq6 => {
            let e = eq6_with_data(p.s, p.v, set.b_mode)?;
            Ok(Evaluated {
                report: e.report,
                a: Some(e.elliptic.a),
                v_coef: Some(e.elliptic.v_coef),
                tau_im: Some(e.elliptic.tau_im),
                theta: Some(e.theta),
            })
        }
    }
}

/// One row per method at the point `p`, in the order given.
pub fn rows_for_point(p: &GapParams, methods: &[MethodSel], set: &EvalSettings) -> Vec<OutputRow> {
    let regime = regime_label(&classify(p));
    let results: Vec<(MethodSel, Result<Evaluated>)> =
        methods.iter().map(|&m| (m, evaluate(p, m, set))).collect();
    let numeric = results.iter().find_map(|(m, r)| match (m, r) {
        (MethodSel::Numeric, Ok(e)) => Some(e.report.ln_d),
        _ => None,
    });
    results
        .into_iter()
        .map(|(m, r)| {
            let mut row = OutputRow {
                s: p.s,
                v: p.v,
                gamma: p.gamma,
                kappa: p.kappa,
                regime: regime.clone(),
                method: m.name().to_string(),
                ln_d: None,
                err_est: None,
                a: None,
                v_coef: None,
                tau_im: None,
                theta: None,
                residual_vs_numeric: None,
                error: None,
                warnings: Vec::new(),
            };
            match r {
                Ok(e) => {
                    let ln_d = e.report.ln_d;
                    row.residual_vs_numeric = match (m, numeric) {
                        (MethodSel::Numeric, _) | (_, None) => None,
                        (_, Some(n)) => Some(ln_d - n),
                    };
                    row.err_est = Some(e.report.err_est);
                    row.a = e.a;
                    row.v_coef = e.v_coef;
                    row.tau_im = e.tau_im;
                    row.theta = e.theta;
                    row.warnings = e.report.warnings;
                    if set.linear {
                        if ln_d >= LINEAR_FLOOR {
                            row.ln_d = Some(ln_d.exp());
                        } else {
                            row.err_est = None;
                            row.error = Some(RowError {
                                kind: "domain",
                                message: format!(
                                    "D = exp({ln_d}) underflows; drop --linear for ln D"
                                ),
                            });
                        }
                    } else {
                        row.ln_d = Some(ln_d);
                    }
                }
                Err(e) => row.error = Some(RowError::from(&e)),
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> EvalSettings {
        EvalSettings {
            fredholm: FredholmConfig::default(),
            b_mode: BMode::Omit,
            linear: false,
        }
    }

    #[test]
    fn residual_only_next_to_numeric() {
        let p = GapParams::saturated(6.0).unwrap();
        let rows = rows_for_point(&p, &[MethodSel::Numeric, MethodSel::Eq2], &settings());
        assert_eq!(rows[0].residual_vs_numeric, None);
        let r = rows[1].residual_vs_numeric.unwrap();
        assert!((r - (rows[1].ln_d.unwrap() - rows[0].ln_d.unwrap())).abs() < 1e-15);
        let alone = rows_for_point(&p, &[MethodSel::Eq2], &settings());
        assert_eq!(alone[0].residual_vs_numeric, None);
    }

    #[test]
    fn eq2_rejected_away_from_saturation() {
        let p = GapParams::from_v(10.0, 1.0).unwrap();
        let rows = rows_for_point(&p, &[MethodSel::Eq2], &settings());
        assert_eq!(rows[0].error.as_ref().unwrap().kind, "regime");
        assert_eq!(rows[0].csv_record()[6], "");
    }

    #[test]
    fn linear_output() {
        let p = GapParams::from_gamma(1.0, 0.5).unwrap();
        let set = EvalSettings {
            linear: true,
            ..settings()
        };
        let lin = rows_for_point(&p, &[MethodSel::Numeric], &set)[0]
            .ln_d
            .unwrap();
        let log = rows_for_point(&p, &[MethodSel::Numeric], &settings())[0]
            .ln_d
            .unwrap();
        assert!((lin - log.exp()).abs() < 1e-15);
    }

    #[test]
    fn csv_infinity() {
        let p = GapParams::saturated(3.0).unwrap();
        let rec = rows_for_point(&p, &[MethodSel::Numeric], &settings())[0].csv_record();
        assert_eq!(rec[1], "inf");
        assert_eq!(rec[2], "1");
    }
}
