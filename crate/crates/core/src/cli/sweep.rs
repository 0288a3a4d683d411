use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rows::{rows_for_point, EvalSettings, MethodSel, OutputRow, CSV_HEADER};
use crate::asymptotics::BMode;
use crate::error::{Result, SineGapError};
use crate::fredholm::GapParams;

/// A grid sweep, as read from a TOML file or assembled from flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub s_grid: Vec<f64>,
    #[serde(default)]
    pub v_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub kappa_grid: Option<Vec<f64>>,
    pub methods: Vec<MethodSel>,
    #[serde(default)]
    pub b_mode: BMode,
    pub output_path: String,
    /// Where to write the companion plotting script, if anywhere.
    #[serde(default)]
    pub plot_script: Option<String>,
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(SineGapError::InvalidConfig(format!("{name} is empty")));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(SineGapError::InvalidConfig(format!(
            "{name} has a non-finite entry"
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SineGapError::InvalidConfig(format!(
            "{name} is not strictly increasing"
        )));
    }
    Ok(())
}

impl SweepSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: SweepSpec =
            toml::from_str(text).map_err(|e| SineGapError::InvalidConfig(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_grid("s_grid", &self.s_grid)?;
        match (&self.v_grid, &self.kappa_grid) {
            (Some(v), None) => check_grid("v_grid", v)?,
            (None, Some(k)) => check_grid("kappa_grid", k)?,
            _ => {
                return Err(SineGapError::InvalidConfig(
                    "exactly one of v_grid and kappa_grid must be given".into(),
                ))
            }
        }
        if self.methods.is_empty() {
            return Err(SineGapError::InvalidConfig("methods is empty".into()));
        }
        Ok(())
    }

    /// Grid points in output order: `s` outer, `v` or `κ` inner.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let inner = self.v_grid.as_ref().or(self.kappa_grid.as_ref()).unwrap();
        let by_kappa = self.kappa_grid.is_some();
        self.s_grid
            .iter()
            .flat_map(|&s| {
                inner
                    .iter()
                    .map(move |&x| (s, if by_kappa { x * s } else { x }))
            })
            .collect()
    }
}

/// Evaluates the sweep in parallel; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec, set: &EvalSettings) -> Vec<OutputRow> {
    let set = &EvalSettings {
        b_mode: spec.b_mode,
        ..*set
    };
    spec.points()
        .par_iter()
        .map(|&(s, v)| match GapParams::from_v(s, v) {
            Ok(p) => rows_for_point(&p, &spec.methods, set),
            Err(e) => spec
                .methods
                .iter()
                .map(|m| error_row(s, v, m.name(), &e))
                .collect(),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn error_row(s: f64, v: f64, method: &str, e: &SineGapError) -> OutputRow {
    OutputRow {
        s,
        v,
        gamma: f64::NAN,
        kappa: v / s,
        regime: "none".into(),
        method: method.into(),
        ln_d: None,
        err_est: None,
        a: None,
        v_coef: None,
        tau_im: None,
        theta: None,
        residual_vs_numeric: None,
        error: Some(e.into()),
        warnings: Vec::new(),
    }
}

pub fn write_csv<W: Write>(rows: &[OutputRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.csv_record())?;
    }
    w.flush()
}

pub fn write_json<W: Write>(rows: &[OutputRow], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)
}

pub fn resolve(path: &str, base: Option<&Path>) -> PathBuf {
    let p = PathBuf::from(path);
    match base {
        Some(b) if p.is_relative() => b.join(p),
        _ => p,
    }
}
