//! Command-line front end: `eval`, `regimes`, `sweep`, `verify` and `mc`.
//!
//! Exit codes are 0 on success, 1 when a verification check fails and 2 on
//! usage, domain or regime errors.

mod plot;
mod rows;
mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

pub use plot::plot_script;
pub use rows::{rows_for_point, EvalSettings, MethodSel, OutputRow, RowError, CSV_HEADER};
pub use sweep::{run_sweep, write_csv, write_json, SweepSpec};

use crate::asymptotics::{elliptic_edge_v, ladder_cap, saturation_edge_v, stokes_curve_v, BMode};
use crate::error::SineGapError;
use crate::fredholm::{FredholmConfig, GapParams, Precision};
use crate::thinning::{mc_gue_gap_estimate, McConfig};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sinegap",
    version,
    about = "Sine-kernel gap probabilities and their asymptotics"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = PrecisionArg::Baseline)]
    pub precision: PrecisionArg,
    /// Discretization convergence target for numeric determinants.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Evaluate outside the precision envelope instead of failing.
    #[arg(long, global = true)]
    pub unsafe_envelope: bool,
    /// Report D instead of ln D where it does not underflow.
    #[arg(long, global = true)]
    pub linear: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Baseline,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate ln D at one point with one or more methods.
    Eval(EvalArgs),
    /// Stokes curves and regime edges at fixed s.
    Regimes {
        #[arg(long)]
        s: f64,
    },
    /// Evaluate a grid of points and write CSV or JSON.
    Sweep(SweepArgs),
    /// Run the numerical check suites.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Skip the slower Monte Carlo variations.
        #[arg(long)]
        quick: bool,
    },
    /// Monte Carlo estimate of the thinned GUE gap probability.
    Mc(McArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("point").required(true).args(["v", "gamma"])))]
pub struct EvalArgs {
    #[arg(long)]
    pub s: f64,
    #[arg(long)]
    pub v: Option<f64>,
    /// Thinning retention probability; 1 means v = +inf.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "numeric")]
    pub method: Vec<MethodSel>,
    #[arg(long, default_value = "omit")]
    pub b_mode: BMode,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML file with s_grid, v_grid or kappa_grid, methods, b_mode,
    /// output_path and optionally plot_script.
    #[arg(long, conflicts_with_all = ["s_grid", "v_grid", "kappa_grid", "methods"])]
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub s_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub v_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub kappa_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', default_value = "numeric")]
    pub methods: Vec<MethodSel>,
    #[arg(long)]
    pub b_mode: Option<BMode>,
    /// Output file; `-` for standard output.
    #[arg(long)]
    pub output: Option<String>,
    /// Also write a matplotlib script for the regime atlas and residuals.
    #[arg(long)]
    pub plot_script: Option<String>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = McConfig::default().matrix_size)]
    pub matrix_size: usize,
    #[arg(long, default_value_t = McConfig::default().sample_count)]
    pub samples: usize,
    #[arg(long, default_value_t = McConfig::default().s)]
    pub s: f64,
    #[arg(long, default_value_t = McConfig::default().gamma)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Specialfn,
    Fredholm,
    Asymptotics,
    Thinning,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Specialfn => vec![Suite::Specialfn],
            SuiteArg::Fredholm => vec![Suite::Fredholm],
            SuiteArg::Asymptotics => vec![Suite::Asymptotics],
            SuiteArg::Thinning => vec![Suite::Thinning],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

impl Cli {
    fn fredholm(&self) -> FredholmConfig {
        let mut c = FredholmConfig {
            precision: match self.precision {
                PrecisionArg::Baseline => Precision::Baseline,
                PrecisionArg::Extended => Precision::Extended,
            },
            unsafe_envelope: self.unsafe_envelope,
            ..FredholmConfig::default()
        };
        if let Some(t) = self.tol {
            c.target_tol = t;
        }
        c
    }

    fn settings(&self, b_mode: BMode) -> EvalSettings {
        EvalSettings {
            fredholm: self.fredholm(),
            b_mode,
            linear: self.linear,
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(cli, a, out, err),
        Command::Regimes { s } => cmd_regimes(cli, *s, out),
        Command::Sweep(a) => cmd_sweep(cli, a, out, err),
        Command::Verify { suite, quick } => cmd_verify(cli, *suite, *quick, out),
        Command::Mc(a) => cmd_mc(cli, a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(
                err,
                "{}",
                json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
            );
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[derive(Debug)]
enum CliError {
    Lib(SineGapError),
    Io(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Io(_) => "io",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<SineGapError> for CliError {
    fn from(e: SineGapError) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = std::result::Result<i32, CliError>;

fn report_row_errors(rows: &[OutputRow], err: &mut dyn Write) {
    for r in rows {
        if let Some(e) = &r.error {
            let _ = writeln!(err, "s={} v={} {}: {}", r.s, r.v, r.method, e.message);
        }
        for w in &r.warnings {
            let _ = writeln!(err, "warning: s={} v={} {}: {w}", r.s, r.v, r.method);
        }
    }
}

fn cmd_eval(cli: &Cli, a: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let p = match (a.v, a.gamma) {
        (Some(v), None) => GapParams::from_v(a.s, v)?,
        (None, Some(g)) => GapParams::from_gamma(a.s, g)?,
        _ => unreachable!("clap enforces exactly one of --v and --gamma"),
    };
    let rows = rows_for_point(&p, &a.method, &cli.settings(a.b_mode));
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json!({ "rows": rows }))
                .map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out).map_err(io_err)?;
        }
        Format::Csv => write_csv(&rows, &mut *out).map_err(io_err)?,
    }
    report_row_errors(&rows, err);
    Ok(if rows.iter().all(OutputRow::is_ok) {
        EXIT_OK
    } else {
        EXIT_USAGE
    })
}

#[derive(Debug, Serialize)]
struct Edge {
    name: String,
    v: f64,
    kappa: f64,
}

fn regime_table(s: f64) -> Vec<Edge> {
    let edge = |name: String, v: f64| Edge {
        name,
        v,
        kappa: v / s,
    };
    let mut edges: Vec<Edge> = (0..=5)
        .map(|k| edge(format!("stokes_k{k}"), stokes_curve_v(s, k)))
        .collect();
    edges.push(edge("saturation_edge".into(), saturation_edge_v(s)));
    edges.push(edge("elliptic_edge".into(), elliptic_edge_v(s)));
    edges.push(edge("perturbative_edge".into(), s.cbrt()));
    edges
}

fn cmd_regimes(cli: &Cli, s: f64, out: &mut dyn Write) -> CliResult {
    if !(s > 1.0) || !s.is_finite() {
        return Err(SineGapError::domain("regimes", format!("s = {s} must exceed 1")).into());
    }
    let edges = regime_table(s);
    let mut order: Vec<&Edge> = edges.iter().collect();
    order.sort_by(|a, b| b.v.total_cmp(&a.v));
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let doc = json!({
                "s": s,
                "ladder_cap": ladder_cap(s),
                "edges": edges,
                "descending_v": order.iter().map(|e| e.name.as_str()).collect::<Vec<_>>(),
            });
            serde_json::to_writer_pretty(&mut *out, &doc)
                .map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out).map_err(io_err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "v", "kappa"])
                .map_err(|e| CliError::Io(e.to_string()))?;
            for e in &edges {
                w.write_record([e.name.clone(), e.v.to_string(), e.kappa.to_string()])
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

fn sweep_spec(a: &SweepArgs) -> std::result::Result<(SweepSpec, Option<PathBuf>), CliError> {
    if let Some(path) = &a.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SineGapError::InvalidConfig(format!("{}: {e}", path.display())))?;
        let mut spec = SweepSpec::from_toml_str(&text)?;
        if let Some(b) = a.b_mode {
            spec.b_mode = b;
        }
        if let Some(o) = &a.output {
            spec.output_path = o.clone();
        }
        if a.plot_script.is_some() {
            spec.plot_script = a.plot_script.clone();
        }
        let base = path.parent().map(Path::to_path_buf);
        return Ok((spec, base));
    }
    let spec = SweepSpec {
        s_grid: a.s_grid.clone(),
        v_grid: a.v_grid.clone(),
        kappa_grid: a.kappa_grid.clone(),
        methods: a.methods.clone(),
        b_mode: a.b_mode.unwrap_or_default(),
        output_path: a.output.clone().unwrap_or_else(|| "-".into()),
        plot_script: a.plot_script.clone(),
    };
    spec.validate()?;
    Ok((spec, None))
}

fn cmd_sweep(cli: &Cli, a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let (spec, base) = sweep_spec(a)?;
    let rows = run_sweep(&spec, &cli.settings(spec.b_mode));
    let format = cli.format.unwrap_or(Format::Csv);
    let write = |w: &mut dyn Write| match format {
        Format::Csv => write_csv(&rows, w),
        Format::Json => write_json(&rows, w),
    };
    let csv_path = if spec.output_path == "-" {
        write(out).map_err(io_err)?;
        "sweep.csv".to_string()
    } else {
        let path = sweep::resolve(&spec.output_path, base.as_deref());
        let mut f = std::fs::File::create(&path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        write(&mut f).map_err(io_err)?;
        path.display().to_string()
    };
    if let Some(script) = &spec.plot_script {
        let path = sweep::resolve(script, base.as_deref());
        std::fs::write(&path, plot_script(&csv_path))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    report_row_errors(&rows, err);
    Ok(if rows.iter().any(OutputRow::is_ok) {
        EXIT_OK
    } else {
        EXIT_USAGE
    })
}

fn cmd_verify(cli: &Cli, suite: SuiteArg, quick: bool, out: &mut dyn Write) -> CliResult {
    let mut opts = VerifyOptions {
        quick,
        fredholm: cli.fredholm(),
        ..VerifyOptions::default()
    };
    if let Some(seed) = cli.seed {
        opts.seed = seed;
    }
    let checks = verify::run(&suite.suites(), &opts);
    let failed = checks.iter().filter(|c| !c.passed).count();
    match cli.format {
        Some(Format::Json) => {
            let doc = json!({ "checks": checks, "failed": failed });
            serde_json::to_writer_pretty(&mut *out, &doc)
                .map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out).map_err(io_err)?;
        }
        _ => {
            for c in &checks {
                writeln!(out, "{c}").map_err(io_err)?;
            }
            writeln!(out, "{} checks, {} failed", checks.len(), failed).map_err(io_err)?;
        }
    }
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_mc(cli: &Cli, a: &McArgs, out: &mut dyn Write) -> CliResult {
    let cfg = McConfig {
        matrix_size: a.matrix_size,
        sample_count: a.samples,
        seed: cli.seed.unwrap_or(McConfig::default().seed),
        s: a.s,
        gamma: a.gamma,
    };
    let est = mc_gue_gap_estimate(&cfg)?;
    let ln_det =
        crate::fredholm::log_det(&GapParams::from_gamma(a.s, a.gamma)?, &cli.fredholm())?.ln_d;
    let det = ln_det.exp();
    let doc = json!({
        "config": cfg,
        "p_hat": est.p_hat,
        "stderr": est.stderr,
        "samples": est.samples,
        "det": det,
        "ln_det": ln_det,
        "z_score": (est.p_hat - det) / est.stderr,
    });
    serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out).map_err(io_err)?;
    Ok(EXIT_OK)
}
