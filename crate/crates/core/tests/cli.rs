use std::process::{Command, Output};

const HEADER: &str =
    "s,v,gamma,kappa,regime,method,ln_D,err_est,a,V,tau_im,theta,residual_vs_numeric";

fn sinegap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sinegap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn csv_header_is_fixed() {
    let o = sinegap(&["eval", "--s", "3", "--v", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), HEADER);
    assert_eq!(lines.next().unwrap().split(',').count(), 13);
}

#[test]
fn eval_numeric_and_gaussian() {
    let o = sinegap(&[
        "eval",
        "--s",
        "10",
        "--gamma",
        "1",
        "--method",
        "numeric,eq2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let numeric = rows[0]["ln_D"].as_f64().unwrap();
    let eq2 = rows[1]["ln_D"].as_f64().unwrap();
    assert!((numeric + 51.0138).abs() < 1e-3);
    assert!((rows[1]["residual_vs_numeric"].as_f64().unwrap() - (eq2 - numeric)).abs() < 1e-12);
    assert_eq!(rows[0]["v"], "inf");
}

#[test]
fn zero_v_gives_zero() {
    let o = sinegap(&[
        "eval",
        "--s",
        "10",
        "--v",
        "0",
        "--method",
        "numeric,eq3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        assert_eq!(line.split(',').nth(6).unwrap(), "0");
    }
}

#[test]
fn v_and_gamma_round_trip() {
    let v = 1.3f64;
    let gamma = -(-2.0 * v).exp_m1();
    let a = sinegap(&[
        "eval",
        "--s",
        "7",
        "--v",
        &v.to_string(),
        "--method",
        "numeric,eq3",
        "--format",
        "csv",
    ]);
    let b = sinegap(&[
        "eval",
        "--s",
        "7",
        "--gamma",
        &gamma.to_string(),
        "--method",
        "numeric,eq3",
        "--format",
        "csv",
    ]);
    let parse = |o: &Output| -> Vec<Vec<f64>> {
        stdout(o)
            .lines()
            .skip(1)
            .map(|l| {
                l.split(',')
                    .enumerate()
                    .filter(|(i, _)| [0, 1, 2, 3, 6].contains(i))
                    .map(|(_, x)| x.parse().unwrap())
                    .collect()
            })
            .collect()
    };
    let (ra, rb) = (parse(&a), parse(&b));
    assert_eq!(ra.len(), 2);
    for (x, y) in ra.iter().flatten().zip(rb.iter().flatten()) {
        assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{x} {y}");
    }
}

#[test]
fn precision_envelope_exits_two() {
    let o = sinegap(&["eval", "--s", "100", "--gamma", "1", "--method", "numeric"]);
    assert_eq!(o.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["rows"][0]["error"]["kind"], "precision_ceiling");
    let o = sinegap(&[
        "eval",
        "--s",
        "100",
        "--gamma",
        "1",
        "--precision",
        "extended",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        sinegap(&["eval", "--s", "1", "--v", "1", "--gamma", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sinegap(&["eval", "--s", "1"]).status.code(), Some(2));
    assert_eq!(sinegap(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sinegap(&["regimes", "--s", "0.5"]).status.code(), Some(2));
    assert_eq!(
        sinegap(&["mc", "--matrix-size", "8"]).status.code(),
        Some(2)
    );
}

#[test]
fn regimes_table() {
    let o = sinegap(&["regimes", "--s", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let edges = doc["edges"].as_array().unwrap();
    let k0 = edges.iter().find(|e| e["name"] == "stokes_k0").unwrap();
    assert!((k0["v"].as_f64().unwrap() - 98.8487).abs() < 1e-4);
    let ell = edges.iter().find(|e| e["name"] == "elliptic_edge").unwrap();
    let expected = 1.0 - 0.25 * 100f64.ln().powf(4.0 / 3.0) / 100.0;
    assert!((ell["kappa"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert_eq!(doc["descending_v"][0], "stokes_k0");
}

#[test]
fn sweep_is_deterministic_and_writes_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("spec.toml");
    std::fs::write(
        &cfg,
        "s_grid = [8.0, 12.0]\nkappa_grid = [0.2, 0.5, 0.8]\nmethods = [\"numeric\", \"eq6\"]\n\
         output_path = \"out.csv\"\nplot_script = \"plot.py\"\n",
    )
    .unwrap();
    let run = || {
        let o = sinegap(&["sweep", "--config", cfg.to_str().unwrap()]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        std::fs::read(dir.path().join("out.csv")).unwrap()
    };
    let first = run();
    assert_eq!(first, run());
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().next().unwrap(), HEADER);
    assert_eq!(text.lines().count(), 1 + 2 * 3 * 2);
    for line in text.lines().skip(1).filter(|l| l.contains(",eq6,")) {
        let r: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(r.abs() <= 2.0);
    }
    let script = std::fs::read_to_string(dir.path().join("plot.py")).unwrap();
    assert!(script.contains("out.csv"));
}

#[test]
fn one_point_sweep_matches_eval() {
    let sweep = sinegap(&[
        "sweep",
        "--s-grid",
        "5",
        "--v-grid",
        "2",
        "--methods",
        "numeric,eq3",
    ]);
    let eval = sinegap(&[
        "eval",
        "--s",
        "5",
        "--v",
        "2",
        "--method",
        "numeric,eq3",
        "--format",
        "csv",
    ]);
    assert_eq!(sweep.status.code(), Some(0));
    assert_eq!(stdout(&sweep), stdout(&eval));
}

#[test]
fn sweep_with_only_failures_exits_two() {
    let o = sinegap(&[
        "sweep",
        "--s-grid",
        "5",
        "--v-grid",
        "0",
        "--methods",
        "eq6",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("regime error"));
}

#[test]
fn mc_is_deterministic_with_z_score() {
    let args = ["mc", "--samples", "500", "--seed", "7"];
    let (a, b) = (sinegap(&args), sinegap(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let z = (doc["p_hat"].as_f64().unwrap() - doc["det"].as_f64().unwrap())
        / doc["stderr"].as_f64().unwrap();
    assert!((doc["z_score"].as_f64().unwrap() - z).abs() < 1e-12);
}

#[test]
fn verify_reports_measured_values() {
    let o = sinegap(&["verify", "specialfn"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[PASS] specialfn/legendre_relation: measured"));
    assert!(text.contains("failed"));
}

#[test]
fn linear_flag() {
    let o = sinegap(&[
        "eval", "--s", "1", "--gamma", "0.5", "--linear", "--format", "csv",
    ]);
    let d: f64 = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(6)
        .unwrap()
        .parse()
        .unwrap();
    assert!((d - 0.690_870_830_445).abs() < 1e-9);
}
