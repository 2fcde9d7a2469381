use std::process::{Command, Output};

fn tsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsl"))
        .args(args)
        .env_remove("TSL_FORMAT")
        .env_remove("TSL_SEED")
        .env_remove("TSL_TIE_RTOL")
        .env_remove("TSL_CONFIG")
        .env_remove("TSL_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = tsl(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Round to 5 significant digits the way plain output does.
fn sig5(x: f64) -> String {
    format!("{x:.4e}")
}

#[test]
fn example_one_plain_distances() {
    let o = tsl(&["analyze", "-n", "1000", "-d", "2", "-s", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("d_F = 9.8499e-06"), "{text}");
    assert!(text.contains("d_F^T = 1.7977e-04"), "{text}");
}

#[test]
fn example_four_json_minimizers() {
    let v = json(&[
        "analyze", "-n", "10", "-d", "1.8", "-s", "-1", "--format", "json",
    ]);
    assert_eq!(v["unstructured_minimizer_indices"], serde_json::json!([2]));
    assert_eq!(v["minimizer_indices"], serde_json::json!([1]));
    assert_eq!(v["minimizers"][0]["h"], 1);
    assert_eq!(v["metadata"]["tool"], "tsl");
    assert!(v["metadata"]["config"]["tolerances"]["tie_rtol"].is_number());
}

#[test]
fn expression_flags_reproduce_table_columns() {
    let o = tsl(&[
        "analyze",
        "-n",
        "9",
        "--delta-expr",
        "cos(pi/20)",
        "--sigma-expr",
        "-sqrt(2)/2",
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    let lambda = [
        -3.5731e-1, -1.5643e-1, 1.5643e-1, 5.5067e-1, 9.8769e-1, 1.4247e0, 1.8189e0, 2.1318e0,
        2.3327e0,
    ];
    let kappa = [
        5.8072e-1, 5.2415e-1, 4.4439e-1, 3.6740e-1, 3.3333e-1, 3.6740e-1, 4.4439e-1, 5.2415e-1,
        5.8072e-1,
    ];
    for (h, row) in rows.iter().enumerate() {
        assert_eq!(row[0] as usize, h + 1);
        assert_eq!(sig5(row[1]), sig5(lambda[h]));
        assert_eq!(sig5(row[2]), sig5(kappa[h]));
    }
}

#[test]
fn json_round_trips_at_full_precision() {
    let args = [
        "analyze", "-n", "37", "-d", "0.3", "-s", "-1.7", "--format", "json",
    ];
    let v = json(&args);
    let csv = stdout(&tsl(&[
        "analyze", "-n", "37", "-d", "0.3", "-s", "-1.7", "--format", "csv",
    ]));
    for (row, line) in v["table"]
        .as_array()
        .unwrap()
        .iter()
        .zip(csv.lines().skip(1))
    {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(row["lambda"].as_f64().unwrap(), fields[1]);
        assert_eq!(row["kappa"].as_f64().unwrap(), fields[2]);
        assert_eq!(row["ratio"].as_f64().unwrap(), fields[3]);
    }
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn plain_matches_machine_output_after_rounding() {
    let base = ["analyze", "-n", "12", "-d", "0.7", "-s", "1.3"];
    let v = json(&[&base[..], &["--format", "json"]].concat());
    let text = stdout(&tsl(&base));
    let d_f = v["unstructured_distance"].as_f64().unwrap();
    let d_ft = v["structured_distance_f"].as_f64().unwrap();
    assert!(text.contains(&format!("d_F = {}", sig5_c(d_f))), "{text}");
    assert!(
        text.contains(&format!("d_F^T = {}", sig5_c(d_ft))),
        "{text}"
    );
    for row in v["table"].as_array().unwrap() {
        let h = row["h"].as_u64().unwrap();
        let line = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(&h.to_string()))
            .unwrap();
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells[1], sig5_c(row["lambda"].as_f64().unwrap()));
        assert_eq!(cells[2], sig5_c(row["kappa"].as_f64().unwrap()));
    }
}

/// `9.8499e-06` style.
fn sig5_c(x: f64) -> String {
    let s = sig5(x);
    let (m, e) = s.split_once('e').unwrap();
    let e: i32 = e.parse().unwrap();
    format!("{m}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}

#[test]
fn exit_codes() {
    assert_eq!(
        tsl(&["analyze", "-n", "10", "-d", "1", "-s", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tsl(&["cholesky", "-n", "5", "-d", "1", "-s", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tsl(&["analyze", "-n", "10", "-d", "abc", "-s", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tsl(&["analyze", "-n", "10", "--delta-expr", "cos(", "-s", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tsl(&["analyze", "-n", "1", "-d", "1", "-s", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(tsl(&["examples", "5"]).status.code(), Some(1));
    assert_eq!(tsl(&["figures", "9"]).status.code(), Some(1));
    assert_eq!(tsl(&["figures", "2"]).status.code(), Some(1));
    assert_eq!(
        tsl(&["experiment", "--n-min", "10", "--n-max", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(tsl(&["bogus"]).status.code(), Some(1));
    assert_eq!(tsl(&["--help"]).status.code(), Some(0));
    assert_eq!(tsl(&["--version"]).status.code(), Some(0));
}

#[test]
fn all_examples_pass() {
    for id in ["1", "2", "3", "4"] {
        let o = tsl(&["examples", id]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(!text.contains("[FAIL]"), "example {id}:\n{text}");
        assert!(text.contains("[PASS]"));
    }
}

#[test]
fn example_two_reports_pair() {
    let text = stdout(&tsl(&["examples", "2"]));
    assert!(
        text.contains("[PASS] structured minimizers: computed [500, 501]"),
        "{text}"
    );
    assert!(text.contains("[PASS] d_F^T: computed 9.9246e-02"), "{text}");
}

#[test]
fn example_one_emits_cholesky_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("rinv.csv");
    let o = tsl(&["examples", "1", "--grid-out", grid.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(
        text.contains("diagonal of R non-increasing: holds"),
        "{text}"
    );
    assert!(text.contains("check,holds,first_violation"), "{text}");
    let csv = std::fs::read_to_string(grid).unwrap();
    assert!(csv.starts_with("row,col,value\n"));
    assert_eq!(csv.lines().count(), 1 + 1000 * 1001 / 2);
}

#[test]
fn example_three_has_both_singular_spectra() {
    let v = json(&["examples", "3", "--format", "json"]);
    assert_eq!(
        v["table_columns"],
        serde_json::json!(["h", "lambda", "kappa", "lambda(S*^T)", "lambda(S*)"])
    );
    assert_eq!(v["table"].as_array().unwrap().len(), 9);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn figures_one_and_three() {
    let f1 = stdout(&tsl(&["figures", "1"]));
    let lines: Vec<&str> = f1.lines().collect();
    assert_eq!(lines[0], "h,kappa");
    assert_eq!(lines.len(), 101);
    let row50: Vec<&str> = lines[50].split(',').collect();
    let c = (50.0 * std::f64::consts::PI / 101.0).cos();
    let want = (1.0 / 100.0 + 2.0 / 99.0 * c * c).sqrt();
    assert_eq!(row50[0], "50");
    assert!((row50[1].parse::<f64>().unwrap() - want).abs() <= 1e-14);

    let f3 = stdout(&tsl(&["figures", "3"]));
    let first: Vec<&str> = f3.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0], "2");
    assert_eq!(first[1], "even");
    assert_eq!(first[4].parse::<f64>().unwrap(), 1.0);
    assert_eq!(f3.lines().count(), 100);
}

#[test]
fn figure_grids() {
    let f2 = stdout(&tsl(&["figures", "2", "--grid", "-n", "20", "--h", "3"]));
    assert_eq!(f2.lines().count(), 1 + 400);
    let f4 = stdout(&tsl(&[
        "figures", "4", "--grid", "-n", "30", "--matrix", "t-inv",
    ]));
    // (T⁻¹)_{1,1} = n/(n+1) for the discrete Laplacian.
    let v: f64 = f4
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((v - 30.0 / 31.0).abs() <= 1e-12);
}

#[test]
fn experiment_is_deterministic() {
    let args = [
        "figures",
        "5",
        "--n-max",
        "20",
        "--samples",
        "2000",
        "--seed",
        "42",
    ];
    let a = tsl(&args);
    let b = tsl(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("n,tested,discarded,ties_skipped,mismatches\n"));
    let c = tsl(&[
        "figures",
        "5",
        "--n-max",
        "20",
        "--samples",
        "2000",
        "--seed",
        "43",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn experiment_smoke_and_totals() {
    let v = json(&["experiment", "--samples", "1", "--format", "json"]);
    let t = &v["totals"];
    let sum = t["tested"].as_u64().unwrap()
        + t["discarded"].as_u64().unwrap()
        + t["ties_skipped"].as_u64().unwrap();
    assert_eq!(sum, t["draws"].as_u64().unwrap());
    assert_eq!(t["draws"], 49);
}

#[test]
fn config_file_env_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tsl.conf");
    std::fs::write(&cfg, "seed = 7\ntie_rtol = 1e-9\n").unwrap();
    let base = [
        "experiment",
        "--samples",
        "1",
        "--format",
        "json",
        "--config",
        cfg.to_str().unwrap(),
    ];
    let v = json(&base);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["tie_rtol"], 1e-9);
    let v = json(&[&base[..], &["--seed", "9"]].concat());
    assert_eq!(v["config"]["seed"], 9);

    let o = Command::new(env!("CARGO_BIN_EXE_tsl"))
        .args(base)
        .env("TSL_SEED", "11")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 11);

    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(tsl(&base).status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = tsl(&[
        "spectrum",
        "-n",
        "5",
        "-d",
        "2",
        "-s",
        "-1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("h,lambda,kappa,ratio\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn cholesky_outputs() {
    let csv = stdout(&tsl(&[
        "cholesky", "-n", "4", "-d", "2", "-s", "-1", "--format", "csv",
    ]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "i,diag,superdiag");
    let r11: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(r11, 2f64.sqrt());
    assert!(lines[4].ends_with(','));

    let v = json(&[
        "cholesky", "-n", "50", "-d", "-3", "-s", "1", "--format", "json",
    ]);
    assert_eq!(v["factor"]["definiteness"], "negative");
    assert_eq!(v["monotonicity"]["diag_nonincreasing"]["holds"], true);
}

#[test]
fn spectrum_vectors() {
    let v = json(&[
        "spectrum",
        "-n",
        "6",
        "-d",
        "0",
        "-s",
        "1",
        "--vectors",
        "--format",
        "json",
    ]);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 6);
    let x: Vec<f64> = pairs[0]["x"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_f64().unwrap())
        .collect();
    let norm: f64 = x.iter().map(|e| e * e).sum();
    assert!((norm - 1.0).abs() <= 1e-14);
}
