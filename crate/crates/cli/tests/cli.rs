use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn avail(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avail"))
        .args(args)
        .env_remove("AVAIL_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn construct_then_verify_k4() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.txt");
    let k4s = k4.to_str().unwrap();
    let out = avail(&[
        "construct",
        "partition",
        "--r",
        "1",
        "--g",
        "2",
        "--t",
        "3",
        "-o",
        k4s,
    ]);
    let v = json(&out);
    assert_eq!(v["code"]["k"], 1);
    assert_eq!(v["code"]["n"], 4);
    assert!(dir.path().join("k4.json").exists());
    let text = std::fs::read_to_string(&k4).unwrap();
    assert!(text.starts_with("6 4\n"));

    let v = json(&avail(&[
        "verify", "--in", k4s, "--r", "1", "--t", "3", "--strict",
    ]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"]["strict"]["pass"], true);
    // r and t come from the sidecar when omitted.
    let v = json(&avail(&["verify", "--in", k4s]));
    assert_eq!(v["checks"]["availability"]["pass"], true);
    // Wrong parameters fail with exit code 1.
    let out = avail(&["verify", "--in", k4s, "--r", "2", "--t", "3", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_k4() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.txt");
    std::fs::write(&k4, "6 4\n1100\n1010\n1001\n0110\n0101\n0011\n").unwrap();
    let v = json(&avail(&[
        "analyze",
        "--in",
        k4.to_str().unwrap(),
        "--r",
        "1",
        "--t",
        "3",
        "--dmin",
        "--greedy",
        "--ghw",
        "1",
    ]));
    assert_eq!(v["code"]["rank"], 3);
    assert_eq!(v["code"]["k"], 1);
    assert_eq!(v["code"]["d"], 4);
    assert_eq!(v["code"]["ghw_dual"]["d_i_dual"], 2);
    assert_eq!(v["trace"]["g"], serde_json::json!([3, 2, 1]));
    assert_eq!(v["trace"]["final_bound"], 1);
    assert_eq!(v["checks"]["strict"]["pass"], true);
    let bounds = v["bounds"].as_array().unwrap();
    assert!(!bounds.is_empty());
    assert!(bounds.iter().all(|b| b["holds"] == true));
}

#[test]
fn analyze_reads_stdin_without_parameters() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_avail"))
        .args(["analyze", "--in", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2 3\n110\n011\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v = json(&out);
    assert_eq!(v["code"]["k"], 1);
    assert!(v.get("checks").is_none());
}

#[test]
fn bad_matrix_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    std::fs::write(&p, "2 3\n10\n010\n").unwrap();
    let out = avail(&[
        "verify",
        "--in",
        p.to_str().unwrap(),
        "--r",
        "1",
        "--t",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn rate_transpose_checkpoint() {
    let v = json(&avail(&[
        "bounds",
        "rate",
        "--r",
        "4",
        "--t",
        "4",
        "--method",
        "transpose",
    ]));
    assert_eq!(v["exact"], "1093/1820");
    assert_eq!(v["kind"], "rate");
}

#[test]
fn rate_all_lists_skipped_methods() {
    let v = json(&avail(&["bounds", "rate", "--r", "3", "--t", "1"]));
    let names: Vec<&str> = v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"tamo_barg"));
    assert!(!v["skipped"].as_array().unwrap().is_empty());
    let v = json(&avail(&[
        "bounds",
        "rate",
        "--r",
        "3",
        "--t",
        "3",
        "--n",
        "20",
        "--method",
        "greedy-t3",
    ]));
    assert_eq!(v["exact"], "11/20");
}

#[test]
fn dmin_and_dim_bounds() {
    let v = json(&avail(&[
        "bounds", "dmin", "--n", "20", "--k", "10", "--r", "3", "--t", "3", "--method", "wang",
    ]));
    assert_eq!(v["kind"], "distance");
    let v = json(&avail(&[
        "bounds", "dim", "--n", "16", "--d", "4", "--r", "3", "--t", "3",
    ]));
    assert_eq!(v["kind"], "dimension");
}

#[test]
fn lp_emits_bound_and_distribution() {
    let v = json(&avail(&[
        "bounds", "lp", "--n", "16", "--r", "3", "--t", "3",
    ]));
    assert_eq!(v["bound"]["name"], "lp");
    let a = v["a"].as_array().unwrap();
    assert_eq!(a.len(), 13);
    assert_eq!(a[0]["weight"], 4);
    let f = json(&avail(&[
        "bounds", "lp", "--n", "16", "--r", "3", "--t", "3", "--float",
    ]));
    let (e, f) = (
        v["codewords"].as_f64().unwrap(),
        f["codewords"].as_f64().unwrap(),
    );
    assert!((e - f).abs() <= 1e-6 * e);
    // r+1 must divide nt.
    let out = avail(&["bounds", "lp", "--n", "3", "--r", "3", "--t", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bounds", "rate", "--r", "3"][..],
        &["bounds", "rate", "--r", "3", "--t", "3", "--bogus"],
        &["figure", "rate9"],
        &["frobnicate"],
    ] {
        let out = avail(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn figure_single_row() {
    let out = avail(&["figure", "rate3", "--rmin", "3", "--rmax", "3"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("3,0.55,11/20,"));
}

#[test]
fn figures_match_golden_files() {
    for (id, extra) in [
        ("rate3", &[][..]),
        ("rate4", &[]),
        ("dmin3", &[]),
        ("dmin3_mdelta", &[]),
        ("lp3", &["--rmin", "3", "--rmax", "4"]),
    ] {
        let mut args = vec!["figure", id];
        args.extend_from_slice(extra);
        let out = avail(&args);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden(&format!("{id}.csv")), "{id}");
    }
}

fn column(csv: &str, name: &str) -> Vec<(u64, String)> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            (cells[0].parse().unwrap(), cells[idx].to_string())
        })
        .collect()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn golden_product_column_matches_formula() {
    // prod_{j=1..t} 1/(1 + 1/(j r)) in lowest terms.
    for (id, t) in [("rate3.csv", 3u128), ("rate4.csv", 4)] {
        for (r, cell) in column(&golden(id), "tamo_barg_exact") {
            let r = r as u128;
            let (mut p, mut q) = (1u128, 1u128);
            for j in 1..=t {
                p *= j * r;
                q *= j * r + 1;
            }
            let g = gcd(p, q);
            assert_eq!(cell, format!("{}/{}", p / g, q / g), "{id} r={r}");
        }
    }
}

#[test]
fn golden_distance_column_matches_formula() {
    // d <= n - sum_{i=0..t} floor((k-1)/r^i) on n = C(r+3,3).
    for (r, cell) in column(&golden("dmin3.csv"), "tamo_barg_dmin") {
        let n = (r + 3) * (r + 2) * (r + 1) / 6;
        let k = r * (r + 1) * (r + 2) / 6;
        let s: u64 = (0..=3).map(|i| (k - 1) / r.pow(i)).sum();
        assert_eq!(cell.parse::<u64>().unwrap(), n - s, "r={r}");
    }
}

#[test]
fn lp_budget_flags_rows() {
    let text = stdout(&avail(&[
        "figure", "lp3", "--rmin", "3", "--rmax", "4", "--budget", "3",
    ]));
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("4,,"));
    assert!(last.contains("skipped"));
}

#[test]
fn output_is_deterministic() {
    let args = ["figure", "dmin3_mdelta", "--rmin", "3", "--rmax", "6"];
    assert_eq!(avail(&args).stdout, avail(&args).stdout);
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("p.txt");
    let ks = k.to_str().unwrap();
    json(&avail(&[
        "construct",
        "product",
        "--r",
        "2",
        "--t",
        "3",
        "-o",
        ks,
    ]));
    let g = |seed: &str| {
        avail(&[
            "analyze", "--in", ks, "--greedy", "--seed", seed, "--start", "4",
        ])
        .stdout
    };
    assert_eq!(g("7"), g("7"));
}

#[test]
fn out_dir_variable_applies_to_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_avail"))
        .args([
            "construct",
            "functional",
            "--q",
            "3",
            "--t",
            "4",
            "-o",
            "c9.txt",
        ])
        .env("AVAIL_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("c9.txt").exists());
    assert!(dir.path().join("c9.json").exists());
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c9.json")).unwrap())
            .unwrap();
    assert_eq!(side["n"], 9);
    assert_eq!(side["kind"], "strict");
}
