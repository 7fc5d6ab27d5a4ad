use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn llt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llt"))
        .args(args)
        .env("LLT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn run(config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "run",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    llt(&args)
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gaussian_config_has_zero_distances() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.csv");
    let res = run(&data("gaussian.json"), &out, &[]);
    assert_eq!(
        res.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[1].parse::<f64>().unwrap(), 0.0);
        assert_eq!(fields[2].parse::<f64>().unwrap(), 0.0);
    }
    let report = json(&dir.path().join("report.json"));
    assert_eq!(report["status"], "PASSED");
}

#[test]
fn symmetric_config_writes_columns_and_footer() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sym.csv");
    let res = run(&data("symmetric.json"), &out, &[]);
    assert_eq!(
        res.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,l1_distance,tv_distance,theorem_bound,corollary_bound,bentkus_bound,quad_error,tail_bound"
    );
    let footer: Vec<&str> = csv.lines().filter(|l| l.starts_with('#')).collect();
    let slope: f64 = footer[0]
        .strip_prefix("# fitted_slope=")
        .unwrap()
        .parse()
        .unwrap();
    assert!((slope + 1.0).abs() < 0.1, "{slope}");
    assert!(footer[1].starts_with("# fitted_intercept="));
    // 17 significant digits
    let first = csv.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(first.split('e').next().unwrap().len(), 18);

    let report = json(&dir.path().join("sym.json"));
    let manifest = &report["manifest"];
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(manifest["threads"], 2);
    let stages: Vec<&str> = manifest["timings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["stage"].as_str().unwrap())
        .collect();
    assert_eq!(
        stages,
        ["load-config", "llt-sweep", "write-csv", "write-json"]
    );
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(run(&data("symmetric.json"), &a, &[]).status.code(), Some(0));
    assert_eq!(run(&data("symmetric.json"), &b, &[]).status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let ha = json(&dir.path().join("a.json"))["manifest"]["config_hash"].clone();
    let hb = json(&dir.path().join("b.json"))["manifest"]["config_hash"].clone();
    assert_eq!(ha, hb);
}

#[test]
fn seed_override_changes_the_hash() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    run(&data("symmetric.json"), &a, &[]);
    run(&data("symmetric.json"), &b, &["--seed", "5"]);
    let ja = json(&dir.path().join("a.json"));
    let jb = json(&dir.path().join("b.json"));
    assert_ne!(ja["manifest"]["config_hash"], jb["manifest"]["config_hash"]);
    assert_eq!(jb["config"]["seed"], 5);
}

#[test]
fn two_summand_check_passes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("p.csv");
    let res = run(&data("two_summand.json"), &out, &[]);
    assert_eq!(
        res.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("x,chaos,oracle,closed_form,gap\n"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 42);
    let gap: f64 = csv
        .lines()
        .last()
        .unwrap()
        .strip_prefix("# max_gap=")
        .unwrap()
        .parse()
        .unwrap();
    assert!(gap <= 1e-8);
}

#[test]
fn low_truncation_two_summand_fails_with_full_data() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(data("two_summand.json"))
        .unwrap()
        .replace("\"truncation\": 48", "\"truncation\": 4");
    let config = dir.path().join("low_config.json");
    fs::write(&config, text).unwrap();
    let out = dir.path().join("low.csv");
    let res = run(&config, &out, &[]);
    assert_eq!(res.status.code(), Some(2));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 43);
    assert_eq!(json(&dir.path().join("low.json"))["status"], "FAILED");
}

#[test]
fn experiment_override_runs_the_probe() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("probe.csv");
    let res = run(&data("shifted.json"), &out, &[]);
    assert_eq!(res.status.code(), Some(0));
    assert!(fs::read_to_string(&out)
        .unwrap()
        .contains("# min_distance="));
    // the same law in a sweep fails the moment conditions
    let out = dir.path().join("sweep.csv");
    let res = run(&data("shifted.json"), &out, &["--experiment", "llt-sweep"]);
    assert_ne!(res.status.code(), Some(0));
    // a centered law has nothing for the probe to detect
    let out = dir.path().join("none.csv");
    let res = run(
        &data("symmetric.json"),
        &out,
        &["--experiment", "necessary-condition"],
    );
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn bounds_table_covers_three_dimensions() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bounds.csv");
    let res = run(
        &data("symmetric.json"),
        &out,
        &["--experiment", "bounds-table"],
    );
    assert_eq!(res.status.code(), Some(0));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with(
        "n,d,eligible,theorem_bound,corollary_bound,corollary_bound_fixed_norm,bentkus_bound\n"
    ));
    assert_eq!(csv.lines().count(), 1 + 3 * 6);
}

#[test]
fn bad_config_names_the_field() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("\"alpha\": 0.5", "\"alpha\": 1.5", "alpha"),
        ("\"truncation\": 24", "\"truncation\": 0", "truncation"),
        ("\"seed\": 20240601", "\"seed\": 1, \"sede\": 2", "sede"),
        ("\"var\": [0.9]", "\"var\": [2.5]", "variance"),
    ];
    let base = fs::read_to_string(data("symmetric.json")).unwrap();
    for (from, to, field) in cases {
        let config = dir.path().join("bad_config.json");
        let text = base.replacen(from, to, 1);
        assert_ne!(text, base);
        fs::write(&config, text).unwrap();
        let res = run(&config, &dir.path().join("bad.csv"), &[]);
        assert_eq!(res.status.code(), Some(1));
        let stderr = String::from_utf8_lossy(&res.stderr);
        assert!(stderr.contains(field), "{field}: {stderr}");
    }
    let res = run(
        &dir.path().join("missing.json"),
        &dir.path().join("m.csv"),
        &[],
    );
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn bad_thread_count_is_an_error() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.csv");
    let res = Command::new(env!("CARGO_BIN_EXE_llt"))
        .args([
            "run",
            "--config",
            data("gaussian.json").to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
        .env("LLT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("LLT_THREADS"));
}
