use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qentangle"))
}

fn out_dir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().arg("--out").arg(dir).args(args).output().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn figure4_dataset() {
    let dir = out_dir("fig4");
    assert!(run(&dir, &["figure", "4"]).status.success());
    let (header, rows) = read_csv(&dir.join("fig4.csv"));
    assert_eq!(header, ["q", "intensity [W/cm^2]", "k", "p_k"]);
    let q25: Vec<(i64, f64)> = rows
        .iter()
        .filter(|r| r[0].parse::<f64>().unwrap() == 2.5)
        .map(|r| (r[2].parse().unwrap(), r[3].parse().unwrap()))
        .collect();
    let (k_max, p_max) = q25
        .iter()
        .copied()
        .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    assert_eq!(k_max, 0);
    assert!((p_max - 0.270).abs() < 5e-4);
    let m = manifest(&dir);
    assert_eq!(m["status"], "ok");
    assert_eq!(m["outputs"].as_array().unwrap().len(), 1);
}

#[test]
fn figure2_and_5_examples() {
    let dir = out_dir("fig25");
    assert!(run(&dir, &["figure", "2"]).status.success());
    let (_, shapes) = read_csv(&dir.join("fig2_shapes.csv"));
    assert_eq!(shapes[0][2], "monotonic");
    assert!(run(&dir, &["figure", "5"]).status.success());
    let (_, s) = read_csv(&dir.join("fig5.csv"));
    assert_eq!(s[0][2].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn output_is_deterministic() {
    let (a, b) = (out_dir("det_a"), out_dir("det_b"));
    assert!(run(&a, &["figure", "3", "--threads", "3"]).status.success());
    assert!(run(&b, &["figure", "3"]).status.success());
    for f in ["fig3.csv", "fig3_boundaries.csv"] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap()
        );
    }
}

#[test]
fn json_format() {
    let dir = out_dir("json");
    assert!(run(&dir, &["--format", "json", "jackiw", "--gamma", "1"])
        .status
        .success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("jackiw_summary.json")).unwrap())
            .unwrap();
    let row = &v[0];
    let (nu, mean, u1) = (
        row["nu"].as_f64().unwrap(),
        row["mean N"].as_f64().unwrap(),
        row["u1"].as_f64().unwrap(),
    );
    assert!((mean - nu).abs() < 1e-8);
    assert!((0.25 - 1e-12..=0.25 + 1e-8).contains(&u1), "u1 = {u1}");
    assert!(0.0 < nu && nu < 1.0);
}

#[test]
fn occupation_table_rows() {
    let dir = out_dir("table");
    assert!(run(
        &dir,
        &[
            "--photon-energy",
            "2",
            "occupation-table",
            "--bandwidth-ratio",
            "16",
            "--name",
            "probe"
        ]
    )
    .status
    .success());
    let (_, rows) = read_csv(&dir.join("occupation_table.csv"));
    assert_eq!(rows.len(), 4);
    assert!(rows[0][0].starts_with("Ti:Sa"));
    assert!((rows[0][3].parse::<f64>().unwrap() / 9e-6 - 1.0).abs() < 0.15);
    assert_eq!(rows[3][0], "probe");
    assert!((rows[3][3].parse::<f64>().unwrap() - 2.7e-5).abs() < 1e-18);
}

#[test]
fn verify_quick_passes() {
    let dir = out_dir("verify");
    let out = run(&dir, &["verify", "quick"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().all(|l| l.starts_with("PASS")));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("verify_report.json")).unwrap())
            .unwrap();
    assert_eq!(report["pass"], true);
    for c in report["criteria"].as_array().unwrap() {
        for check in c["checks"].as_array().unwrap() {
            assert!(check.get("rule").is_some() && check.get("measured").is_some());
        }
    }
}

#[test]
fn tightened_tolerance_fails_with_code_1() {
    let dir = out_dir("verify_tight");
    let out = run(&dir, &["verify", "quick", "--tolerance", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(manifest(&dir)["status"], "checks_failed");
    assert!(dir.join("verify_report.json").exists());
}

#[test]
fn bad_input_exits_2() {
    let dir = out_dir("bad");
    assert_eq!(run(&dir, &["figure", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&dir, &["--intensity", "-1", "figure", "4"])
            .status
            .code(),
        Some(2)
    );
    let out = run(&dir, &["jackiw", "--gamma", "5", "--branch", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(manifest(&dir)["status"], "error");
}

#[test]
fn config_file_is_read() {
    let dir = out_dir("config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"photon_energy_eV": 1.0, "intensity_W_cm2": 4e12}"#,
    )
    .unwrap();
    assert!(bin()
        .arg("--out")
        .arg(&dir)
        .arg("--config")
        .arg(&cfg)
        .args(["figure", "4"])
        .status()
        .unwrap()
        .success());
    assert!((manifest(&dir)["derived"]["drive"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    std::fs::write(
        &cfg,
        r#"{"photon_energy_eV": 1.0, "intensity_W_cm2": 4e12, "bogus": 1}"#,
    )
    .unwrap();
    let status = bin()
        .arg("--out")
        .arg(&dir)
        .arg("--config")
        .arg(&cfg)
        .args(["figure", "4"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
