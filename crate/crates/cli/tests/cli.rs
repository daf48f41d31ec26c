use std::path::Path;
use std::process::{Command, Output};

fn ptspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptspec")).args(args).output().unwrap()
}

fn rows(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = csv.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    (header, lines.map(|l| l.split(',').map(str::to_string).collect()).collect())
}

#[test]
fn table2_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("t{run}.csv"));
        let status = ptspec(&["table2", "--out", out.to_str().unwrap()]);
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        let report = dir.path().join(format!("t{run}_calibration.md"));
        outputs.push((std::fs::read(&out).unwrap(), std::fs::read(&report).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let csv = String::from_utf8(outputs[0].0.clone()).unwrap();
    assert!(csv.contains("I2,0,0,") && csv.contains(",-2.01518700249,"));
    assert_eq!(csv.lines().count(), 1 + 108);
}

#[test]
fn free_spectrum_matches_closed_form() {
    let out = ptspec(&["spectrum", "--A", "0", "--B", "0", "--molecule", "I2", "--n", "0,1,2,3"]);
    assert!(out.status.success());
    let (header, body) = rows(&String::from_utf8(out.stdout).unwrap());
    let e = header.iter().position(|h| h == "energy_eV").unwrap();
    // E = -(2α²(ħc)²/μc²)(n + ½)²
    let (mu, alpha, hbar_c, amu) = (63.452235020, 1.86430, 1973.29, 931.494061e6);
    let scale = 2.0 * alpha * alpha * hbar_c * hbar_c / (mu * amu);
    for (n, row) in body.iter().enumerate() {
        let want = -scale * (n as f64 + 0.5).powi(2);
        let got: f64 = row[e].parse().unwrap();
        assert!(((got - want) / want).abs() < 1e-10, "n={n}: {got} vs {want}");
    }
}

#[test]
fn errors_are_json_records() {
    let out = ptspec(&["spectrum", "--molecule", "Xe9"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    let v: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert_eq!(v["status"], "error");
    assert!(v["message"].as_str().unwrap().contains("Xe9"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "name,mu_amu,alpha_invA\nX,-1.0,2.0\n").unwrap();
    let out = ptspec(&["spectrum", "--molecules", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["status"], "error");
}

#[test]
fn figure_data_energy_decreases_with_beta() {
    let dir = tempfile::tempdir().unwrap();
    let out = ptspec(&["figure-data", "--out", dir.path().to_str().unwrap(), "--beta-points", "16", "--zeta-points", "8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 41);
    let csv = std::fs::read_to_string(Path::new(dir.path()).join("fig04_I2.csv")).unwrap();
    let (header, body) = rows(&csv);
    for col in 1..header.len() {
        let u: Vec<f64> = body.iter().map(|r| r[col].parse().unwrap()).collect();
        assert!(u.windows(2).all(|w| w[1] <= w[0]), "{}", header[col]);
    }
}
