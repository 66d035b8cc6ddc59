use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bergman-lab")).args(args).output().unwrap()
}

fn config(dir: &Path, body: &str) -> String {
    let p = dir.join("config.in.json");
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn unreadable_or_invalid_configs_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = lab(&["ortho", "--config", tmp.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let bad = config(tmp.path(), r#"{"domain": "ngon:N=4", "precision_bits": 64}"#);
    let out = lab(&["zeros", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precision_bits"));
}

#[test]
fn computation_errors_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    // the ellipse has no interior map to continue
    let cfg = config(tmp.path(), r#"{"domain": "ellipse:rho=1.5", "samples": {"raster": 4}}"#);
    let out = lab(&["continuation", "--config", &cfg, "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not available"));
}

#[test]
fn repeated_runs_are_byte_identical_and_echo_the_config() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(
        tmp.path(),
        r#"{"domain": "lens", "degree_max": 8, "samples": {"interior": [["0.1", "0.2"]], "exterior": [["0", "1.5"]]}}"#,
    );
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for sub in ["ortho", "tables", "asymptotics"] {
        for dir in [&a, &b] {
            let out = lab(&[sub, "--config", &cfg, "--out", dir.to_str().unwrap()]);
            assert!(out.status.success(), "{sub}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
    for name in ["system.json", "lambda.csv", "alpha.csv", "diagonal.csv", "h.csv", "deviations.csv", "profile.csv"] {
        assert_eq!(read(&a, name), read(&b, name), "{name}");
    }
    let echo = read(&a, "config.json");
    assert!(echo.contains("\"precision_bits\": 256") && echo.contains("\"rho_in\": \"0.3\""));
    assert!(echo.contains(&format!("\"output_dir\": {:?}", a.to_str().unwrap())));
    assert!(!read(&a, "deviations.csv").contains('\r'));
}

#[test]
fn square_zero_table_has_one_row_per_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), r#"{"domain": "ngon:N=4", "degree_max": 30}"#);
    let out = lab(&["zeros", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert!(out.status.success());
    let zeros = read(tmp.path(), "zeros.csv");
    assert_eq!(zeros.lines().count(), 1 + 30 * 31 / 2);
    assert_eq!(zeros.lines().next().unwrap(), "n,re,im,dist_gamma,dist_L,dist_corners");
}

#[test]
fn verify_on_the_disk_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), r#"{"domain": "disk"}"#);
    let out = lab(&["verify", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("criterion")).collect();
    assert_eq!(lines.len(), 12);
    for (i, l) in lines.iter().enumerate() {
        let want = if [0, 1, 2, 11].contains(&i) { "PASS" } else { "SKIP" };
        assert!(l.contains(want), "{l}");
    }
    assert_eq!(read(tmp.path(), "verify.txt").lines().count(), 12);
}
