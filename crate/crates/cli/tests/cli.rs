//! End-to-end checks of the binary: exit codes, diagnostics, and output
//! files, driven through real scenario files in temporary directories.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conemorse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn scenario_parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.scn");
    fs::write(&bad, "alpha = 1.0\np_r = 1.0\nwat\n").unwrap();
    let out = run(&["morse", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("scenario line 3"), "{}", stderr(&out));
}

#[test]
fn vertex_endpoints_are_rejected() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("vertex.scn");
    let body = fs::read_to_string(scenario_path("cone.scn"))
        .unwrap()
        .replace("q_r = 1.0", "q_r = 0.0");
    assert_ne!(body, fs::read_to_string(scenario_path("cone.scn")).unwrap());
    fs::write(&bad, body).unwrap();
    let out = run(&["morse", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("vertex"), "{}", stderr(&out));
}

#[test]
fn morse_outputs_are_byte_deterministic() {
    let scn = scenario_path("cone.scn");
    let dirs = [TempDir::new().unwrap(), TempDir::new().unwrap()];
    for dir in &dirs {
        let out = run(&[
            "morse",
            "--scenario",
            scn.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
            "--seed",
            "11",
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    for name in ["morse_report.txt", "persistence.tsv", "geodesics.tsv"] {
        let a = fs::read(dirs[0].path().join(name)).unwrap();
        let b = fs::read(dirs[1].path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn unresolvable_scale_is_an_honest_violation() {
    let scn = scenario_path("cone.scn");
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "morse",
        "--scenario",
        scn.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--rips-scale",
        "1e-9",
    ]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stdout(&out).contains("violation"), "{}", stdout(&out));
    // The report is still written for inspection.
    assert!(dir.path().join("morse_report.txt").exists());
}

#[test]
fn sweep_limit_warns_but_reports() {
    let dir = TempDir::new().unwrap();
    let scn = dir.path().join("slow.scn");
    let body = fs::read_to_string(scenario_path("cone.scn"))
        .unwrap()
        .replace("max_sweeps = 20000", "max_sweeps = 1");
    fs::write(&scn, body).unwrap();
    let out = run(&[
        "flow",
        "--scenario",
        scn.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("sweep limit"), "{}", stderr(&out));
    let table = fs::read_to_string(dir.path().join("flow_samples.tsv")).unwrap();
    assert!(table.lines().any(|l| l.contains("false")), "{table}");
}

#[test]
fn develop_svg_marks_overlapping_sheets() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "develop-svg",
        "--scenario",
        scenario_path("wide.scn").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let svg = fs::read_to_string(dir.path().join("develop.svg")).unwrap();
    assert!(svg.contains("<svg"));
    assert!(svg.contains("exceeds one turn"), "missing overlap note");
}

#[test]
fn geodesic_tables_have_one_row_per_geodesic() {
    let dir = TempDir::new().unwrap();
    for (name, rows) in [("plane.scn", 2), ("cone.scn", 5)] {
        let out = run(&[
            "geodesics",
            "--scenario",
            scenario_path(name).to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let table = fs::read_to_string(dir.path().join("geodesics.tsv")).unwrap();
        assert_eq!(table.lines().count(), rows + 1, "{name}: {table}");
    }
}

#[test]
fn unwritable_out_dir_exits_with_io_code() {
    let dir = TempDir::new().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let out = run(&[
        "geodesics",
        "--scenario",
        scenario_path("plane.scn").to_str().unwrap(),
        "--out",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 4, "{}", stderr(&out));
}

#[test]
fn missing_scenario_file_exits_with_io_code() {
    let out = run(&["morse", "--scenario", "/nonexistent/never.scn"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("cannot read"), "{}", stderr(&out));
}
