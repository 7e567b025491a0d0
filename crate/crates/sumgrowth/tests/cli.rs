//! End-to-end tests of the `sumgrowth` binary: file formats, exit codes,
//! error reporting, and byte-determinism across runs and thread counts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sumgrowth"))
}

fn write(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn height_prints_interval_and_infinite_height_errors() {
    let out = bin().args(["height", "x^2-2"]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("5.828427125"), "{}", stdout(&out));

    let out = bin().args(["height", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "single-line JSON error: {err}");
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"], "infinite_height");
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().args(["height", "x^2-2", "--no-such-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ratio_csv_and_json_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let set = write(
        &dir,
        "a.txt",
        &(0..10).map(|i| i.to_string()).collect::<Vec<_>>().join("\n"),
    );
    let matrix = write(&dir, "t.txt", "2\n");
    let run = |fmt: &str, threads: &str| {
        let out = bin()
            .args([
                "ratio",
                "--set",
                set.to_str().unwrap(),
                "--matrix",
                matrix.to_str().unwrap(),
                "--format",
                fmt,
                "--threads",
                threads,
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
        stdout(&out)
    };
    let csv1 = run("csv", "1");
    let csv2 = run("csv", "2");
    let csv3 = run("csv", "1");
    assert_eq!(csv1, csv2, "thread count changed the bytes");
    assert_eq!(csv1, csv3, "reruns changed the bytes");
    assert!(csv1.starts_with("set_size,sumset_size,ratio,h_circ_lo,h_circ_hi,gap\n"));
    assert!(csv1.contains("10,28,2.8,"), "{csv1}");

    let json = run("json", "2");
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["set_size"], 10);
    assert_eq!(v["sumset_size"], 28);
    assert_eq!(v["ratio"], "2.8");
}

#[test]
fn sumset_writes_sorted_point_file() {
    let dir = tempfile::tempdir().unwrap();
    let set = write(&dir, "a.txt", "2\n0\n1\n");
    let matrix = write(&dir, "t.txt", "2\n");
    let out_path = dir.path().join("out.txt");
    let out = bin()
        .args([
            "sumset",
            "--set",
            set.to_str().unwrap(),
            "--matrix",
            matrix.to_str().unwrap(),
            "-o",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(body, "0\n1\n2\n3\n4\n5\n6\n");
    // the written file parses back as a point set
    let again = bin()
        .args([
            "sumset",
            "--set",
            out_path.to_str().unwrap(),
            "--matrix",
            matrix.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(again.status.success());
}

#[test]
fn duplicate_points_in_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let set = write(&dir, "a.txt", "1\n1\n");
    let matrix = write(&dir, "t.txt", "2\n");
    let out = bin()
        .args([
            "ratio",
            "--set",
            set.to_str().unwrap(),
            "--matrix",
            matrix.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert_eq!(v["error"], "invalid_input");
}

#[test]
fn gap_expand_and_proper_from_description_file() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write(&dir, "p.txt", "offset\n0\n3 2\n1 2\n");
    let out = bin()
        .args(["gap", "expand", "--gap", gap.to_str().unwrap(), "--k", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "0");
    assert_eq!(lines[8], "8");

    let out = bin()
        .args([
            "gap",
            "proper",
            "--gap",
            gap.to_str().unwrap(),
            "--k",
            "2",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["proper"], false);
    assert_eq!(v["collision"]["later"], serde_json::json!([1, 0]));
    assert_eq!(v["collision"]["earlier"], serde_json::json!([0, 3]));
}

#[test]
fn decompose_emits_json_summary() {
    let dir = tempfile::tempdir().unwrap();
    let points: String = (0..16)
        .flat_map(|x| (0..16).map(move |y| format!("{x} {y}")))
        .collect::<Vec<_>>()
        .join("\n");
    let set = write(&dir, "a.txt", &points);
    let out = bin()
        .args([
            "decompose",
            "--set",
            set.to_str().unwrap(),
            "--n",
            "16",
            "--eps",
            "1/2",
            "--delta",
            "1/4",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["level"], 0);
    assert_eq!(v["B"], 1);
    assert_eq!(v["retained"], 256);
}

#[test]
fn converge_table_has_exact_one_dimensional_counts() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(&dir, "t.txt", "2\n");
    let out = bin()
        .args([
            "extremal",
            "converge",
            "--matrix",
            matrix.to_str().unwrap(),
            "--ms",
            "10,100",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "M,count,sumset_count,ratio,h_circ_lo,h_circ_hi"
    );
    assert!(lines.next().unwrap().starts_with("10,21,61,2.9047619048,"));
    assert!(lines.next().unwrap().starts_with("100,201,601,2.9900497512,"));
}

#[test]
fn invmin_reports_divisor_and_exact_restriction() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(&dir, "t.txt", "2 0\n0 3\n");
    let out = bin()
        .args([
            "invmin",
            "--matrix",
            matrix.to_str().unwrap(),
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["divisor"], "x-2");
    assert_eq!(v["restriction"], serde_json::json!([["2"]]));
    assert_eq!(v["basis"], serde_json::json!([["1", "0"]]));
}

#[test]
fn combine_clears_denominators() {
    let dir = tempfile::tempdir().unwrap();
    let vectors = write(&dir, "vs.txt", "2 2\n0 3\n");
    let out = bin()
        .args([
            "combine",
            "--vector",
            "1 1",
            "--vectors",
            vectors.to_str().unwrap(),
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["scale"], "2");
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0"]));
    // out-of-span input surfaces the dedicated error code
    let vectors = write(&dir, "flat.txt", "1 0 0\n0 1 0\n");
    let out = bin()
        .args([
            "combine",
            "--vector",
            "0 0 1",
            "--vectors",
            vectors.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert_eq!(v["error"], "not_in_span");
}

#[test]
fn verify_continuous_reports_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(&dir, "t.txt", "2\n");
    let out = bin()
        .args([
            "verify-continuous",
            "--matrix",
            matrix.to_str().unwrap(),
            "--cell",
            "0.1",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["hypothesis_ok"], true);
    assert!(v["note"].as_str().unwrap().contains("not a proof"));
}

#[test]
fn extremal_body_json_description() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write(&dir, "t.txt", "0 -1\n1 0\n");
    let out = bin()
        .args([
            "extremal",
            "body",
            "--matrix",
            matrix.to_str().unwrap(),
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["components"][0]["type"], "disk");
    assert!((v["measure_ratio"].as_f64().unwrap() - 4.0).abs() < 1e-9);
}
