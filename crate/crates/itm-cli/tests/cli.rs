//! End to end checks of the command line binary: output formats, exit
//! codes and byte identical reruns of the file producing subcommands.

use std::path::Path;
use std::process::{Command, Output};

fn itm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = itm(args);
    assert!(out.status.success(), "itm {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classify_prints_the_worked_example_outcome() {
    let s = stdout_of(&["classify", "--alpha", "1/12", "--beta", "1/6", "--c", "1/4"]);
    assert_eq!(s, "alpha=1/12 beta=1/6 c=1/4 outcome=tie steps=5\n");
}

#[test]
fn classify_cross_check_is_consistent() {
    let s = stdout_of(&[
        "classify", "--alpha", "1/12", "--beta", "1/6", "--c", "1/4", "--cross-check",
    ]);
    assert!(s.contains("cross check: consistent"), "{s}");
}

#[test]
fn classify_rejects_out_of_range_parameters() {
    let out = itm(&["classify", "--alpha", "3/2", "--beta", "1/6", "--c", "1/4"]);
    assert!(!out.status.success());
}

#[test]
fn orbit_prints_requested_number_of_points() {
    let s = stdout_of(&[
        "orbit", "--alpha", "1/12", "--beta", "1/6", "--c", "1/4", "--point", "0", "--steps", "5",
    ]);
    assert_eq!(s.lines().count(), 6); // includes the starting point
    assert!(s.starts_with("0 0\n1 1/12\n"));
}

#[test]
fn induce_r_prints_normal_form_and_path() {
    let s = stdout_of(&["induce", "--alpha", "1/12", "--beta", "1/6", "--c", "1/4"]);
    assert!(s.starts_with("normal form: "), "{s}");
    assert!(s.contains("split: "), "{s}");
    assert!(s.contains("end="), "{s}");
}

#[test]
fn induce_z_prints_the_winner() {
    let s = stdout_of(&[
        "induce", "--mode", "z", "--alpha", "1/12", "--beta", "1/6", "--c", "1/4",
    ]);
    assert!(s.contains("winner="), "{s}");
}

#[test]
fn accel_check_reports_the_burst_length() {
    let s = stdout_of(&[
        "accel-check", "--alpha", "1/12", "--beta", "1/6", "--c", "1/4",
    ]);
    // the second comparison step only beats the gap, which trimming already
    // accounts for, so the accelerated state is reached after one step
    assert_eq!(s, "steps=1 tie=false flipped_match=false\n");
}

#[test]
fn verify_passes_and_graph_dot_is_stable() {
    let s = stdout_of(&["verify"]);
    assert!(s.ends_with("verdict: PASS\n"), "{s}");

    let dot1 = stdout_of(&["graph", "--dot"]);
    let dot2 = stdout_of(&["graph", "--dot"]);
    assert_eq!(dot1, dot2);
    assert!(dot1.starts_with("digraph"), "{dot1}");
    assert!(dot1.contains("ADBCD | CDBD_A"));
}

#[test]
fn graph_summary_shows_the_frozen_counts() {
    let s = stdout_of(&["graph"]);
    assert_eq!(s.lines().filter(|l| l.starts_with("vertex ")).count(), 192);
    assert_eq!(s.lines().filter(|l| l.starts_with("edge ")).count(), 360);
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn sweep_output_is_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        stdout_of(&[
            "sweep", "--samples", "200", "--depth", "60", "--seed", "7",
            "--out", out.to_str().unwrap(),
        ]);
    }
    assert_eq!(read(&a), read(&b));
    let text = String::from_utf8(read(&a)).unwrap();
    assert!(text.starts_with("# itm sweep v1\n"), "{text}");
    assert!(text.contains("# seed=7 samples=200 depth=60 precision=53"), "{text}");
    assert!(text.contains("index,alpha,beta,c,outcome,steps"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("# checkpoint")).count(), 3);
    assert_eq!(text.lines().filter(|l| !l.starts_with(['#', 'i'])).count(), 200);
}

#[test]
fn boxdim_output_is_deterministic_and_has_a_slope() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        stdout_of(&[
            "boxdim", "--k-min", "2", "--k-max", "3", "--depth", "8",
            "--out", out.to_str().unwrap(),
        ]);
    }
    assert_eq!(read(&a), read(&b));
    let text = String::from_utf8(read(&a)).unwrap();
    assert!(text.starts_with("# itm boxdim v1\n"), "{text}");
    assert!(text.contains("k,boxes_total,boxes_surviving"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("# slope ")), "{text}");
}

#[test]
fn render_writes_a_deterministic_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    for out in [&a, &b] {
        stdout_of(&[
            "render", "--c", "1/4", "--resolution", "16", "--depth", "30",
            "--out", out.to_str().unwrap(),
        ]);
    }
    let bytes = read(&a);
    assert_eq!(bytes, read(&b));
    assert!(bytes.starts_with(b"P5\n16 16\n255\n"));
    assert_eq!(bytes.len(), "P5\n16 16\n255\n".len() + 16 * 16);
}
