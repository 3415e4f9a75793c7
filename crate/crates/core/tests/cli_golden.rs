mod common;

use std::io::Write as _;
use std::process::Command;

use common::*;
use hilbhodge::engine::hilb_hodge;
use hilbhodge::render::parse_json;
use hilbhodge::surface::preset;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hilbhodge(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hilbhodge"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = hilbhodge(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    r.stdout
}

#[test]
fn hopf_diamonds() {
    assert_eq!(diamond_rows(&ok(&["hilb", "--preset", "hopf", "-n", "2"])), hopf_hilb2_rows());
    assert_eq!(diamond_rows(&ok(&["hilb", "--preset", "hopf", "-n", "3"])), hopf_hilb3_rows());
}

#[test]
fn small_n() {
    assert_eq!(ok(&["hilb", "--preset", "k3", "-n", "0"]).trim(), "1");
    let surface = ok(&["hilb", "--preset", "hopf", "-n", "1"]);
    assert_eq!(surface, "    1\n  1   0\n0   0   0\n  0   1\n    1\n");
    assert_eq!(ok(&["nested", "--preset", "hopf", "-n", "0"]), surface);
}

#[test]
fn kodaira_secondary_is_hopf_transposed() {
    let hopf = hilb_hodge(&preset("hopf").unwrap().table, 3).unwrap();
    let ks = hilb_hodge(&preset("kodaira_secondary").unwrap().table, 3).unwrap();
    assert_eq!(ks, hopf.transpose());
}

#[test]
fn deform_k3() {
    let out = ok(&["deform", "--preset", "k3", "-n", "3"]);
    let row: Vec<&str> = out.lines().find(|l| l.starts_with("1\t")).unwrap().split('\t').collect();
    assert_eq!(row, ["1", "21"]);
    assert!(out.contains("(derived convention)"));
}

#[test]
fn chiy_methods_agree() {
    for name in ["k3", "torus", "enriques"] {
        let outs: Vec<String> = ["product", "exp", "hodge"]
            .iter()
            .map(|m| ok(&["chiy", "--preset", name, "-N", "5", "--method", m]))
            .collect();
        assert_eq!(outs[0], outs[1], "{name}");
        assert_eq!(outs[0], outs[2], "{name}");
    }
}

#[test]
fn json_round_trip() {
    let text = ok(&["hilb", "--preset", "k3", "-n", "2", "--format", "json"]);
    let (n, poly) = parse_json(&text).unwrap();
    assert_eq!(n, 2);
    assert_eq!(poly, hilb_hodge(&preset("k3").unwrap().table, 2).unwrap());
    assert_eq!(poly.get(1, 1).to_string(), "21");
}

#[test]
fn output_is_deterministic() {
    let args = ["hilb", "--preset", "enriques", "-N", "5"];
    let first = ok(&args);
    assert_eq!(ok(&args), first);
    let one = ok(&["--threads", "1", "nested", "--preset", "k3", "-n", "4"]);
    let four = ok(&["--threads", "4", "nested", "--preset", "k3", "-n", "4"]);
    assert_eq!(one, four);
}

#[test]
fn verify_presets() {
    let r = hilbhodge(&["verify", "--preset", "hopf", "-N", "6"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("PASS frolicher"), "{}", r.stdout);
    assert_eq!(hilbhodge(&["verify", "--preset", "torus", "-N", "5"]).code, 0);
}

#[test]
fn corrupted_input_fails_verification() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"name": "hopf-bad", "max_power": 4,
            "diamonds": [[[1,1,0],[0,0,0],[0,1,1]], [[1,1,0],[0,0,0],[0,1,1]], [[1,1,0],[0,0,0],[0,1,1]],
                         [[1,1,0],[0,0,0],[0,1,1]], [[1,1,0],[0,0,0],[0,1,1]]],
            "betti": [1, 1, 1, 1, 1]}}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let r = hilbhodge(&["verify", "--input", path, "-N", "4"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("FAIL frolicher"), "{}", r.stderr);
}

#[test]
fn exit_codes() {
    let r = hilbhodge(&["hilb", "--preset", "hopf", "-n", "99"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("L^65"), "{}", r.stderr);
    assert_eq!(hilbhodge(&["hilb", "-n", "2"]).code, 1);
    assert_eq!(hilbhodge(&["hilb", "--preset", "nope", "-n", "2"]).code, 1);
    assert_eq!(hilbhodge(&["hilb", "--input", "/nonexistent/x.json", "-n", "2"]).code, 1);
    assert_eq!(hilbhodge(&["frobnicate"]).code, 1);
}
