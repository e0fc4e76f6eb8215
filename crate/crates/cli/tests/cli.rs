//! The `pcr` binary: outputs, exit codes and determinism.

use std::path::Path;
use std::process::{Command, Output};

use pcr_core::periods::planted_period_data;
use pcr_core::polyring::parse_rational_poly;
use pcr_core::Hypersurface;

fn pcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcr")).args(args).output().expect("run pcr")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

fn fermat() -> Hypersurface {
    Hypersurface::new(parse_rational_poly("x0^4+x1^4+x2^4+x3^4", None).unwrap()).unwrap()
}

fn write_planted(dir: &Path, rank: usize) -> String {
    let (data, _) = planted_period_data(&fermat(), rank, 11, 40).unwrap();
    let path = dir.join("periods.txt");
    data.write_file(&path).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn minkowski_four() {
    let o = pcr(&["--output", "machine", "minkowski", "4"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "M"), Some("5760"));
}

#[test]
fn jacobian_ring_middle_degree() {
    let o = pcr(&["--output", "machine", "jring", "--f", "x0^4+x1^4+x2^4+x3^4", "--degree", "4"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "dim"), Some("19"));
}

#[test]
fn singular_surface_is_refuted() {
    let o = pcr(&["jring", "--f", "x0^2*x1^2+x2^4+x3^4", "--check-smooth"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn synth_test_presets_pass() {
    for preset in ["fermat-line", "conic"] {
        let o = pcr(&["--output", "machine", "synth-test", "--preset", preset]);
        assert!(o.status.success(), "{preset}: {}", stdout(&o));
        assert_eq!(value(&stdout(&o), "result"), Some("PASS"));
    }
}

#[test]
fn line_verification_and_refutation() {
    let f = "x0^4+x1^4+x2^4+x3^4";
    let ok = pcr(&["verify", "line", "--f", f, "--field", "t^4+1", "--forms", "x0-t*x1;x2-t*x3"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = pcr(&["verify", "line", "--f", f, "--forms", "x0-x1;x2-x3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn minpoly_of_cube_root() {
    let v = "1.259921049894873164767210607278228350570251464701507980081975112155299676513959483729396562436255094";
    let o = pcr(&["--output", "machine", "--digits", "100", "minpoly", "--value", v, "--maxdeg", "4"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "coefficients"), Some("-2 0 0 1"));
}

#[test]
fn machine_output_is_deterministic() {
    let args = ["--output", "machine", "--seed", "5", "apolar-experiment", "--trials", "3", "--degree", "4"];
    let a = pcr(&args);
    let b = pcr(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(value(&stdout(&a), "dim_perp2[3]"), Some("3"));
}

#[test]
fn hodge_rank_from_period_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_planted(dir.path(), 3);
    let o = pcr(&["--output", "machine", "hodge", "--periods", &path]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(value(&out, "rank"), Some("3"));
    assert_eq!(value(&out, "picard_rank"), Some("4"));
    assert!(value(&out, "cycle[2]").is_some());
}

#[test]
fn ideal_from_period_file_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_planted(dir.path(), 2);
    let hodge = stdout(&pcr(&["--output", "machine", "hodge", "--periods", &path]));
    let cycle = value(&hodge, "cycle[0]").unwrap().to_string();
    let o = pcr(&["--output", "machine", "ideal", "--periods", &path, "--cycle", &cycle, "--degree", "1,2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(value(&stdout(&o), "dim[1]").is_some());
}

#[test]
fn malformed_period_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_planted(dir.path(), 1);
    let text = std::fs::read_to_string(&path).unwrap();
    let broken: Vec<String> =
        text.lines().map(|l| if l.starts_with("digits:") { "digits: many".to_string() } else { l.to_string() }).collect();
    std::fs::write(&path, broken.join("\n")).unwrap();
    let o = pcr(&["hodge", "--periods", &path]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(pcr(&["jring"]).status.code(), Some(1));
    assert_eq!(pcr(&["--help"]).status.code(), Some(0));
}

#[test]
fn classes_with_intersection_form() {
    let (mut data, _) = planted_period_data(&fermat(), 2, 17, 40).unwrap();
    // toy negative-definite form: minus the A_21 Cartan matrix
    let s = data.s;
    let mut g = vec![vec![num_bigint::BigInt::from(0); s]; s];
    for i in 0..s {
        g[i][i] = (-2).into();
        if i + 1 < s {
            g[i][i + 1] = 1.into();
            g[i + 1][i] = 1.into();
        }
    }
    data.intersection = Some(g);
    data.h_square = Some(4);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    data.write_file(&path).unwrap();
    let o = pcr(&["--output", "machine", "classes", "--periods", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(value(&out, "rank"), Some("2"));
    assert!(value(&out, "candidates").is_some());
}
