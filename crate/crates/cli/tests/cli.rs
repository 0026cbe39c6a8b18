use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geospanner_core::instance::{InstanceFile, SpannerFile};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

fn geospanner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geospanner"))
        .args(args)
        .env_remove("GEOSPANNER_SEED")
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn gen_is_byte_identical_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = geospanner(&["gen", "--n", "40", "--seed", "7", "--weight-dist", "uniform01", "--out", path_str(p)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    assert_eq!(bytes, std::fs::read(fixture("simple40.json")).unwrap());
}

#[test]
fn seed_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_geospanner"))
        .args(["gen", "--n", "20", "--holes", "1", "--polygon-vertices", "12", "--weight-dist", "uniform01"])
        .env("GEOSPANNER_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let generated = InstanceFile::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let stored = InstanceFile::from_json(&std::fs::read_to_string(fixture("domain20.json")).unwrap()).unwrap();
    assert_eq!(generated, stored);
}

#[test]
fn build_matches_the_locked_spanner() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["simple40", "domain20"] {
        let out_path = dir.path().join(format!("{name}.spanner.json"));
        let input = fixture(&format!("{name}.json"));
        let out =
            geospanner(&["build", "--input", path_str(&input), "--k", "1", "--eps", "1", "--out", path_str(&out_path)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let summary = stdout_json(&out);
        let built = SpannerFile::from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
        let locked =
            SpannerFile::from_json(&std::fs::read_to_string(fixture(&format!("{name}.spanner.json"))).unwrap())
                .unwrap();
        assert_eq!(built.edges, locked.edges, "{name}");
        assert_eq!(built.provenance.instance_hash, locked.provenance.instance_hash);
        assert_eq!(summary["edges"], built.edges.len());
    }
}

#[test]
fn sequential_build_matches_parallel() {
    let input = fixture("domain20.json");
    let par = geospanner(&["build", "--input", path_str(&input)]);
    let seq = geospanner(&["--sequential", "build", "--input", path_str(&input)]);
    assert_eq!(par.status.code(), Some(0));
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn domain_mode_on_a_simple_instance_equals_simple_mode() {
    let input = fixture("simple40.json");
    let simple = geospanner(&["build", "--input", path_str(&input), "--mode", "simple"]);
    let domain = geospanner(&["build", "--input", path_str(&input), "--mode", "domain"]);
    let edges = |o: &Output| SpannerFile::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap().edges;
    assert_eq!(edges(&simple), edges(&domain));
}

#[test]
fn simple_mode_rejects_holes() {
    let out = geospanner(&["build", "--input", path_str(&fixture("domain20.json")), "--mode", "simple"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = geospanner(&[
        "verify",
        "--instance",
        path_str(&fixture("simple40.json")),
        "--spanner",
        path_str(&fixture("simple40.spanner.json")),
        "--exhaustive",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let report = stdout_json(&ok);
    assert_eq!(report["pass"], true);
    assert!(report["report"]["max_stretch"].as_f64().unwrap() <= 10f64.sqrt() + 1.0);

    let domain = geospanner(&[
        "verify",
        "--instance",
        path_str(&fixture("domain20.json")),
        "--spanner",
        path_str(&fixture("domain20.spanner.json")),
    ]);
    assert_eq!(domain.status.code(), Some(0));
    assert_eq!(stdout_json(&domain)["target"], 7.0);

    // An impossible target fails with a witness.
    let strict = geospanner(&[
        "verify",
        "--instance",
        path_str(&fixture("simple40.json")),
        "--spanner",
        path_str(&fixture("simple40.spanner.json")),
        "--target",
        "1.0000001",
    ]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(!stdout_json(&strict)["report"]["witness"].is_null());
}

#[test]
fn pair_without_its_edge_fails() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = SpannerFile::from_json(&std::fs::read_to_string(fixture("pair.spanner.json")).unwrap()).unwrap();
    s.edges.clear();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, s.to_json()).unwrap();
    let out = geospanner(&["verify", "--instance", path_str(&fixture("pair.json")), "--spanner", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["report"]["unreachable"], 1);
    assert_eq!(report["report"]["unreachable_witness"]["p"], 0);
    assert_eq!(report["report"]["unreachable_witness"]["q"], 1);
}

#[test]
fn pair_stretch_is_exactly_one() {
    let out = geospanner(&[
        "verify",
        "--instance",
        path_str(&fixture("pair.json")),
        "--spanner",
        path_str(&fixture("pair.spanner.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["report"]["max_stretch"], 1.0);
    let s = SpannerFile::from_json(&std::fs::read_to_string(fixture("pair.spanner.json")).unwrap()).unwrap();
    // Visible pair: the stored length is the straight-line distance.
    assert_eq!(s.edges, vec![(0, 1, (3.0f64 * 3.0 + 2.0 * 2.0).sqrt())]);
}

#[test]
fn zero_epsilon_is_a_usage_error() {
    let out = geospanner(&["build", "--input", path_str(&fixture("simple40.json")), "--eps", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn spanner_for_another_instance_is_rejected() {
    let out = geospanner(&[
        "verify",
        "--instance",
        path_str(&fixture("domain20.json")),
        "--spanner",
        path_str(&fixture("simple40.spanner.json")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hash mismatch"));
}

#[test]
fn oversized_exhaustive_check_suggests_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("big.json");
    let sp = dir.path().join("big.spanner.json");
    assert_eq!(geospanner(&["gen", "--n", "200", "--seed", "3", "--out", path_str(&inst)]).status.code(), Some(0));
    let built = geospanner(&["build", "--input", path_str(&inst), "--k", "3", "--out", path_str(&sp)]);
    assert_eq!(built.status.code(), Some(0));
    let out = geospanner(&["verify", "--instance", path_str(&inst), "--spanner", path_str(&sp), "--exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--samples"));

    let sampled = geospanner(&["verify", "--instance", path_str(&inst), "--spanner", path_str(&sp), "--samples", "20"]);
    assert_eq!(sampled.status.code(), Some(0), "{}", String::from_utf8_lossy(&sampled.stdout));
    let report = stdout_json(&sampled);
    assert_eq!(report["report"]["exhaustive"], false);
    assert_eq!(report["report"]["fault_sets_checked"], 21);
}

#[test]
fn render_draws_holes_edges_and_faults() {
    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("d.svg");
    let out = geospanner(&[
        "render",
        "--instance",
        path_str(&fixture("domain20.json")),
        "--spanner",
        path_str(&fixture("domain20.spanner.json")),
        "--faults",
        "0,3",
        "--out",
        path_str(&svg_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("class=\"hole\"").count(), 1);
    assert_eq!(svg.matches("class=\"edge\"").count(), 173);
    assert_eq!(svg.matches("class=\"fault\"").count(), 2);

    let bad = geospanner(&[
        "render",
        "--instance",
        path_str(&fixture("domain20.json")),
        "--faults",
        "20",
        "--out",
        path_str(&svg_path),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn stats_reports_one_row_per_size() {
    let out = geospanner(&["stats", "--seed", "2", "--n-list", "16,32", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["n"], 32);
    assert!(v["ratio_spread"].as_f64().unwrap() >= 1.0);
}

#[test]
fn missing_input_is_a_usage_error() {
    let out = geospanner(&["build", "--input", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
    let unknown = geospanner(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
}
