use std::path::Path;
use std::process::{Command, Output};

use efforge::polyhedra::ExtendedFormulation;
use efforge::Rational;
use tempfile::TempDir;

fn efforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efforge"))
        .args(args)
        .env_remove("EFFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn build(dir: &TempDir, name: &str, kind: &str, n: usize, ell: Option<usize>) -> String {
    let out = path(dir, name);
    let n = n.to_string();
    let ell = ell.map(|e| e.to_string());
    let mut args = vec!["build", "--kind", kind, "--n", &n, "--out", &out];
    if let Some(e) = &ell {
        args.extend(["--ell", e]);
    }
    let o = efforge(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn build_reports_sizes() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "st4.json");
    let o = efforge(&["build", "--kind", "spanning-tree", "--n", "4", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("size: 30"), "{text}");
    let ef = ExtendedFormulation::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(ef.size(), 30);
    assert_eq!(ef.equations.len(), 25);

    let o = efforge(&["build", "--kind", "matching", "--n", "6", "--ell", "2", "--out", &path(&dir, "m.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hash maps: 5"));

    let o = efforge(&["build", "--kind", "cycle", "--n", "5", "--ell", "3", "--out", &path(&dir, "c.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size: 64"));
}

#[test]
fn verify_passes_on_built_formulation() {
    let dir = TempDir::new().unwrap();
    let f = build(&dir, "st5.json", "spanning-tree", 5, None);
    let o = efforge(&["verify", "--formulation", &f, "--kind", "spanning-tree", "--n", "5", "--objectives", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("vertex 125: pass"));
    assert!(text.contains("objective 50: pass"));
    assert!(text.trim_end().ends_with("pass"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_vertices_only() {
    let dir = TempDir::new().unwrap();
    let f = build(&dir, "c.json", "cycle", 4, Some(3));
    let o = efforge(&["verify", "--formulation", &f, "--kind", "cycle", "--n", "4", "--ell", "3", "--objectives", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("summary: 4 vertices, 0 objectives, pass"), "{text}");
}

/// Drops the odd-set rows for {1,2,3} and {4,5,6} from the (3,6) matching
/// formulation; both rows have the same coefficients on the edge variables.
fn corrupt_matching(file: &str) -> usize {
    let mut ef = ExtendedFormulation::from_json(&std::fs::read_to_string(file).unwrap()).unwrap();
    let ctx = efforge::graph::CompleteGraphContext::new(6).unwrap();
    let cut: Vec<Rational> = (0..ctx.edge_count())
        .map(|e| {
            let (v, w) = ctx.pair(e).unwrap();
            if (v <= 3) != (w <= 3) {
                Rational::from_int(-1)
            } else {
                Rational::zero()
            }
        })
        .collect();
    let before = ef.inequalities.len();
    ef.inequalities.retain(|r| r.coeffs[..cut.len()] != cut[..]);
    let removed = before - ef.inequalities.len();
    std::fs::write(file, ef.to_json().unwrap()).unwrap();
    removed
}

#[test]
fn verify_detects_missing_inequalities() {
    let dir = TempDir::new().unwrap();
    let f = build(&dir, "m36.json", "matching", 6, Some(3));
    assert_eq!(corrupt_matching(&f), 2);
    let o = efforge(&["verify", "--formulation", &f, "--kind", "matching", "--n", "6", "--ell", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("objective") && l.contains("FAIL")).collect();
    assert!(fails.iter().any(|l| l.contains("formulation 3/2, oracle 1")), "{text}");
    assert_eq!(fails.len(), 2);
    assert!(fails.iter().all(|l| l.contains("c = [")));
    assert!(text.trim_end().ends_with("FAIL"));
}

#[test]
fn verify_rejects_dimension_mismatch() {
    let dir = TempDir::new().unwrap();
    let f = build(&dir, "st4.json", "spanning-tree", 4, None);
    let o = efforge(&["verify", "--formulation", &f, "--kind", "spanning-tree", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certificate_k1() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "cert.json");
    let o = efforge(&["certificate", "--k", "1", "--n", "6", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("λ_1 = 1/3, λ_3 = -1/6"), "{text}");
    assert!(text.contains("verdict: true"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["verdict"], serde_json::Value::Bool(true));
}

#[test]
fn certificate_k2_and_bad_n() {
    let dir = TempDir::new().unwrap();
    let o = efforge(&["certificate", "--k", "2", "--n", "10", "--out", &path(&dir, "c2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: true"));
    let o = efforge(&["certificate", "--k", "1", "--n", "5", "--out", &path(&dir, "bad.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn export_lp_segment() {
    let dir = TempDir::new().unwrap();
    let mut ef = ExtendedFormulation::with_leading_projection(1, 1);
    ef.inequalities.push(efforge::lp::Row::new(vec![Rational::one()], Rational::one()));
    ef.add_nonnegativity();
    let f = path(&dir, "seg.json");
    std::fs::write(&f, ef.to_json().unwrap()).unwrap();
    let c = path(&dir, "c.json");
    std::fs::write(&c, "[1]").unwrap();
    let out = path(&dir, "seg.lp");
    let o = efforge(&["export-lp", "--formulation", &f, "--objective", &c, "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "max: +1 y1\nc1: +1 y1 <= 1\nc2: -1 y1 <= 0\n");
}

#[test]
fn export_lp_spanning_tree() {
    let dir = TempDir::new().unwrap();
    let f = build(&dir, "st4.json", "spanning-tree", 4, None);
    let before = std::fs::read(&f).unwrap();
    let c = path(&dir, "c.json");
    std::fs::write(&c, r#"[1, 2, "1/2", -1, 0, 3]"#).unwrap();
    let out = path(&dir, "st4.lp");
    let o = efforge(&["export-lp", "--formulation", &f, "--objective", &c, "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with('c')).count(), 30);
    assert_eq!(text.lines().filter(|l| l.starts_with('e')).count(), 25);
    assert!(text.lines().any(|l| l.starts_with("max:")));
    assert_eq!(std::fs::read(&f).unwrap(), before);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(efforge(&[]).status.code(), Some(2));
    assert_eq!(efforge(&["build", "--kind", "tree", "--n", "4", "--out", "x"]).status.code(), Some(2));
    assert_eq!(efforge(&["build", "--kind", "matching", "--n", "4", "--out", "/nonexistent/x"]).status.code(), Some(2));
    assert_eq!(efforge(&["verify", "--formulation", "/nonexistent.json", "--kind", "cycle", "--n", "4"]).status.code(), Some(2));
    assert_eq!(efforge(&["--help"]).status.code(), Some(0));
}

fn build_with_env(dir: &Path, name: &str, seed: Option<&str>) -> (Output, Vec<u8>) {
    let out = dir.join(name);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_efforge"));
    cmd.args(["build", "--kind", "matching", "--n", "8", "--ell", "2", "--out"]).arg(&out);
    match seed {
        Some(s) => cmd.env("EFFORGE_SEED", s),
        None => cmd.env_remove("EFFORGE_SEED"),
    };
    let o = cmd.output().unwrap();
    let bytes = std::fs::read(&out).unwrap_or_default();
    (o, bytes)
}

#[test]
fn seed_environment_is_respected_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let (_, default_a) = build_with_env(dir.path(), "a.json", None);
    let (_, default_b) = build_with_env(dir.path(), "b.json", None);
    assert_eq!(default_a, default_b);
    let (o, seeded_a) = build_with_env(dir.path(), "c.json", Some("7"));
    assert_eq!(o.status.code(), Some(0));
    let (_, seeded_b) = build_with_env(dir.path(), "d.json", Some("7"));
    assert_eq!(seeded_a, seeded_b);
    assert_ne!(default_a, seeded_a);
    let (o, _) = build_with_env(dir.path(), "e.json", Some("seven"));
    assert_eq!(o.status.code(), Some(2));
}
