use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use srtool::sweep::{run_sweep, SweepResult};
use srtool::{ComplexDocument, SweepManifest};
use tempfile::TempDir;

const C4: &str = r#"schema_version = "1"
name = "C4"
ground_set = ["1", "2", "3", "4"]
facets = [
  ["1", "2"],
  ["1", "4"],
  ["2", "3"],
  ["3", "4"],
]
"#;

const EDGE: &str = "schema_version = \"1\"\nground_set = [\"b\", \"a\"]\nfacets = [[\"b\", \"a\"]]\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn srtool(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_srtool"));
    cmd.args(args).env_remove("SRTOOL_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn canonical_documents_round_trip() {
    let doc = ComplexDocument::parse(C4).unwrap();
    assert_eq!(doc.to_canonical_string(), C4);
    let scrambled = "schema_version = \"1\"\nname = \"C4\"\nground_set = [\"4\", \"3\", \"2\", \"1\"]\n\
                     facets = [[\"4\", \"3\"], [\"2\", \"1\"], [\"3\", \"2\"], [\"1\", \"4\"]]\n";
    let doc = ComplexDocument::parse(scrambled).unwrap();
    assert_eq!(doc.to_canonical_string(), C4);
    let complex = doc.to_complex().unwrap();
    assert_eq!(ComplexDocument::from_complex(&complex, Some("C4".into())).to_canonical_string(), C4);
}

#[test]
fn subdivision_documents_round_trip() {
    let c = ComplexDocument::parse(C4).unwrap().to_complex().unwrap();
    for x in [c.barycentric_subdivision(), c.barycentric_subdivision().barycentric_subdivision()] {
        let text = ComplexDocument::from_complex(&x, None).to_canonical_string();
        let back = ComplexDocument::parse(&text).unwrap();
        assert_eq!(back.to_canonical_string(), text);
        let y = back.to_complex().unwrap();
        assert_eq!((y.n(), y.f_vector()), (x.n(), x.f_vector()));
    }
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(ComplexDocument::parse("schema_version = \"2\"\nground_set = []\nfacets = []").is_err());
    assert!(ComplexDocument::parse("schema_version = \"1\"\nground_set = [\"1\"]\nfacets = [[\"2\"]]")
        .unwrap()
        .to_complex()
        .is_err());
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.toml", "schema_version = \"1\"\nfacets = 3\n");
    let o = srtool(&["invariants", arg(&bad)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn betti_on_c4() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.toml", C4);
    let o = srtool(&["betti", arg(&f)], &[]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip_while(|l| *l != "# i j beta").skip(1).collect();
    assert_eq!(rows, ["0 0 1", "1 2 2", "2 4 1"]);
    assert!(text.contains("total: 1 2 1"));

    let o = srtool(&["betti", arg(&f), "--json", "--field", "GF(2)"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"], serde_json::json!([[0, 0, 1], [1, 2, 2], [2, 4, 1]]));
    assert_eq!(v["field"], "GF(2)");
}

#[test]
fn budget_guard_and_override() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.toml", C4);
    let o = srtool(&["betti", arg(&f)], &[("SRTOOL_BUDGET", "2^3")]);
    assert_eq!(o.status.code(), Some(3));
    let o = srtool(&["betti", arg(&f)], &[("SRTOOL_BUDGET", "16")]);
    assert!(o.status.success());
}

#[test]
fn edge_conjecture_with_subdivision() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "edge.toml", EDGE);
    let o = srtool(&["conjecture", arg(&f), "--subdivide", "--json"], &[]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["subdivided"], true);
    assert_eq!((v["multiplicity"].as_u64(), v["height"].as_u64()), (Some(2), Some(1)));
    assert_eq!((v["upper_product"].as_str(), v["lower_product"].as_str()), (Some("2"), Some("2")));
    for key in ["upper_holds", "equality_upper", "lower_holds", "equality_lower", "is_pure"] {
        assert_eq!(v[key], true, "{key}");
    }
}

#[test]
fn sd_command_writes_a_document() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "edge.toml", EDGE);
    let out = dir.path().join("sd.toml");
    let o = srtool(&["sd", arg(&f), "--out", arg(&out)], &[]);
    assert!(o.status.success() && o.stdout.is_empty());
    let sd = ComplexDocument::read(&out).unwrap();
    assert_eq!(sd.ground_set, ["{a,b}", "{a}", "{b}"]);
    assert_eq!(sd.facets.len(), 2);
}

#[test]
fn invariants_text() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.toml", C4);
    let o = srtool(&["invariants", arg(&f)], &[]);
    let text = stdout(&o);
    for line in ["depth: 2", "reg: 2", "multiplicity: 4", "cohen_macaulay: true", "golod_criterion: false"] {
        assert!(text.lines().any(|l| l == line), "{line} in\n{text}");
    }
}

#[test]
fn sweep_on_three_vertices_passes() {
    let m = SweepManifest::parse("max_vertices = 3").unwrap();
    let r = run_sweep(&m).unwrap();
    assert!(r.passed, "{}", r.summary_text());
    assert_eq!(r.complexes_by_size.values().copied().collect::<Vec<_>>(), [1, 2, 9]);
    assert_eq!(r.reports.len(), 12 * 2);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn sweep_binary_is_deterministic_across_job_counts() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.toml", "max_vertices = 4\nmax_facets = 3\nfields = [\"Q\"]\n");
    let one = srtool(&["sweep", arg(&m), "--json", "--jobs", "1"], &[]);
    let two = srtool(&["sweep", arg(&m), "--json", "--jobs", "3"], &[]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert!(v["skipped"].as_u64().unwrap() > 0);
}

#[test]
fn sweep_budget_failures_carry_the_document() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.toml", "max_vertices = 3\nbudget = \"2^3\"\nchecks = [\"theorem\"]\n");
    let o = srtool(&["sweep", arg(&m), "--json"], &[]);
    assert_eq!(o.status.code(), Some(3));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["passed"], false);
    let failures = r["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    for f in failures {
        assert_eq!(f["check"], "budget");
        let doc = ComplexDocument::parse(f["document"].as_str().unwrap()).unwrap();
        assert!(doc.to_complex().is_ok());
    }
}

#[test]
fn check_failures_take_precedence_in_the_exit_code() {
    let m = SweepManifest::parse("max_vertices = 1").unwrap();
    let mut r: SweepResult = run_sweep(&m).unwrap();
    r.failures.push(srtool::sweep::Failure {
        check: "theorem".into(),
        field: None,
        message: "injected".into(),
        document: String::new(),
    });
    r.budget_exceeded = 1;
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn shipped_data_files_are_canonical_and_valid() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut seen = 0;
    for entry in std::fs::read_dir(&data).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if name.starts_with("sweep") {
            SweepManifest::read(&path).unwrap();
        } else {
            let text = std::fs::read_to_string(&path).unwrap();
            let doc = ComplexDocument::parse(&text).unwrap();
            assert_eq!(doc.to_canonical_string(), text, "{name}");
            doc.to_complex().unwrap();
        }
        seen += 1;
    }
    assert!(seen >= 6);
}
