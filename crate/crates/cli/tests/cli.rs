use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn silting(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_silting")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

#[test]
fn borel_schur_dsl_for_r4_p2() {
    let o = silting(&["borel-schur", "--n", "2", "--r", "4", "--p", "2", "--emit", "dsl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("vertices: 0 1 2 3 4\n"));
    for arrow in ["arrow a0: 1 -> 0", "arrow a3: 4 -> 3", "arrow b0: 2 -> 0", "arrow b2: 4 -> 2", "arrow c0: 4 -> 0"] {
        assert!(text.contains(arrow), "{arrow} missing from\n{text}");
    }
    let mut rels: Vec<&str> = text.lines().filter(|l| l.starts_with("rel ")).collect();
    rels.sort();
    assert_eq!(
        rels,
        ["rel a1*a0", "rel a2*a1", "rel a2*b0 - b1*a0", "rel a3*a2", "rel a3*b1 - b2*a1", "rel b2*b0"]
    );
    let pres = silting_core::dsl::parse_presentation(&text).unwrap();
    let a = silting_core::algebra::build_based_algebra::<silting_core::Rational>(&pres).unwrap();
    assert_eq!(a.dim(), 15);
}

#[test]
fn enumerate_sign_writes_csv_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = silting(&["enumerate-sign", "--algebra", "bs:2,4,2", "--epsilon", "-,-,-,+,+", "--emit", "csv,dot", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(dir.path().join("bs-2-4-2_mmmpp.dot")).unwrap();
    assert_eq!(dot.matches("shape=circle").count(), 34);
    let csv = std::fs::read_to_string(dir.path().join("bs-2-4-2_mmmpp.csv")).unwrap();
    let ms = silting_core::emit::parse_csv(&csv).unwrap();
    assert_eq!(ms.len(), dot.matches("label=").count());
    assert!(ms.iter().all(|m| m.len() == 5));
}

#[test]
fn bipartite_dot_shapes() {
    let o = silting(&["enumerate-sign", "--algebra", "bipartite-a3", "--epsilon", "+,-,+,-", "--emit", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.matches("shape=circle").count(), 8);
    assert_eq!(dot.matches("shape=box").count(), 6);
}

#[test]
fn outputs_are_identical_across_thread_counts() {
    let run = |t: &str| {
        let o = silting(&["--threads", t, "enumerate-sign", "--algebra", "bs:2,5,3", "--epsilon", "-,-,-,+,+,+", "--emit", "json", "--complexes"]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let j: serde_json::Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(j["tau_tilting_count"], 157);
    assert!(j.get("millis").is_none());
}

#[test]
fn fixture_runner_exit_codes() {
    let dir = repo().join("fixtures/paper");
    let good = dir.join("square-full.json");
    let o = silting(&["verify-fixtures", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    // The one recorded count that is not reproduced.
    let bad = dir.join("bs-2-6-p5-mmmmppp.json");
    let o = silting(&["verify-fixtures", good.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("MISMATCH"));

    let o = silting(&["verify-fixtures", "--budget", "3", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = silting(&["enumerate", "--algebra", "square", "--budget", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn validation_errors_exit_1() {
    for args in [
        vec!["enumerate"],
        vec!["enumerate", "--algebra", "nonsense"],
        vec!["enumerate-sign", "--algebra", "square", "--epsilon", "+,+"],
        vec!["--scalar", "fp:4", "enumerate", "--algebra", "square"],
        vec!["enumerate", "--algebra", "square", "--emit", "json,csv"],
        vec!["enumerate", "--algebra", "square", "--emit", "pdf"],
    ] {
        let o = silting(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn dsl_file_and_prime_field() {
    let path = repo().join("fixtures/dsl/square.dsl");
    let o = silting(&["--scalar", "fp:7", "enumerate", "--dsl", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("46 nodes"));
}

#[test]
fn sign_table_totals_match_full_enumeration() {
    let o = silting(&["enumerate-sign", "--algebra", "square", "--epsilon", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 17);
    assert!(text.ends_with("total 46 15\n"));
}

#[test]
fn certify_and_report() {
    let o = silting(&["certify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);

    let o = silting(&["certify", "--algebra", "bs:2,5,2", "--target", "a5bi", "--kill", "a0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = silting(&["report", "--r", "5", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("infinite"));
}

#[test]
fn algebra_summary_and_aepsilon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = silting(&["algebra", "--algebra", "square", "--emit", "json,dsl", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("square.json")).unwrap()).unwrap();
    assert_eq!(j["dim"], 9);
    let text = std::fs::read_to_string(dir.path().join("square.dsl")).unwrap();
    assert!(silting_core::dsl::parse_presentation(&text).is_ok());

    let o = silting(&["aepsilon", "--algebra", "bs:2,4,2", "--epsilon", "-,-,-,+,+"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension:"));
}
