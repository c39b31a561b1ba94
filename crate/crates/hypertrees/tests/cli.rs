//! End-to-end command-line runs: generation into files, verification with
//! witnesses and replay, reports, and the documented exit codes
//! (0 pass, 1 failed check, 2 usage error, 3 resource cap).

use std::fs;
use std::path::Path;

use hypertrees::cli::run;

fn khg(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("khg".to_string()).chain(args.iter().map(|s| s.to_string()));
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn generate_then_verify_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.khg");
    let (code, _) = khg(&[
        "generate",
        "edge-minimal-grid",
        "--k",
        "3",
        "--m",
        "4",
        "-o",
        &path_str(&out),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("khg 3 16 48\n"));

    let (code, report) = khg(&[
        "verify",
        &path_str(&out),
        "--hypertree",
        "--edge-minimal",
        "--l-hypertree",
        "2",
    ]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("hypertree: PASS"));
    assert!(report.contains("l-hypertree(2): PASS"));
    assert!(report.contains("edge-minimal: PASS"));
}

#[test]
fn generate_then_audit_the_matching_tree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.khg");
    let (code, _) = khg(&[
        "generate",
        "edge-maximal-matching",
        "--n",
        "8",
        "-o",
        &path_str(&out),
    ]);
    assert_eq!(code, 0);

    let (code, report) = khg(&["bounds", &path_str(&out)]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("m=12"));
    assert!(report.contains("BOUND edge_maximal_lower 4/1 SAT"));
}

#[test]
fn verify_reports_disconnection_and_replays_the_witness() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.khg");
    fs::write(&broken, "khg 3 6 2\n1 2 3\n4 5 6\n").unwrap();

    let (code, report) = khg(&["verify", &path_str(&broken), "--hypertree"]);
    assert_eq!(code, 1);
    assert!(report.contains("hypertree: FAIL"));
    assert!(report.contains("witness disconnected-pair 1 4"));

    // the printed witness line replays as-is
    let witness_line = report
        .lines()
        .find(|l| l.starts_with("witness "))
        .unwrap()
        .to_string();
    let witness_file = dir.path().join("w.txt");
    fs::write(&witness_file, format!("{witness_line}\n")).unwrap();
    let (code, report) = khg(&[
        "verify",
        &path_str(&broken),
        "--replay",
        &path_str(&witness_file),
    ]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("PASS"));

    // the same witness is stale for a connected instance
    let connected = dir.path().join("ok.khg");
    fs::write(&connected, "khg 3 6 4\n1 2 3\n2 3 4\n3 4 5\n4 5 6\n").unwrap();
    let (code, report) = khg(&[
        "verify",
        &path_str(&connected),
        "--replay",
        &path_str(&witness_file),
    ]);
    assert_eq!(code, 1);
    assert!(report.contains("FAIL"));
}

#[test]
fn stars_ledger_on_a_generated_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.khg");
    khg(&[
        "generate",
        "edge-minimal-grid",
        "--k",
        "3",
        "--m",
        "4",
        "-o",
        &path_str(&out),
    ]);
    let (code, report) = khg(&["stars", &path_str(&out)]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("counting identity"));
    assert!(report.contains("[ok]"));

    // a long tight path is not a 2-hypertree
    let path_file = dir.path().join("path.khg");
    fs::write(&path_file, "khg 3 5 3\n1 2 3\n2 3 4\n3 4 5\n").unwrap();
    let (code, report) = khg(&["stars", &path_str(&path_file)]);
    assert_eq!(code, 1);
    assert!(report.contains("2-hypertree"));
}

#[test]
fn partition_builds_verifies_and_writes_the_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.khgpart");
    let (code, report) = khg(&["partition", "8", "3", "-o", &path_str(&out)]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("3 classes"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("khgpart 8 2 3\n"));
    hypertrees::partition::PartitionFamily::from_khgpart(&text).unwrap();

    let (code, report) = khg(&["partition", "6", "3"]);
    assert_eq!(code, 2);
    assert!(report.contains("power of two"));
}

#[test]
fn oracle_compare_random_corpus_agrees() {
    let (code, report) = khg(&["oracle-compare", "--random", "25", "--seed", "0"]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("seed 0"));
    assert!(report.contains("25 instances compared, 0 mismatches"));
}

#[test]
fn oracle_compare_accepts_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k4.khg");
    fs::write(&file, "khg 3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n").unwrap();
    let (code, report) = khg(&["oracle-compare", &path_str(&file)]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("semicycle agree (present)"));
}

#[test]
fn gluing_and_single_edge_generation() {
    let (code, text) = khg(&["generate", "gluing", "--steiner-n", "7"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("khg 3 7 7\n"));

    let (code, text) = khg(&["generate", "single-edge", "--k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(text, "khg 4 4 1\n1 2 3 4\n");
}

#[test]
fn generation_is_byte_identical_across_runs() {
    let args = ["generate", "four-uniform-doubling", "--m", "3"];
    let (code_a, a) = khg(&args);
    let (code_b, b) = khg(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(a, b);
    assert!(a.starts_with("khg 4 7 8\n"));
}

#[test]
fn usage_and_resource_cap_exit_codes() {
    let (code, _) = khg(&["generate", "no-such-family"]);
    assert_eq!(code, 2);

    let (code, _) = khg(&["verify", "/nonexistent/input.khg", "--hypertree"]);
    assert_eq!(code, 2);

    let (code, _) = khg(&["frobnicate"]);
    assert_eq!(code, 2);

    // grid at k=4 needs a triple factorization beyond the desk-scale cap
    let (code, report) = khg(&["generate", "edge-minimal-grid", "--k", "4", "--m", "15"]);
    assert_eq!(code, 3, "{report}");

    let (code, report) = khg(&["--help"]);
    assert_eq!(code, 0);
    assert!(report.contains("generate"));
}

#[test]
fn ordered_extension_families_from_the_command_line() {
    let (code, matching) = khg(&[
        "generate",
        "ordered-extension",
        "--design",
        "matching",
        "--n",
        "8",
    ]);
    assert_eq!(code, 0);
    let (code, direct) = khg(&["generate", "edge-maximal-matching", "--n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(matching, direct);

    let (code, text) = khg(&[
        "generate",
        "ordered-extension",
        "--design",
        "steiner-triples",
        "--n",
        "9",
    ]);
    assert_eq!(code, 0);
    assert!(text.starts_with("khg 4 9"));
}
