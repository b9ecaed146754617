use std::io::Write;
use std::process::{Command, Output};

use bispec::extremal::{ExtremalVerdict, OracleResult, TableRow, TwinCheck};
use bispec::report::{extremal_text, from_json, table_text, verify_text, BoundReport, RhoReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bispec"))
        .args(args)
        .env_remove("SPECTRAL_MAX_E")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn extremal_text_output() {
    let out = stdout(&["extremal", "--e", "26"]);
    assert!(out.contains("case:      iv"));
    assert!(out.contains("winner:    K-(3,9) sqrt(13+3*sqrt(17))"));
    assert!(out.contains("rho:       5.036796291"));

    let twin = stdout(&["extremal", "--e", "6"]);
    assert!(twin.contains("twin-prime: extremal graph unresolved by the case analysis; run oracle"));
}

#[test]
fn table_csv_is_stable() {
    let a = stdout(&["--format", "csv", "table", "--max-e", "100"]);
    let b = stdout(&["table", "--max-e", "100", "--format", "csv"]);
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "e,case,candidate_minus,candidate_plus,winner,rho,bound,margin");
    assert_eq!(lines.len(), 10);
    let signs: String = lines[1..].iter().map(|l| l.split(',').nth(6).unwrap()).collect();
    assert_eq!(signs, "-+--++--+");
}

#[test]
fn json_round_trips_to_text() {
    for e in ["6", "9", "26", "27"] {
        let json = stdout(&["--format", "json", "extremal", "--e", e]);
        let v: ExtremalVerdict = from_json(&json).unwrap();
        assert_eq!(extremal_text(&v), stdout(&["extremal", "--e", e]));
    }
    let json = stdout(&["--format", "json", "table"]);
    let rows: Vec<TableRow> = from_json(&json).unwrap();
    assert_eq!(table_text(&rows), stdout(&["table"]));

    let json = stdout(&["--format", "json", "verify-twin", "--from", "4", "--to", "14"]);
    let rows: Vec<TwinCheck> = from_json(&json).unwrap();
    assert_eq!(verify_text(&rows), stdout(&["verify-twin", "--from", "4", "--to", "14"]));

    let json = stdout(&["--format", "json", "rho", "--family", "kplus", "--p", "5", "--q", "5", "--exact"]);
    let r: RhoReport = from_json(&json).unwrap();
    assert_eq!(r.text(), stdout(&["rho", "--family", "kplus", "--p", "5", "--q", "5", "--exact"]));
    assert_eq!(r.exact.unwrap().to_string(), "sqrt(13+sqrt(149))");

    let json = stdout(&["--format", "json", "bound", "--partition", "4,2,2,1,1", "--s", "2"]);
    let b: BoundReport = from_json(&json).unwrap();
    assert_eq!(b.text(), stdout(&["bound", "--partition", "4,2,2,1,1", "--s", "2"]));
    assert_eq!((b.bound.x, b.bound.y), (10, 12));

    let json = stdout(&["--format", "json", "oracle", "--e", "7", "--exhaustive"]);
    let o: OracleResult = from_json(&json).unwrap();
    assert_eq!(o.e, 7);
}

#[test]
fn rho_sources() {
    let out = stdout(&["rho", "--partition", "2,1", "--exact"]);
    assert!(out.contains("rho:        1.618033989"));
    assert!(out.contains("exact:      sqrt((3+sqrt(5))/2)"));

    let out = stdout(&["rho", "--family", "ksube", "--p", "3", "--q", "4", "--e", "10", "--exact"]);
    assert!(out.contains("edges:      10"));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "2 2\n10\n01\n").unwrap();
    let path = f.path().to_str().unwrap();
    let out = stdout(&["rho", "--file", path]);
    assert!(out.contains("rho:        1.000000000"));

    let csv = stdout(&["--format", "csv", "rho", "--file", path]);
    assert!(csv.starts_with("source,p,q,edges,rho,residual,iterations,exact\n"));
}

#[test]
fn isolated_vertices_are_reported() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "2 3\n110\n000\n").unwrap();
    let out = stdout(&["rho", "--file", f.path().to_str().unwrap()]);
    assert!(out.contains("warning:    graph has isolated vertices"));
    assert!(out.contains("rho:        1.414213562"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bound", "--partition", "4,2,2,1,1", "--s", "3"]), 2);
    assert_eq!(code(&["rho", "--partition", "1,2"]), 2);
    assert_eq!(code(&["rho", "--family", "ksube", "--p", "3", "--q", "4"]), 2);
    assert_eq!(code(&["rho", "--file", "/nonexistent/graph.txt"]), 2);
    assert_eq!(code(&["extremal", "--e", "1"]), 2);
    assert_eq!(code(&["oracle", "--e", "61"]), 3);
    assert_eq!(code(&["oracle", "--e", "9", "--exhaustive"]), 3);
    assert_eq!(code(&["oracle", "--e", "9", "--exhaustive", "--max-e-cap", "9"]), 0);
    assert_eq!(code(&["verify-twin", "--from", "10", "--to", "4"]), 2);

    let out = Command::new(env!("CARGO_BIN_EXE_bispec"))
        .args(["oracle", "--e", "9", "--exhaustive"])
        .env("SPECTRAL_MAX_E", "9")
        .output()
        .unwrap();
    assert!(out.status.success());

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "2 2\n11\n1\n").unwrap();
    assert_eq!(code(&["rho", "--file", f.path().to_str().unwrap()]), 2);
}

#[test]
fn oracle_jobs_do_not_change_the_answer() {
    let a = stdout(&["--format", "json", "oracle", "--e", "24", "--jobs", "1"]);
    let b = stdout(&["--format", "json", "oracle", "--e", "24", "--jobs", "4"]);
    assert_eq!(a, b);
}
