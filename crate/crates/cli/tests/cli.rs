use std::fs;
use std::process::{Command, Output};

use caterpillar_cli::record::{BoundsRecord, CharpolyRecord, SpectrumRecord, VerifyRecord};
use caterpillar_cli::render;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caterpillar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn with_json(args: &[&str]) -> (String, String) {
    let mut j = args.to_vec();
    j.extend(["--format", "json"]);
    (ok(args), ok(&j))
}

const TABLE: &str = "\
# published rows
(3,2,1,0,5,4)
2,0,3,4,7
3,5,0,0,9,10
5,0,5,0,5,0,5,0,5

3,9,10,0,5,0,4,2,0,7  # last
";

#[test]
fn spectrum_examples() {
    let out = ok(&["spectrum", "--q", "1,1"]);
    for v in ["0.0000  x1", "0.5858  x1", "2.0000  x1", "3.4142  x1"] {
        assert!(out.contains(v), "{out}");
    }
    assert!(ok(&["spectrum", "--q", "3"]).contains("1.0000  x2"));
    let (_, j) = with_json(&["spectrum", "--q", "4,9,0,1"]);
    let r: SpectrumRecord = serde_json::from_str(&j).unwrap();
    assert_eq!(r.laplacian.iter().map(|p| p.multiplicity).sum::<usize>(), 18);
    let ones = r.laplacian.iter().find(|p| render::fmt4(p.value) == "1.0000").unwrap();
    assert_eq!(ones.multiplicity, 11);
}

#[test]
fn charpoly_examples() {
    for (args, want) in [
        (["charpoly", "--q", "4,9", "--of", "C"], vec!["-59", "-11", "11", "-1"]),
        (["charpoly", "--q", "1", "--of", "C"], vec!["0", "-1"]),
        (["charpoly", "--q", "1,1", "--of", "L"], vec!["0", "-4", "10", "-6", "1"]),
    ] {
        let (_, j) = with_json(&args);
        let r: CharpolyRecord = serde_json::from_str(&j).unwrap();
        assert_eq!(r.coefficients, want);
    }
}

#[test]
fn bounds_examples() {
    let (text, j) = with_json(&["bounds", "--q", "4,9,0,1"]);
    let r: BoundsRecord = serde_json::from_str(&j).unwrap();
    assert_eq!(render::fmt4(r.mu), "0.1862");
    assert_eq!(render::fmt4(r.bounds.lb), "0.0942");
    assert_eq!(r.exact.trace_inv, "191/18");
    assert_eq!((r.exact.p_minus2.as_str(), r.exact.pprime_minus2.as_str()), ("36", "-382"));
    let i2 = &r.provenance.ub_trace_terms[1];
    assert_eq!((i2.i, render::fmt4(i2.value.unwrap())), (2, "0.2320".into()));
    assert!(text.contains("0.2320  = 45/194"));

    let (_, j) = with_json(&["bounds", "--q", "5,0,5,0,5,0,5,0,5"]);
    let r: BoundsRecord = serde_json::from_str(&j).unwrap();
    assert_eq!(render::fmt4(r.bounds.ub_cardano), "1.0000");

    let csv = ok(&["bounds", "--q", "2,0,3,4,7", "--format", "csv"]);
    assert_eq!(csv.lines().nth(1), Some("(2,0,3,4,7);0.0893;0.2536;0.1056;0.0514;"));
}

#[test]
fn json_schema_keys() {
    let j = ok(&["bounds", "--q", "3,2,1,0,5,4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    for key in ["q", "mu", "bounds", "exact", "warnings"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    for key in ["lb", "ub_trace", "ub_cardano"] {
        assert!(v["bounds"][key].is_number(), "{key}");
    }
    for key in ["trace_inv", "p_minus2", "pprime_minus2"] {
        assert!(v["exact"][key].is_string(), "{key}");
    }
}

#[test]
fn json_regenerates_text() {
    let (t, j) = with_json(&["bounds", "--q", "3,5,0,0,9,10"]);
    assert_eq!(render::bounds_text(&serde_json::from_str(&j).unwrap()), t);
    let (t, j) = with_json(&["spectrum", "--q", "4,9,0,1"]);
    assert_eq!(render::spectrum_text(&serde_json::from_str(&j).unwrap()), t);
    let (t, j) = with_json(&["charpoly", "--q", "2,0,3", "--of", "L"]);
    assert_eq!(render::charpoly_text(&serde_json::from_str(&j).unwrap()), t);
    let (t, j) = with_json(&["verify", "--random", "20", "--seed", "3"]);
    assert_eq!(render::verify_text(&serde_json::from_str(&j).unwrap()), t);
    assert_eq!(with_json(&["verify", "--random", "20", "--seed", "3"]).1, j);
}

#[test]
fn verify_examples() {
    let out = ok(&["verify", "--q", "4,9,0,1"]);
    assert!(out.ends_with("result: PASS\n") && !out.contains("FAIL"), "{out}");
    assert!(ok(&["verify", "--q", "0"]).ends_with("result: PASS\n"));
    let j = ok(&["verify", "--random", "200", "--kmax", "8", "--qmax", "6", "--seed", "7", "--format", "json"]);
    let r: VerifyRecord = serde_json::from_str(&j).unwrap();
    assert!(r.passed && r.specs == 200 && r.seed == Some(7));
}

#[test]
fn verify_reports_soft_divergence() {
    let out = ok(&["verify", "--q", "9,0,1"]);
    assert!(out.contains("NOTE published value for (9,0,1): p_minus2"), "{out}");
}

#[test]
fn hard_divergence_exits_2() {
    let o = run(&["verify", "--q", "9,5,5,4,2,0,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL published value for (9,5,5,4,2,0,3): lb_trace"));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["bounds", "--q", "1,x"][..],
        &["bounds", "--q", "-1,2"],
        &["bounds", "--q", "5"],
        &["verify"],
        &["nonsense"],
        &["table", "--input", "/nonexistent/file"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn table_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("rows.txt");
    fs::write(&input, TABLE).unwrap();
    let output = dir.path().join("out.csv");
    let o = run(&["table", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&output).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], render::CSV_HEADER);
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[1], "(3,2,1,0,5,4);0.0601;0.2788;0.0658;0.0372;");
    assert_eq!(lines[5], "(3,9,10,0,5,0,4,2,0,7);0.0173;0.1624;0.0201;0.0108;");
    assert!(lines[3].contains("ub_cardano differs from published 0.3087"));

    let j = ok(&["table", "--input", input.to_str().unwrap(), "--format", "json"]);
    let rows: Vec<BoundsRecord> = serde_json::from_str(&j).unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1].q, vec![2, 0, 3, 4, 7]);
    let text = ok(&["table", "--input", input.to_str().unwrap()]);
    assert_eq!(render::table_text(&rows), text);
}

#[test]
fn table_skips_bad_rows_and_flags_hard_divergence() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("rows.txt");
    fs::write(&input, "1,2\nnot,a,spec\n9,5,5,4,2,0,3\n").unwrap();
    let o = run(&["table", "--input", input.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("skipped"), "{err}");
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.txt");
    fs::write(&input, "# nothing\n").unwrap();
    assert_eq!(ok(&["table", "--input", input.to_str().unwrap(), "--format", "csv"]), format!("{}\n", render::CSV_HEADER));
    assert_eq!(ok(&["table", "--input", input.to_str().unwrap(), "--format", "json"]).trim(), "[]");
}
