use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummerlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "machine"]);
    let o = run(&full);
    (
        serde_json::from_str(&stdout(&o)).expect("machine output is JSON"),
        o.status.code().unwrap(),
    )
}

#[test]
fn invariants_text_golden() {
    let o = run(&["invariants", "--builtin", "U"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "lattice: U\ndim: 2\nsignature:\n  positive: 1\n  negative: 1\ndisc_class: -1\nhasse:\n  inf: 1\n  2: 1\n"
    );
}

#[test]
fn invariants_of_every_builtin() {
    let expected = [
        ("U", 2, (1, 1), -1),
        ("Lambda_Kum3", 7, (3, 4), 2),
        ("Paranjape", 6, (2, 4), 1),
        ("ILP", 6, (2, 4), 3),
        ("rank1:-5", 1, (0, 1), -5),
    ];
    for (name, dim, (pos, neg), disc) in expected {
        let (v, code) = machine(&["invariants", "--builtin", name]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["dim"], dim, "{name}");
        assert_eq!(
            v["signature"],
            json!({ "positive": pos, "negative": neg }),
            "{name}"
        );
        assert_eq!(v["disc_class"], disc, "{name}");
    }
}

#[test]
fn eligibility_golden_pair() {
    let (v, code) = machine(&["eligibility", "--builtin", "Paranjape"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "ELIGIBLE");
    assert_eq!(v["target"], "Lambda_Kum3(2)");
    assert_eq!(v["complement"]["dim"], 1);
    assert_eq!(v["complement"]["disc_class"], 1);
    assert_eq!(v["obstructions"], json!([]));

    let (v, code) = machine(&["eligibility", "--builtin", "ILP"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "NOT ELIGIBLE");
    assert_eq!(v["complement"], Value::Null);
    assert_eq!(
        v["obstructions"],
        json!([
            { "place": "2", "code": "rank-one-hasse" },
            { "place": "3", "code": "rank-one-hasse" },
        ])
    );
}

#[test]
fn eligibility_options() {
    let (v, code) = machine(&[
        "eligibility",
        "--builtin",
        "U",
        "--target",
        "U",
        "--twist",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["complement"]["dim"], 0);
    let o = run(&["eligibility", "--builtin", "U", "--twist", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eligibility", "--builtin", "U", "--twist", "two"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eligibility", "--builtin", "U", "--target", "E8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn text_and_machine_agree() {
    let text = stdout(&run(&["eligibility", "--builtin", "ILP"]));
    assert!(text.contains("verdict: NOT ELIGIBLE\n"));
    assert!(text.contains("  - place: 3\n    code: rank-one-hasse\n"));
}

#[test]
fn clifford_reports() {
    let (v, code) = machine(&["clifford", "--builtin", "Lambda_Kum3"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 7);
    assert_eq!(v["dimension"], 128);
    assert_eq!(v["even_dimension"], 64);
    assert_eq!(v["ks_dimension"], 32);

    let (v, _) = machine(&["clifford", "--builtin", "U", "--ks-dim"]);
    assert_eq!(v, json!({ "lattice": "U", "rank": 2, "ks_dimension": 1 }));

    let (v, code) = machine(&["clifford", "--builtin", "rank1:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["ks_dimension"], Value::Null);
    let o = run(&["clifford", "--builtin", "rank1:3", "--ks-dim"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lattice_files() {
    let mut good = tempfile::NamedTempFile::new().unwrap();
    write!(
        good,
        r#"{{"name": "H", "gram": [["0", "1/2"], ["1/2", "0"]]}}"#
    )
    .unwrap();
    let path = good.path().to_str().unwrap();
    let (v, code) = machine(&["invariants", path]);
    assert_eq!(code, 0);
    assert_eq!(v["lattice"], "H");
    assert_eq!(v["disc_class"], -1);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "{{\n  \"gram\": [[\"1\", \"0\"],\n").unwrap();
    let o = run(&["invariants", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains("line 3"), "{err}");
    assert!(o.stdout.is_empty());

    let mut entry = tempfile::NamedTempFile::new().unwrap();
    write!(entry, r#"{{"gram": [["1", "0"], ["0", "1/0"]]}}"#).unwrap();
    let o = run(&["invariants", entry.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("row 1, column 1"));

    let o = run(&["invariants", "/nonexistent/lattice.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["invariants"]).status.code(), Some(2));
    assert_eq!(
        run(&["invariants", "x.json", "--builtin", "U"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["invariants", "--builtin", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify-fixed-locus", "--level", "6"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify-fixed-locus", "--lemma", "9.9"]).status.code(),
        Some(2)
    );
}

#[test]
fn machine_output_is_deterministic() {
    for args in [
        &["eligibility", "--builtin", "ILP", "--format", "machine"][..],
        &[
            "invariants",
            "--builtin",
            "Lambda_Kum3",
            "--format",
            "machine",
        ][..],
        &[
            "verify-fixed-locus",
            "--lemma",
            "2.7",
            "--format",
            "machine",
        ][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

fn suite(v: &Value) -> &Value {
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
    &v["suites"][0]
}

#[test]
fn fixed_locus_suite() {
    let (v, code) = machine(&["verify-fixed-locus", "--level", "4", "--lemma", "2.7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "PASS");
    let s = suite(&v);
    assert_eq!(s["lemma"], "2.7");
    for c in s["checks"].as_array().unwrap() {
        assert!(c["status"] == "PASS" || c["status"] == "INFO", "{c}");
    }
}

#[test]
fn intersection_suite() {
    let (v, code) = machine(&["verify-fixed-locus", "--lemma", "2.5"]);
    assert_eq!(code, 0);
    let s = suite(&v);
    assert_eq!(s["status"], "PASS");
    let checks = s["checks"].as_array().unwrap();
    let observed: Vec<&Value> = checks.iter().map(|c| &c["observed"]).collect();
    assert_eq!(observed, [&json!(120), &json!(560), &json!(1820)]);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}
