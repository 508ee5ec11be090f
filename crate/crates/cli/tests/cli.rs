use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn kchow(input: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kchow"))
        .arg("--input")
        .arg(input)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(input: &Path, args: &[&str]) -> String {
    let o = kchow(input, args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn temp_complex(json: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), json).unwrap();
    f
}

#[test]
fn betti_of_five_points() {
    assert_eq!(ok(&corpus("discrete-5"), &["betti"]), "1,5,1\n");
}

#[test]
fn wdvv_on_four_points() {
    assert_eq!(ok(&corpus("discrete-4"), &["wdvv", "1", "2", "3", "4"]), "+Pi{1,2} -Pi{1,3}\n");
    assert_eq!(ok(&corpus("pair-4"), &["wdvv", "1", "2", "3", "4"]), "-Pi{1,3} +Sigma{1,2}\n");
}

#[test]
fn rejects_complexes_that_are_not_triparted() {
    let f = temp_complex(r#"{"labels":["1","2","3","4"],"facets":[["1","2"],["3","4"]]}"#);
    let o = kchow(f.path(), &["validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not at least triparted"));
    assert!(stdout(&o).contains("triparted: no"));
    assert_eq!(kchow(f.path(), &["betti"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let d7 = corpus("discrete-7");
    assert_eq!(kchow(&d7, &["--max-labels", "6", "betti"]).status.code(), Some(3));
    assert_eq!(kchow(&d7, &["--max-labels", "6", "validate"]).status.code(), Some(0));
    assert_eq!(kchow(&corpus("discrete-5"), &[]).status.code(), Some(1));
    assert_eq!(kchow(&corpus("discrete-5"), &["--format", "xml", "betti"]).status.code(), Some(1));
    assert_eq!(kchow(&corpus("discrete-5"), &["strata"]).status.code(), Some(1));
    assert_eq!(kchow(Path::new("/nonexistent.json"), &["betti"]).status.code(), Some(1));
    let missing = Command::new(env!("CARGO_BIN_EXE_kchow")).arg("betti").output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(kchow(&corpus("discrete-5"), &["multiply", "Pi{1,9}", "1"]).status.code(), Some(2));
    assert_eq!(kchow(&corpus("discrete-5"), &["wdvv", "1", "1", "2", "3"]).status.code(), Some(2));
    let floats = temp_complex(r#"{"labels":["1","2","3"],"weights":["0.9","1","1"]}"#);
    assert_eq!(kchow(floats.path(), &["validate"]).status.code(), Some(2));
}

#[test]
fn products_of_divisors() {
    let d6 = corpus("discrete-6");
    let meet = ok(&d6, &["multiply", "Pi{1,2}", "Pi{1,2,3}"]);
    assert_ne!(meet, "0\n");
    let graph = r#"{"blocks":[["1"],["2"],["3"],["4"],["5"],["6"]],"splits":[[["1","2"],["3","4","5","6"]],[["1","2","3"],["4","5","6"]]]}"#;
    assert_eq!(ok(&d6, &["stratum-class", graph]), meet);
    assert_eq!(ok(&d6, &["multiply", "Pi{1,2,3}", "Pi{1,2,4}"]), "0\n");
    // the point class of five points, in normal form
    let top = ok(&corpus("discrete-5"), &["multiply", "Pi{1,2}", "Pi{3,4}"]);
    assert_eq!(top.matches('*').count() + top.matches('^').count(), 1, "{top}");
}

#[test]
fn pushforwards() {
    assert_eq!(ok(&corpus("pair-4"), &["pushforward", "1", "2"]), "+Sigma{1,2}\n");
    assert_eq!(ok(&corpus("pair-4"), &["pushforward", "1,3"]), "+Pi{1,3}\n");
    assert_eq!(ok(&corpus("losev-manin-3"), &["pushforward", "3,4,5"]), "0\n");
}

#[test]
fn point_counts() {
    assert_eq!(ok(&corpus("discrete-5"), &["pointcount", "--q", "5"]), "51\n");
    assert_eq!(ok(&corpus("pair-4"), &["pointcount", "--q", "5"]), "6\n");
    let report = ok(&corpus("losev-manin-3"), &["pointcount"]);
    assert!(report.contains("point count: 1,4,1") && report.contains("match: yes"), "{report}");
    assert_eq!(kchow(&corpus("discrete-6"), &["pointcount", "--q", "3"]).status.code(), Some(2));
}

#[test]
fn strata_listing() {
    let text = ok(&corpus("discrete-4"), &["strata", "--codim", "1"]);
    assert_eq!(text.lines().count(), 3);
    let all: serde_json::Value =
        serde_json::from_str(&ok(&corpus("discrete-5"), &["--format", "json", "strata", "--all"])).unwrap();
    assert_eq!(all["graphs"].as_array().unwrap().len(), 26);
    // every codim-1 graph covers the open stratum, every point lies on two divisors
    assert_eq!(all["covers"].as_array().unwrap().len(), 10 + 2 * 15);
}

#[test]
fn formats() {
    let d5 = corpus("discrete-5");
    let json: serde_json::Value = serde_json::from_str(&ok(&d5, &["--format", "json", "betti"])).unwrap();
    assert_eq!(json["ranks"], serde_json::json!([1, 5, 1]));
    assert_eq!(ok(&d5, &["--format", "csv", "betti"]), "degree,rank,torsion\n0,1,\n1,5,\n2,1,\n");
    let divs: serde_json::Value = serde_json::from_str(&ok(&d5, &["--format", "json", "divisors"])).unwrap();
    assert_eq!(divs.as_array().unwrap().len(), 10);
    let ring: serde_json::Value = serde_json::from_str(&ok(&d5, &["--format", "json", "ring"])).unwrap();
    assert_eq!(ring["wdvv"].as_array().unwrap().len(), 15);
    let elem = ok(&d5, &["--format", "json", "wdvv", "1", "2", "3", "4"]);
    assert_eq!(ok(&d5, &["multiply", elem.trim(), "1"]), ok(&d5, &["multiply", "Pi{1,2}+Pi{1,2,5}-Pi{1,3}-Pi{1,3,5}", "1"]));
    let validate = ok(&d5, &["--format", "csv", "validate"]);
    assert!(validate.starts_with("field,value\n"));
}

#[test]
fn weights_are_reported() {
    let text = ok(&corpus("losev-manin-3"), &["validate"]);
    assert!(text.contains("weights: 1,1,1/4,1/4,1/4"));
    assert!(text.contains("facets: {1} {2} {3,4,5}"));
}

#[test]
fn corpus_matches_committed_reports() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let name = path.file_name().unwrap();
        let expected = std::fs::read_to_string(dir.join("expected").join(name)).unwrap();
        assert_eq!(ok(&path, &["--format", "json", "pointcount"]), expected, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 15);
}

#[test]
fn selftest_small() {
    let out = ok(&corpus("two-pairs-5"), &["selftest"]);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    assert!(out.contains("PASS order"));
}
