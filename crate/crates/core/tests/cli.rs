use hallpi::classify::{HallReport, KPi};
use std::path::PathBuf;
use std::process::{Command, Output};

fn hallpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallpi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_text_and_json() {
    let o = hallpi(&["classify", "--group", "PSL(2,7)", "--pi", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Sym4"));

    let o = hallpi(&["classify", "--group", "PSL(2,7)", "--pi", "2,3", "--format", "json"]);
    let r: HallReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.k_pi, KPi::Exact(2));
    assert_eq!(r.classes[0].case_id, "sl2.octahedral");
}

#[test]
fn classify_csv_has_header_and_one_row() {
    let o = hallpi(&["classify", "--group", "PSL(2,7)", "--pi", "2,3,7", "--format", "csv"]);
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[..5], ["spec", "pi", "regime", "e_pi", "k_pi"]);
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][2], "whole");
    assert_eq!(&rows[0][4], "1");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| hallpi(args).status.code();
    assert_eq!(code(&["classify", "--group", "PSL(2,4", "--pi", "2,3"]), Some(2));
    assert_eq!(code(&["classify", "--group", "PSL(2,7)", "--pi", "2,4"]), Some(2));
    assert_eq!(code(&["classify", "--group", "PSL(2,6)", "--pi", "2,3"]), Some(3));
    assert_eq!(code(&["classify", "--group", "PSL(2,9)", "--pi", "2,3"]), Some(0));
    assert_eq!(code(&["classify", "--group", "PSL(2,9)", "--pi", "2,3", "--strict"]), Some(4));
    assert_eq!(code(&["wreath", "--k", "2", "--p", "4"]), Some(2));
    assert_eq!(code(&["classify", "--pi", "2,3"]), Some(2));
    assert_eq!(code(&["verify", "--instance", "PSL(2,7)"]), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "--group", "M23", "--pi", "2,3,5", "--format", "json"][..],
        &["sweep", "--families", "linear", "--q-max", "13", "--n-max", "4"][..],
    ] {
        let a = hallpi(args);
        let b = hallpi(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn wreath_counts() {
    let o = hallpi(&["wreath", "--k", "2", "--p", "7"]);
    assert_eq!(stdout(&o).trim(), "20 (cross-check: 20)");
    let o = hallpi(&["wreath", "--k", "3", "--p", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k_pi"], "11");
    assert_eq!(v["burnside"], 11);
}

#[test]
fn sweep_empty_grid() {
    let o = hallpi(&["sweep", "--families", "none"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.ends_with("# 0 cells, 0 skipped, 0 violations\n"));
}

#[test]
fn sweep_finds_the_nine_class_row() {
    let o = hallpi(&[
        "sweep", "--families", "symplectic", "--q-max", "23", "--n-max", "10", "--primes", "2,3",
        "--require-two-three",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert!(rows.iter().all(|r| r[1].starts_with("{2,3")));
    let nine: Vec<_> = rows.iter().filter(|r| &r[4] == "9").collect();
    assert_eq!(nine.len(), 1);
    assert_eq!(&nine[0][0], "PSp(10,23)");
    assert!(text.ends_with("0 violations\n"));
}

#[test]
fn verify_single_instance() {
    let o = hallpi(&["verify", "--instance", "PSL(2,11):2,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("PSL2(11) {2,3}: pass"));
    assert!(text.contains("k_pi"));
}

#[test]
fn verify_rejects_a_corrupted_report() {
    let o = hallpi(&["classify", "--group", "PSL(2,7)", "--pi", "2,3", "--format", "json"]);
    let mut r: HallReport = serde_json::from_str(&stdout(&o)).unwrap();
    let good = scratch("psl27-good.json");
    std::fs::write(&good, serde_json::to_string(&r).unwrap()).unwrap();
    let o = hallpi(&["verify", "--instance", "PSL(2,7):2,3", "--report", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    r.k_pi = KPi::Exact(1);
    r.classes[0].class_count = 1;
    let bad = scratch("psl27-bad.json");
    std::fs::write(&bad, serde_json::to_string(&r).unwrap()).unwrap();
    let o = hallpi(&["verify", "--instance", "PSL(2,7):2,3", "--report", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn out_flag_writes_the_file() {
    let path = scratch("kpi.txt");
    let _ = std::fs::remove_file(&path);
    let o = hallpi(&[
        "kpi-bound", "--group", "PSp(10,23)", "--pi", "2,3", "--outer", "trivial", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["bound"]["exact"], 9);
}
