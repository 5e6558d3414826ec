use intstar::cli::{emit_report, OutputMode, Record, Status};
use intstar::conjharness::{search_certificate, DomainId, EvidenceLedger, EvidenceRecord, RunOptions};
use intstar::latorder::QuadOrder;
use intstar::psring::SemigroupRingSpec;
use std::path::PathBuf;
use std::process::{Command, Output};

fn specs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn intstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intstar"))
        .args(args)
        .env_remove("IVP_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_code_matrix() {
    let semi = specs().join("f2_semi23.spec");
    let semi = semi.to_str().unwrap();
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["member", "--domain", "Z", "--poly", "C(X,4)"], 0, "Yes"),
        (vec!["member", "--domain", "Z", "--poly", "1/2*X^2"], 1, "No"),
        (vec!["basis", "--domain", "Z", "--deg", "8"], 0, "9 generators"),
        (vec!["closure", "--domain", semi, "--op", "inverse", "--ideal", "(T^2,T^3)"], 0, "F2[[T]]"),
        (vec!["profile", "--domain", "Z[sqrt(-3)]", "--ideal", "(2, 1 + w)"], 0, "t_invertible: No"),
        (vec!["localize", "--prime", "3", "--deg", "4"], 0, "Yes"),
        (vec!["interchange", "--p", "2", "--q", "2", "--deg", "3"], 3, ""),
        (vec!["mpalpha", "--p", "2", "--minpoly=-17,0,1", "--root", "1", "--poly", "X"], 1, "No"),
        (vec!["mpalpha", "--p", "2", "--poly", "C(X,8)", "--prec", "3"], 2, "Unknown"),
        (vec!["theta", "--deg", "2"], 0, "Yes"),
        (
            vec!["conjecture", "search", "--domain", "F2_SEMI23", "--deg", "4", "--prec", "16"],
            0,
            "NoCertificate",
        ),
        (vec!["basis", "--domain", "Z", "--deg", "17"], 3, ""),
    ];
    assert_eq!(cases.len(), 12);
    for (args, code, needle) in cases {
        let o = intstar(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains(needle), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(intstar(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(intstar(&["member", "--domain", "Q", "--poly", "X"]).status.code(), Some(3));
    let o = intstar(&["member", "--domain", "Z", "--poly", "1/2*X^2 +* X"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 10"));
    assert_eq!(intstar(&["--help"]).status.code(), Some(0));
}

#[test]
fn precision_comes_from_the_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_intstar"))
            .args(["member", "--domain", "F2_SEMI23", "--poly", "T^2*X", "--format", "json"])
            .env("IVP_PRECISION", v)
            .output()
            .unwrap()
    };
    let ok = run("24");
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\"precision\":24"), "{}", stdout(&ok));
    assert_eq!(run("999").status.code(), Some(3));
    assert_eq!(run("abc").status.code(), Some(3));
}

#[test]
fn json_output_is_deterministic_and_carries_the_seed() {
    let args = ["suite", "--name", "star", "--count", "20", "--seed", "42", "--format", "json"];
    let a = intstar(&args);
    let b = intstar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["seed"], 42);
        assert_eq!(v["tool"], "intstar");
        assert!(v["version"].is_string());
    }
    let search = [
        "conjecture", "search", "--domain", "F2_TF4", "--deg", "4", "--prec", "16", "--deterministic", "--format", "json",
    ];
    assert_eq!(intstar(&search).stdout, intstar(&search).stdout);
}

#[test]
fn text_mode_prints_version_and_seed() {
    let o = intstar(&["theta", "--deg", "1", "--seed", "9"]);
    assert!(stdout(&o).contains(&format!("# intstar {} seed 9", env!("CARGO_PKG_VERSION"))));
}

#[test]
fn empty_report_is_empty() {
    for mode in [OutputMode::Text, OutputMode::JsonLines] {
        let mut out = Vec::new();
        emit_report(&mut out, &[], mode, 0).unwrap();
        assert!(out.is_empty());
    }
    assert_eq!(intstar::cli::exit_code(&[]), 0);
}

#[test]
fn mixed_statuses_give_exit_two() {
    let r = |s| Record::new("suite", "x", "y", s, serde_json::Value::Null);
    assert_eq!(intstar::cli::exit_code(&[r(Status::Pass), r(Status::Unknown)]), 2);
    assert_eq!(intstar::cli::exit_code(&[r(Status::Unknown), r(Status::Fail)]), 1);
}

#[test]
fn spec_files_round_trip() {
    for name in ["f2_semi23.spec", "f2_tf4.spec", "f2_dvr.spec"] {
        let src = std::fs::read_to_string(specs().join(name)).unwrap();
        let spec = SemigroupRingSpec::from_text(&src).unwrap();
        assert_eq!(spec.to_text(), src);
        assert_eq!(SemigroupRingSpec::from_text(&spec.to_text()).unwrap(), spec);
    }
    for name in ["z_i.spec", "z_sqrt_m3.spec", "z_sqrt_m5.spec"] {
        let src = std::fs::read_to_string(specs().join(name)).unwrap();
        let o = QuadOrder::from_text(&src).unwrap();
        assert_eq!(o.to_text(), src);
    }
}

#[test]
fn evidence_records_round_trip_through_the_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("evidence.jsonl");
    let started = std::time::Instant::now();
    let s = search_certificate(DomainId::F2Dvr, "X^2 + X", 2, 8).unwrap();
    let rec = EvidenceRecord::from_search(DomainId::F2Dvr, s, 2, 8, RunOptions { deterministic: true }, started);
    let line = rec.to_json();
    let back: EvidenceRecord = serde_json::from_str(&line).unwrap();
    assert_eq!(back, rec);
    assert_eq!(back.to_json(), line);
    let ledger = EvidenceLedger::new(&path);
    ledger.append(std::slice::from_ref(&rec)).unwrap();
    ledger.append(std::slice::from_ref(&rec)).unwrap();
    assert_eq!(ledger.load().unwrap(), vec![rec.clone(), rec]);

    let o = intstar(&[
        "conjecture", "search", "--domain", "F2_DVR", "--deg", "2", "--prec", "8", "--ledger", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(ledger.load().unwrap().len(), 3);
}
