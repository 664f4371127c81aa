use std::path::Path;
use std::process::{Command, Output};

use cyclotan::sine::RatioReport;
use cyclotan::{Decomposition, IdentityCheck, IdentityVerdict, SweepReport};
use cyclotan_cli::report::{BasisReport, RootReport, VerifyReport};
use serde::de::DeserializeOwned;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclotan"))
        .args(args)
        .output()
        .expect("spawn cyclotan")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json<T: DeserializeOwned>(args: &[&str]) -> (String, T) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let text = stdout(&full);
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}: {text}"));
    (text, value)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

/// Serializing the parsed report reproduces the emitted line.
fn round_trips<T: DeserializeOwned + serde::Serialize>(args: &[&str]) -> T {
    let (text, value) = json::<T>(args);
    assert_eq!(serde_json::to_string(&value).unwrap(), text.trim_end(), "{args:?}");
    value
}

#[test]
fn golden_decompositions() {
    assert_eq!(
        stdout(&["decompose", "3", "0", "--format", "json"]),
        golden("decompose_3_0.json")
    );
    assert_eq!(
        stdout(&["decompose", "12", "3", "--format", "json"]),
        golden("decompose_12_3.json")
    );
}

#[test]
fn golden_sine_ratio() {
    assert_eq!(
        stdout(&["sin-ratio", "1/6", "1", "3", "--format", "json"]),
        golden("sin_ratio_1_6_1_3.json")
    );
}

#[test]
fn negative_exponents_are_accepted() {
    let d: Decomposition = round_trips(&["decompose", "12", "-3"]);
    assert_eq!(d.t, 9);
    assert_eq!(serde_json::to_string(&d.im).unwrap(), r#"{"B4.1*A3.1":"2/1"}"#);
    let r: RatioReport = round_trips(&["sin-ratio", "1/5", "-1", "4"]);
    assert_eq!(r.class, "rational");
    assert_eq!(r.lambda.unwrap().to_string(), "-1/1");
}

#[test]
fn check_reports_failure_with_success_status() {
    let c: IdentityCheck = round_trips(&["check", "1/3", "2"]);
    assert_eq!(c.verdict, IdentityVerdict::Fails);
    let c: IdentityCheck = round_trips(&["check", "1/4", "2"]);
    assert_eq!(c.verdict, IdentityVerdict::PoleRhs);
    assert!(c.lhs.is_none());
    let c: IdentityCheck = round_trips(&["check", "1/2", "3"]);
    assert_eq!(c.verdict, IdentityVerdict::PoleLhs);
}

#[test]
fn reports_round_trip() {
    let b: BasisReport = round_trips(&["basis", "60"]);
    assert_eq!(b.keys.len() as u64, b.phi);
    let s: SweepReport = round_trips(&["sweep", "--qmax", "12", "--nmax", "12"]);
    assert_eq!(s.total, s.tallies.fails + s.tallies.pole_rhs);
    let v: VerifyReport = round_trips(&["verify-basis", "--nmax", "10", "--bits", "96"]);
    assert!(v.passed);
    assert_eq!(v.conductors.len(), 10);
    let r: RootReport = round_trips(&["find-root", "4", "0.35", "0.38", "--bits", "256"]);
    assert!(r.root.unwrap().starts_with("0.36613976"));
    assert!(r.tan_residual_log2.unwrap() < -100);
    assert!(r.ratio_residual_log2.unwrap() < -100);
}

#[test]
fn find_root_without_sign_change() {
    let r: RootReport = round_trips(&["find-root", "4", "1/10", "2/10"]);
    assert!(r.root.is_none());
}

#[test]
fn output_is_independent_of_jobs() {
    let one = stdout(&["sweep", "--qmax", "30", "--nmax", "30", "--format", "json"]);
    for jobs in ["2", "3", "8"] {
        let many = stdout(&[
            "sweep", "--qmax", "30", "--nmax", "30", "--format", "json", "--jobs", jobs,
        ]);
        assert_eq!(one, many, "jobs = {jobs}");
    }
    let one = stdout(&["verify-basis", "--nmax", "24", "--format", "json"]);
    let many = stdout(&["verify-basis", "--nmax", "24", "--format", "json", "--jobs", "4"]);
    assert_eq!(one, many);
}

#[test]
fn text_output() {
    let text = stdout(&["check", "1/3", "2"]);
    assert!(text.contains("fails"), "{text}");
    let text = stdout(&["basis", "12"]);
    assert!(text.contains("B4.1*B3.1"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["decompose", "0", "1"][..],
        &["sin-ratio", "3/2", "1", "1"],
        &["sin-ratio", "1/0", "1", "1"],
        &["check", "1/3", "1"],
        &["sweep", "--qmax", "2", "--nmax", "10"],
        &["find-root", "4", "x", "0.3"],
        &["find-root", "4", "0.38", "0.35"],
        &["--bits", "32", "find-root", "4", "0.35", "0.38"],
        &["--jobs", "0", "sweep", "--qmax", "5", "--nmax", "5"],
        &["bogus"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}
