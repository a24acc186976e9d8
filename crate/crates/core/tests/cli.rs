use std::process::Command;

use ostrowski::baseline::Baseline;
use ostrowski::equidist::{joint_counts, JointCountReport};
use ostrowski::Ostrowski;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ostrowski"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin()
        .args(args)
        .env_remove("OSTROWSKI_BUDGET")
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn digits_of_ten() {
    let (code, out, _) = run(&["digits", "--m", "2", "--n", "10"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0,2,0,2\nS=4\n");
    let (code, out, _) = run(&["digits", "--m", "2", "--eps", "0,2,0,2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["n"], "10");
}

#[test]
fn inadmissible_digits_are_usage_errors() {
    let (code, _, err) = run(&["digits", "--m", "2", "--eps", "0,2,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn convergent_table() {
    let (code, out, _) = run(&["convergents", "--m", "2", "--K", "9"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("q = [1,1,3,4,11,15,41,56,153,209]\n"));
    let (_, csv, _) = run(&["convergents", "--m", "3", "--K", "4", "--format", "csv"]);
    assert_eq!(
        csv,
        "i,q,p\r\n0,1,0\r\n1,1,1\r\n2,4,3\r\n3,5,4\r\n4,19,15\r\n"
    );
}

#[test]
fn count_json_matches_library_and_baseline() {
    let (code, out, _) = run(&[
        "count", "--m1", "2", "--m2", "3", "--b1", "3", "--b2", "2", "--n", "1000", "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rep: JointCountReport = serde_json::from_value(v["result"].clone()).unwrap();
    let (s2, s3) = (Ostrowski::with_m(2).unwrap(), Ostrowski::with_m(3).unwrap());
    assert_eq!(rep, joint_counts(1000, &s2, 3, &s3, 2, 1).unwrap());
    let pinned = Baseline::load(&Baseline::default_path()).unwrap();
    assert_eq!(rep.counts, pinned.corollary.counts_1000);
    assert_eq!(v["config"]["seed"], 0);
}

#[test]
fn reports_are_reproducible_and_thread_independent() {
    let args = [
        "scan",
        "--mode",
        "corollary",
        "--m1",
        "2",
        "--m2",
        "3",
        "--b1",
        "3",
        "--b2",
        "2",
        "--grid",
        "1000,10000,100000,200000",
        "--format",
        "json",
    ];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let (_, single, _) = run(&[&args[..], &["--threads", "1"]].concat());
    let (_, many, _) = run(&[&args[..], &["--threads", "8"]].concat());
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v["config"]["threads"] = 0.into();
        v
    };
    assert_eq!(strip(&single), strip(&many));
}

#[test]
fn budget_errors_name_the_cap() {
    let out = bin()
        .args([
            "count", "--m1", "2", "--m2", "3", "--b1", "3", "--b2", "2", "--n", "5000",
        ])
        .env("OSTROWSKI_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1000"), "{err}");
}

#[test]
fn rational_angles_unless_real() {
    let base = [
        "expsum", "--m1", "2", "--m2", "3", "--beta", "1/2", "--n", "100",
    ];
    let (code, _, err) = run(&[&base[..], &["--theta", "0.3"]].concat());
    assert_eq!(code, 2);
    assert!(err.contains("--real"));
    let (code, _, err) = run(&[&base[..], &["--theta", "0.3", "--real"]].concat());
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
    let (code, out, _) = run(&[&base[..], &["--theta", "1/3", "--format", "csv"]].concat());
    assert_eq!(code, 0);
    assert!(out.starts_with("N,re,im,modulus,normalized\r\n100,"));
}

#[test]
fn scan_refuses_failed_hypothesis() {
    let args = [
        "scan",
        "--mode",
        "theorem",
        "--m1",
        "2",
        "--m2",
        "2",
        "--theta",
        "1/3",
        "--beta",
        "1/2",
        "--grid",
        "10,100,1000,10000",
    ];
    let (code, _, _) = run(&args);
    assert_eq!(code, 2);
    let (code, out, _) = run(&[&args[..], &["--unchecked"]].concat());
    assert_eq!(code, 0);
    assert!(out.contains("hypothesis=false"));
}

#[test]
fn decay_dft_lemmas_verify_succeed() {
    let (code, out, _) = run(&[
        "decay", "--m", "2", "--gamma", "1/3", "--theta", "3/10", "--k", "12", "--kmin", "6",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("k=6 q_k=41"));
    let (code, out, _) = run(&["dft", "--m", "2", "--k", "4", "--v", "1", "--theta", "1/3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("v=1 k=4 n_(v-1)=0 Q(v)=11"));
    let (code, out, _) = run(&["lemmas", "--trials", "100", "--H", "50"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("fejer_failures=0"));
    let (code, out, _) = run(&["verify"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn output_file_and_bad_usage() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let (code, out, _) = run(&[
        "digits",
        "--m",
        "1",
        "--n",
        "10",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["digits"], serde_json::json!([0, 0, 1, 0, 0, 1]));
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["digits", "--m", "2"]).0, 2);
    assert_eq!(
        run(&[
            "scan",
            "--mode",
            "corollary",
            "--m1",
            "2",
            "--m2",
            "3",
            "--b1",
            "3",
            "--b2",
            "2",
            "--grid",
            "10,100"
        ])
        .0,
        2
    );
}

#[test]
fn verify_detects_a_tampered_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let mut b = Baseline::load(&Baseline::default_path()).unwrap();
    b.mismatch_count += 1;
    b.save(&path).unwrap();
    let (code, out, _) = run(&["verify", "--baseline", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("mismatch_count"));
}
