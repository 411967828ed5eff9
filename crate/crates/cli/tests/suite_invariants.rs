use std::process::Command;

use loopyang::{emit, run_suite, Format, Scenario, Suite};

fn scenario(suite: Suite, settings: &[(&str, &str)]) -> Scenario {
    let mut s = Scenario::new(suite);
    for (k, v) in settings {
        s.set(k, v).unwrap();
    }
    s.validate().unwrap()
}

fn json(s: &Scenario) -> String {
    emit(Some(s), &run_suite(s).unwrap(), Format::Json, true)
}

#[test]
fn reruns_are_byte_identical() {
    let s = scenario(Suite::Semisimple, &[("type", "A2"), ("order", "4")]);
    let a = json(&s);
    assert_eq!(a, json(&s));
    let t = |s: &Scenario| emit(Some(s), &run_suite(s).unwrap(), Format::Text, true);
    assert_eq!(t(&s), t(&s));
}

#[test]
fn serial_equals_parallel() {
    for (suite, settings) in [
        (Suite::Semisimple, vec![("type", "B2"), ("order", "4")]),
        (Suite::Gln, vec![("n", "2"), ("d", "1"), ("order", "4"), ("deg", "2")]),
        (Suite::Gauge, vec![("order", "4"), ("seeds", "4")]),
    ] {
        let mut s = scenario(suite, &settings);
        s.jobs = 1;
        let serial = run_suite(&s).unwrap();
        s.jobs = 4;
        let parallel = run_suite(&s).unwrap();
        let strip = |v: &[loopyang_core::report::CheckReport]| emit(None, v, Format::Json, true);
        assert_eq!(strip(&serial), strip(&parallel), "{}", suite);
    }
}

#[test]
fn cache_hit_and_miss_agree() {
    let dir = std::env::temp_dir().join(format!("loopyang-suite-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let plain = scenario(Suite::Semisimple, &[("type", "A2"), ("order", "4")]);
    let cached = scenario(Suite::Semisimple, &[("type", "A2"), ("order", "4"), ("cache", dir.to_str().unwrap())]);
    let strip = |s: &Scenario| emit(None, &run_suite(s).unwrap(), Format::Json, true);
    let expect = strip(&plain);
    assert_eq!(strip(&cached), expect);
    assert!(dir.read_dir().unwrap().next().is_some());
    assert_eq!(strip(&cached), expect);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cap_is_overridable() {
    let mut s = Scenario::new(Suite::Semisimple);
    s.set("order", "11").unwrap();
    assert!(s.clone().validate().is_err());
    s.set("cap", "12").unwrap();
    assert_eq!(s.validate().unwrap().order, 11);
}

#[test]
fn mutated_family_fails_somewhere() {
    let s = scenario(Suite::Semisimple, &[("order", "5"), ("mutate", "true")]);
    let reps = run_suite(&s).unwrap();
    let bad: Vec<_> = reps.iter().filter(|r| !r.passed()).collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|r| r.first_failure.is_some()));
}

#[test]
fn report_embeds_resolved_scenario() {
    let s = scenario(Suite::Drinfeld, &[("order", "5"), ("modes", "2")]);
    let doc: loopyang::emit::Document = serde_json::from_str(&json(&s)).unwrap();
    assert_eq!(doc.scenario.as_ref(), Some(&s));
    assert_eq!(doc.summary.failed, 0);
    assert!(doc.reports.iter().all(|r| r.millis.is_none()));
}

fn cli(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_loopyang")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

#[test]
fn exit_codes() {
    let (code, out, _) = cli(&["verify", "semisimple", "--order", "4", "--stable"]);
    assert_eq!(code, Some(0));
    assert!(out.trim_end().ends_with("0 failed"));
    let (code, _, _) = cli(&["verify", "semisimple", "--order", "4", "--mutate"]);
    assert_eq!(code, Some(1));
    let (code, _, err) = cli(&["verify", "semisimple", "--order", "11"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("`order`"));
    let (code, _, err) = cli(&["verify", "gln", "--set", "grid=2y1"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("`grid`"));
}

#[test]
fn json_cli_is_stable() {
    let args = ["gauge", "roundtrip", "--order", "4", "--seeds", "3", "--format", "json", "--stable"];
    let (c1, a, _) = cli(&args);
    let (c2, b, _) = cli(&args);
    assert_eq!((c1, c2), (Some(0), Some(0)));
    assert_eq!(a, b);
}
