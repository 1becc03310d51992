use std::path::PathBuf;
use std::process::{Command, Output};

fn adjtor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adjtor")).args(args).output().expect("binary runs")
}

fn temp_json(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("adjtor-{}-{name}.json", std::process::id()))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_writes_a_deterministic_report() {
    let (a, b) = (temp_json("a"), temp_json("b"));
    for path in [&a, &b] {
        let o = adjtor(&["verify", "--knot", "4_1", "--slope", "-2,5", "--z", "1.5+0.5i", "--json", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
    let (ja, jb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_str(&ja).unwrap();
    for key in [
        "preset", "slope", "z", "x", "precision_bits", "components", "total_sum", "vanishing_metric", "verdict",
        "khovanskii", "index_values", "elapsed_ms",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["slope"], serde_json::json!([-2, 5]));
    assert_eq!(v["verdict"], "PASS");
    assert!(v["elapsed_ms"].is_null());
    let point = &v["components"][0]["points"][0];
    for key in ["y", "m", "l", "torsion", "residual"] {
        assert!(point.get(key).is_some(), "missing point key {key}");
    }
    assert!(point["torsion"]["re"].is_f64() && point["torsion"]["im"].is_f64());
    assert_eq!(v["khovanskii"]["verdict"], "pass");
    let _ = std::fs::remove_file(a);
    let _ = std::fs::remove_file(b);
}

#[test]
fn two_component_report_lists_signs() {
    let o = adjtor(&["verify", "--knot", "7_4", "--slope", "1,1", "--z", "2.1538461538461537+2.769230769230769i", "--x", "2+3i"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("component 1: 17 points"));
    assert!(out.contains("component 2: 20 points"));
}

#[test]
fn index_reports_the_fiber_size_at_genus_one() {
    let o = adjtor(&["index", "--knot", "5_2", "--slope", "3,1", "--z", "1.4+0.6i", "--genus", "0,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("g = 1: 23.0000000000"));
}

#[test]
fn certify_and_selftest_pass() {
    let o = adjtor(&["certify-grt", "--slope", "3,1", "--x", "2+1i"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let o = adjtor(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn torsion_prints_every_point() {
    let o = adjtor(&["torsion", "--knot", "4_1", "--slope", "1,0", "--z", "1.5+0.5i"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("Tor(gamma)")).count(), 2);
}

#[test]
fn bad_inputs_are_rejected() {
    for args in [
        vec!["verify", "--knot", "4_1", "--slope", "2,4", "--z", "1.5+0.5i"],
        vec!["verify", "--knot", "4_1", "--slope", "1,1", "--z", "1.5+0.5j"],
        vec!["verify", "--knot", "no_such_knot", "--slope", "1,1", "--z", "1.5+0.5i"],
        vec!["verify", "--knot", "4_1", "--slope", "1,1", "--z", "1.5+0.5i", "--precision", "256"],
        vec!["verify", "--knot", "4_1", "--slope", "1,1", "--z", "1.5+0.5i", "--x", "3+0i"],
    ] {
        let o = adjtor(&args);
        assert!(!o.status.success(), "{args:?} should fail");
        assert!(!o.stderr.is_empty());
    }
}
