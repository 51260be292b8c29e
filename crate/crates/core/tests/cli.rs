use std::process::Command;

fn circuitcat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_circuitcat"))
        .args(args)
        .env_remove("CIRCUITCAT_MAX_WEIGHT")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn info_reports_kind() {
    let (code, out, _) = circuitcat(&["info", "--a=1,1,-1,-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("blow-up"), "{out}");
    let (code, out, _) = circuitcat(&["info", "--circuit", "a=2,3,-5", "--mode", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "weighted-projective");
}

#[test]
fn invalid_input_exits_one() {
    let (code, out, err) = circuitcat(&["info", "--a=1,2,-4"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error[E_"), "{err}");

    let (code, _, err) = circuitcat(&["amodel", "--a=2,3,-5", "--n=5"]);
    assert_eq!(code, 1);
    assert!(err.contains("error["), "{err}");

    let (code, _, _) = circuitcat(&["no-such-command"]);
    assert_eq!(code, 1);
}

#[test]
fn weight_cap_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_circuitcat"))
        .args(["bmodel", "--a=1,1,-2", "--n=4"])
        .env("CIRCUITCAT_MAX_WEIGHT", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_WEIGHT_CAP"));
}

#[test]
fn verify_passes() {
    let (code, out, _) = circuitcat(&["verify", "--a=1,2,3,-1,-5", "--nu=1,0,0,0,-1"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.is_array() || v.is_object());
}

#[test]
fn emit_json_is_deterministic() {
    let args = ["emit-json", "--a=1,2,-1,-2", "--n=3"];
    let (c1, first, _) = circuitcat(&args);
    let (c2, second, _) = circuitcat(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["objects"], 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quiver.dot");
    let p = path.to_str().unwrap();
    let (code, _, _) = circuitcat(&["--out", p, "emit-dot", "--a=2,3,-5", "--n=5"]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph quiver {"));
    assert_eq!(dot.matches(" -> ").count(), 5);
}

#[test]
fn mutate_word_and_half_twist() {
    let (code, out, _) = circuitcat(&["mutate", "--a=1,1,1,-3", "--n=3", "--word", "L1,R1"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = circuitcat(&["mutate", "--a=1,1,1,-3", "--n=3", "--mode", "poincare"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = circuitcat(&["mutate", "--a=1,1,1,-3", "--n=3", "--word", "L7"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn oracle_table() {
    let (code, out, _) = circuitcat(&["oracle", "--a0=2", "--a1=3", "--k=6", "--mode=json"]);
    assert_eq!(code, 0);
    assert!(out.contains("-3"), "{out}");
}
