use std::process::{Command, Output};

fn gatecost(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gatecost"))
        .args(args)
        .env_remove("GATECOST_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cnot_under_ising() {
    let o = gatecost(&["cost", "--gate", "cnot", "--ham", "ising"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("cost = 0.7853981633974483 (π/4), branch (0,0,0)"));
}

#[test]
fn infeasible_exit_code() {
    let o = gatecost(&["cost", "--gate", "swap", "--ham", "vec:0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("cost = infinite (gate is non-local, interaction is zero)"));
    let o = gatecost(&["protocol", "--gate", "cnot", "--ham", "vec:0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(
        gatecost(&["cost", "--gate", "toffoli", "--ham", "ising"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(gatecost(&["cost", "--gate", "cnot"]).status.code(), Some(1));
    assert_eq!(
        gatecost(&["order", "--gate", "cnot"]).status.code(),
        Some(1)
    );
    assert_eq!(
        gatecost(&["--tol=-1", "canon-ham", "--ham", "xy"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gatecost(&["chart", "--ham", "xy", "--resolution", "1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn reordered_vector_warns() {
    let o = gatecost(&["canon-ham", "--ham", "vec:0.2,1,0.5", "--json", "-"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h"], serde_json::json!([1.0, 0.5, 0.2]));
}

#[test]
fn order_json_has_witness() {
    let o = gatecost(&[
        "order",
        "--gate",
        "cnot",
        "--gate",
        "canonical:0.39269908169872414,0.39269908169872414,0.39269908169872414",
        "--json",
        "-",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["relation"], "incomparable");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    assert!(
        v["witnesses"][0]["costV"].as_f64().unwrap() > v["witnesses"][0]["costU"].as_f64().unwrap()
    );
}

#[test]
fn protocol_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("schedule.json");
    let p = path.to_str().unwrap();
    let o = gatecost(&[
        "protocol",
        "--gate",
        "swap",
        "--ham",
        "heisenberg",
        "--json",
        p,
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("total time = 0.7853981633974483 (π/4)"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(
        text.starts_with("{\"totalTime\":7.8539816339744828e-1,\"branch\":[0,0,0],\"segments\":")
    );
    let o = gatecost(&[
        "verify",
        "--schedule",
        p,
        "--gate",
        "swap",
        "--ham",
        "heisenberg",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = gatecost(&[
        "verify",
        "--schedule",
        p,
        "--gate",
        "cnot",
        "--ham",
        "heisenberg",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "order",
        "--gate",
        "swap",
        "--gate",
        "xy",
        "--samples",
        "200",
        "--seed",
        "4",
        "--json",
        "-",
    ];
    assert_eq!(gatecost(&args).stdout, gatecost(&args).stdout);
    let args = [
        "protocol",
        "--gate",
        "cphase:1.3",
        "--ham",
        "vec:1,0.4,-0.1",
        "--json",
        "-",
    ];
    assert_eq!(gatecost(&args).stdout, gatecost(&args).stdout);
}

#[test]
fn matrix_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gate.json");
    std::fs::write(
        &path,
        "[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]],[[0,0],[0,0],[1,0],[0,0]]]",
    )
    .unwrap();
    let spec = format!("matrix:{}", path.display());
    let o = gatecost(&["canon-gate", "--gate", &spec]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("λ = (π/4, 0, 0)"));
}

#[test]
fn charts() {
    let o = gatecost(&["chart", "--gate", "identity", "--resolution", "4"]);
    let text = stdout(&o);
    assert!(text.starts_with("h1,h2,h3,cost\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",0")));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cell.csv");
    let o = gatecost(&[
        "chart",
        "--ham",
        "ising",
        "--resolution",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("l1,l2,l3,cost,branch\n"));
    assert!(csv
        .contains("0.7853981633974483,0.7853981633974483,0.7853981633974483,2.356194490192345,1"));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gatecost"))
        .args(["canon-ham", "--ham", "xy"])
        .env("GATECOST_TOL", "nonsense")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let o = gatecost(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
