use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heegner-periods"))
}

fn run(args: &[&str]) -> (bool, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.success(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn periods_of_the_base_curve() {
    let (ok, out) = run(&["periods", "--prec", "30"]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["rows"][0]["omega"].as_str().unwrap().starts_with("5.98691729246391925966"));
}

#[test]
fn table3_rows_to_file() {
    let dir = std::env::temp_dir().join(format!("hp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("t3.json");
    let status = bin()
        .args(["table3", "--delta", "21,37", "--prec", "60", "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["t"], "2/3");
    assert_eq!(v["rows"][0]["difference"], "-5/2");
    assert_eq!(v["rows"][1]["difference"], "-40");
    assert!(v["rows"][1].get("wall_time_ms").is_none());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pipeline_points() {
    let (ok, out) = run(&["heegner", "--delta", "12,28", "--prec", "60"]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["point"]["y"], "-34");
    assert_eq!(v["rows"][1]["matches_published"], true);
}

#[test]
fn custom_coefficient_file_and_bad_input() {
    let dir = std::env::temp_dir().join(format!("hp-cli-coeffs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("c.csv");
    std::fs::write(&csv, "delta,c_plus,digits\n12,-0.488527238262012252282270296073370716,36\n").unwrap();
    let (ok, out) = run(&["table2", "--coeffs", csv.to_str().unwrap(), "--prec", "50"]);
    assert!(ok);
    assert!(out.contains("\"difference\": \"-5\""));
    std::fs::write(&csv, "delta,c_plus,digits\n13,0.1234567890123456789012,20\n").unwrap();
    let status = bin().args(["table2", "--coeffs", csv.to_str().unwrap()]).output().unwrap().status;
    assert_eq!(status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn eta_needs_nontrivial_discriminant() {
    let (ok, out) = run(&["eta-qexp", "--delta", "12", "--prec", "30"]);
    assert!(ok);
    assert!(out.contains("1.69230799510222330425"));
    let (ok, _) = run(&["eta-qexp", "--delta", "1", "--prec", "30"]);
    assert!(!ok);
}
