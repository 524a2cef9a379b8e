use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spinbkp")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn hurwitz_number_as_json() {
    let (code, out) = run(&["hurwitz", "--d", "2", "--profiles", "[1,1];[1,1]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"]["num"], "1");
    assert_eq!(v["value"]["den"], "2");
}

#[test]
fn methods_agree_on_w11() {
    let terms: Vec<_> = ["closed", "expansion", "toprec"]
        .iter()
        .map(|m| {
            let (code, out) = run(&["wgn", "--g", "1", "--n", "1", "--order", "7", "--method", m]);
            assert_eq!(code, 0, "{m}");
            serde_json::from_str::<serde_json::Value>(&out).unwrap()["terms"].clone()
        })
        .collect();
    assert_eq!(terms[0], terms[1]);
    assert_eq!(terms[0], terms[2]);
}

#[test]
fn even_part_is_an_input_error() {
    assert_eq!(run(&["hurwitz", "--d", "2", "--profiles", "[2];[1,1]"]).0, 2);
}

#[test]
fn passing_check_exits_zero() {
    let (code, out) = run(&["--workers", "1", "check", "orthogonality"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS"));
}

#[test]
fn literal_criterion_three_exits_one() {
    assert_eq!(run(&["check", "tau"]).0, 1);
}
