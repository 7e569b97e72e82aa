use std::process::Command;

fn cuntz(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cuntz"))
        .args(args)
        .env_remove("CUNTZ_CONFIG")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn check_car_passes() {
    let (code, out) = cuntz(&["check", "car", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 fail"), "{}", out);
}

#[test]
fn decompose_generator() {
    assert_eq!(cuntz(&["decompose", "s1", "--json"]), (0, "{\"1\":\"s1 s1*\"}\n".into()));
    let (code, out) = cuntz(&["decompose", "s1 s2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(s1 s2 s1* s1*) s1^2");
}

#[test]
fn eq_uses_cuntz_relations() {
    assert_eq!(cuntz(&["eq", "s1* s1", "I"]).0, 0);
    assert_eq!(cuntz(&["eq", "s1 s1* + s2 s2*", "I"]).0, 0);
    assert_eq!(cuntz(&["eq", "s1* s2", "I"]).0, 1);
}

#[test]
fn usage_and_resource_errors() {
    assert_eq!(cuntz(&[]).0, 2);
    assert_eq!(cuntz(&["normalize", "s1 + + s2"]).0, 2);
    assert_eq!(cuntz(&["car", "40"]).0, 3);
    assert_eq!(cuntz(&["norm", "s1", "--lower-bound-depth", "30"]).0, 3);
}

#[test]
fn check_all_is_deterministic() {
    let a = cuntz(&["--json", "check", "all", "--seed", "0"]);
    assert_eq!(a.0, 0);
    let b = cuntz(&["--json", "check", "all", "--seed", "0"]);
    assert_eq!(a, b);
}
