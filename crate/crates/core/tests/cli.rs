use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_leja-energy"))
}

#[test]
fn sweep_is_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let status = bin().args(["sweep", "--s", "0", "--max-n", "4200", "--out"]).arg(path).status().unwrap();
        assert!(status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,tau,s,energy,normalized");
    assert_eq!(lines.len() - 1, 4199);
    let upper = (4.0f64 / 3.0).ln();
    for line in &lines[1..] {
        let f: Vec<&str> = line.split(',').collect();
        let n: u64 = f[0].parse().unwrap();
        let v: f64 = f[4].parse().unwrap();
        assert!((0.0..upper).contains(&v), "{line}");
        assert_eq!(v == 0.0, n.is_power_of_two(), "{line}");
    }
}

#[test]
fn conjecture_is_deterministic() {
    let run = || {
        bin().args(["conjecture", "--family", "random", "--s", "0", "--max-n", "300", "--seed", "7"]).output().unwrap()
    };
    let (x, y) = (run(), run());
    assert!(x.status.success());
    assert_eq!(x.stdout, y.stdout);
    let text = String::from_utf8(x.stdout).unwrap();
    assert!(text.starts_with("N,tau,s,energy,normalized,running_max\n"));
    assert_eq!(text.lines().count(), 300);
}

#[test]
fn verify_passes() {
    let out = bin().args(["verify", "--max-n", "512", "--seeds", "2"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("0 failed"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &["sweep", "--max-n", "10"],
        &["verify", "--max-n", "2"],
        &["oracle", "--n", "8", "--grid", "16"],
        &["conjecture", "--family", "custom-file", "--s", "0", "--max-n", "4"],
        &["bogus"],
    ];
    for args in cases {
        assert_eq!(bin().args(args).output().unwrap().status.code(), Some(2), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let unwritable = dir.path().join("missing").join("out.csv");
    let out = bin().args(["sweep", "--s", "1", "--max-n", "10", "--out"]).arg(&unwritable).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_and_constants_report() {
    let out = bin().args(["oracle", "--n", "8", "--s", "0", "--grid", "16384"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 9);
    let out = bin().args(["constants", "--s", "2", "--p-max", "4", "--t-max", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("h_upper") && text.contains("witness") && text.contains("t_max =  8"), "{text}");
}
