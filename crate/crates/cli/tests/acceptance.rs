//! Acceptance criterion 10: identical config and seed produce
//! byte-identical reports.

use std::process::Command;

fn run_to_file(args: &[&str], path: &std::path::Path) -> i32 {
    let status = Command::new(env!("CARGO_BIN_EXE_hqmap"))
        .args(args)
        .arg("--out")
        .arg(path)
        .status()
        .expect("binary runs");
    status.code().unwrap_or(-1)
}

#[test]
fn criterion_10_determinism() {
    let dir = std::env::temp_dir().join(format!("hqmap-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("certify", vec!["certify", "--curve", "circle", "--K", "1"]),
        (
            "analyze",
            vec!["analyze", "--map", "quadratic:b=0.25", "--n", "512", "--seed", "7"],
        ),
        (
            "eremenko",
            vec!["eremenko", "--trials", "50", "--seed", "42"],
        ),
        ("jacobian", vec!["jacobian", "--map", "affine:a=0.5", "--n", "1024", "--taus", "16"]),
    ];

    let mut pass = true;
    let mut detail = String::new();
    for (name, args) in &cases {
        let f1 = dir.join(format!("{name}-1.json"));
        let f2 = dir.join(format!("{name}-2.json"));
        let c1 = run_to_file(args, &f1);
        let c2 = run_to_file(args, &f2);
        let b1 = std::fs::read(&f1).unwrap();
        let b2 = std::fs::read(&f2).unwrap();
        let identical = b1 == b2 && c1 == c2;
        if !identical {
            pass = false;
        }
        detail.push_str(&format!("{name}: {} bytes, identical = {identical}; ", b1.len()));
    }
    println!(
        "[acceptance] criterion 10 (determinism): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    let _ = std::fs::remove_dir_all(&dir);
    assert!(pass);
}
