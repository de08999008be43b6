//! Every example builds and exits cleanly.
//!
//! `cargo test` builds the examples next to the test binaries; each one is
//! run here and its output checked for a line it must print.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[(&str, &str)] = &[
    ("witness_exponents", "20736"),
    ("normal_forms", "relator t a t^-1 a^-2 trivial: true"),
    ("word_metrics", "t^2 a^4 t^-2"),
    ("distortion", "AtLeastExponential"),
    ("fitting", "oracle agrees: true"),
    ("prop32_reduction", "p-group: true"),
    ("depth_bs", "D(a) ∈ [6, Some(6)] exact true"),
    ("rf_growth", "n = 1: F ∈ [6, 6]"),
    ("case_audit", "0 survivors"),
    ("theorem_verify", "verified at desk scale"),
];

fn examples_dir() -> PathBuf {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_rfgrow"));
    bin.parent().unwrap().join("examples")
}

#[test]
fn examples_run() {
    let dir = examples_dir();
    for (name, expect) in EXAMPLES {
        let path = dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
        assert!(path.exists(), "example {name} was not built at {}", path.display());
        let out = Command::new(&path).output().unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains(expect), "{name} output lacks `{expect}`:\n{text}");
    }
}

#[test]
fn every_example_is_listed() {
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut found: Vec<String> = std::fs::read_dir(src)
        .unwrap()
        .filter_map(|e| e.ok()?.path().file_stem()?.to_str().map(String::from))
        .collect();
    found.sort();
    let mut listed: Vec<String> = EXAMPLES.iter().map(|e| e.0.to_string()).collect();
    listed.sort();
    assert_eq!(found, listed);
}
