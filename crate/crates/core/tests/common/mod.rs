// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// Every documented invocation, keyed by the golden-file stem.
pub const DOCUMENTED: &[(&str, &[&str])] = &[
    ("hilbert_minus1_minus1_at_2", &["hilbert", "-1", "-1", "--place", "2"]),
    ("hilbert_minus1_minus1", &["hilbert", "-1", "-1"]),
    ("hilbert_2_5_at_5", &["hilbert", "2", "5", "--place", "5"]),
    ("conic_classify_hamilton", &["conic", "classify", "-1", "-1"]),
    ("conic_classify_split", &["conic", "classify", "1", "7"]),
    ("conic_compare_isomorphic", &["conic", "compare", "-1", "-1", "-1", "-2"]),
    ("conic_compare_distinct", &["conic", "compare", "-1", "-1", "-1", "3"]),
    ("quadric_classify_anisotropic", &["quadric", "classify", "1,1,1,1"]),
    ("quadric_classify_isotropic", &["quadric", "classify", "1,1,-1,-1"]),
    ("quadric_compare_separated", &["quadric", "compare", "1,1,1,1", "1,1,1,2"]),
    ("quadric_compare_similar", &["quadric", "compare", "1,1,1,1", "2,2,2,2"]),
    ("quadric_kernel_q", &["quadric", "kernel", "1,1,1,1"]),
    ("quadric_kernel_ext", &["quadric", "kernel", "1,1,1,1", "--ext", "-1"]),
    ("sb_compare_double", &["sb", "compare", "7:1/3,13:2/3", "7:2/3,13:1/3", "--dim", "2"]),
    ("sb_vs_quadric_torsion", &["sb", "vs-quadric", "7:1/3,13:2/3", "1,1,1,1"]),
    ("sb_vs_quadric_trivial", &["sb", "vs-quadric", "0", "1,1,-1,-1"]),
    ("genus1_orbit_12_5", &["genus1", "orbit", "12", "5"]),
    ("genus1_gate_period_6", &["genus1", "gate", "6", "--non-cm", "true", "--isolated-or-finite", "true"]),
    ("genus1_gate_period_5", &["genus1", "gate", "5", "--non-cm", "true", "--isolated-or-finite", "true"]),
];

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

pub fn run_bin(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_witt-kernel"))
        .args(args)
        .env_remove("WITT_KERNEL_SEARCH_BOUND")
        .output()
        .expect("spawn witt-kernel");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

pub fn run_json(args: &[&str]) -> Run {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    run_bin(&full)
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(stem: &str) -> PathBuf {
    crate_dir().join("tests").join("golden").join(format!("{stem}.json"))
}

pub fn report_schema() -> serde_json::Value {
    let text = std::fs::read_to_string(crate_dir().join("schema").join("report.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Schema violations of `doc`, rendered one per line.
pub fn schema_errors(schema: &serde_json::Value, doc: &serde_json::Value) -> Vec<String> {
    let validator = jsonschema::validator_for(schema).expect("schema compiles");
    validator.iter_errors(doc).map(|e| format!("{}: {e}", e.instance_path)).collect()
}
