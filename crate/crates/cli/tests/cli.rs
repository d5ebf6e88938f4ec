// Copyright 2026 The lqw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::Path;
use std::process::{Command, Output};

use lqw_cli::{format_complex, parse_complex};
use lqw_core::C64;
use proptest::prelude::*;

fn lqw(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lqw"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("LQW_QUAD_NODES")
        .output()
        .expect("binary runs")
}

fn read_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let headers = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (headers, rows)
}

#[test]
fn simulate_tau10_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let o = lqw(
        &[
            "simulate",
            "--tau",
            "10",
            "--alpha",
            "1/sqrt(2)",
            "--beta",
            "i/sqrt(2)",
            "--steps",
            "50",
        ],
        dir.path(),
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (headers, rows) = read_rows(&dir.path().join("simulate.csv"));
    assert_eq!(headers, ["n", "probability"]);
    assert_eq!(rows.len(), 101);
    let parsed: Vec<(i64, f64)> = rows
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    let total: f64 = parsed.iter().map(|p| p.1).sum();
    assert!((total - 1.0).abs() < 1e-9);
    let peak = parsed
        .iter()
        .filter(|p| p.0 > 25)
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
        .0;
    assert!((peak - 46).abs() <= 2, "peak at {peak}");

    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("simulate.json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["config"]["tau"], 10);
    assert_eq!(json["summary"]["theory_right"], 46.0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "simulate", "--tau", "3", "--alpha", "0.6", "--beta", "0.8i", "--steps", "80",
    ];
    assert_eq!(lqw(&args, a.path()).status.code(), Some(0));
    assert_eq!(lqw(&args, b.path()).status.code(), Some(0));
    for f in ["simulate.csv", "simulate.json"] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap()
        );
    }
}

#[test]
fn verify_passes_for_tau1() {
    let dir = tempfile::tempdir().unwrap();
    let o = lqw(&["verify", "--tau", "1", "--steps", "200"], dir.path());
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("verify.json")).unwrap()).unwrap();
    let verdicts = json["verdicts"].as_array().unwrap();
    assert!(verdicts.len() >= 10);
    for v in verdicts {
        assert!(v["measured"].is_number() && v["tolerance"].is_number());
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn zero_laziness_is_a_usage_error_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fresh");
    let o = lqw(&["simulate", "--tau", "0", "--steps", "50"], &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tau > 0"));
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &[
            "simulate", "--tau", "1", "--alpha", "1", "--beta", "1", "--steps", "20",
        ][..],
        &["simulate", "--tau", "1", "--alpha", "1+", "--steps", "20"],
        &["localize", "--tau", "1"],
        &["variance", "--tau", "1", "--steps", "5"],
        &["bogus"],
    ] {
        let o = lqw(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn tolerance_failure_exits_1() {
    // Far too few steps for the c t^2 fit to reach its tolerance.
    let dir = tempfile::tempdir().unwrap();
    let o = lqw(
        &[
            "variance", "--tau", "1", "--steps", "10", "--alpha", "1", "--beta", "0",
        ],
        dir.path(),
    );
    assert_eq!(
        o.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    assert!(dir.path().join("variance.csv").exists());
}

#[test]
fn format_and_node_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lqw"))
        .args([
            "density", "--tau", "2", "--points", "9", "--format", "csv", "--out",
        ])
        .arg(dir.path())
        .env("LQW_QUAD_NODES", "512")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("density.csv").exists());
    assert!(!dir.path().join("density.json").exists());
    let (headers, rows) = read_rows(&dir.path().join("density.csv"));
    assert_eq!(headers, ["x", "density"]);
    assert_eq!(rows.len(), 9);

    let o = lqw(
        &[
            "density", "--tau", "2", "--nodes", "256", "--format", "json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("density.json")).unwrap()).unwrap();
    assert_eq!(json["config"]["quadrature_nodes"], 256);
}

#[test]
fn localize_series_shape() {
    let dir = tempfile::tempdir().unwrap();
    let o = lqw(&["localize", "--tau", "6", "--steps", "120"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let (headers, rows) = read_rows(&dir.path().join("localize.csv"));
    assert_eq!(headers, ["t", "probability", "reference"]);
    assert_eq!(rows.len(), 120);
    assert_eq!(rows[0][0], "1");
}

#[test]
fn parse_examples() {
    assert_eq!(
        parse_complex("1/sqrt(2)").unwrap(),
        C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    );
    assert_eq!(parse_complex("0.5-0.5i").unwrap(), C64::new(0.5, -0.5));
    assert_eq!(parse_complex("i/2").unwrap(), C64::new(0.0, 0.5));
}

proptest! {
    #[test]
    fn complex_literals_round_trip(re in proptest::num::f64::NORMAL | proptest::num::f64::ZERO,
                                   im in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
        let z = C64::new(re, im);
        let back = parse_complex(&format_complex(z)).unwrap();
        prop_assert_eq!(back.re.to_bits(), z.re.to_bits());
        prop_assert_eq!(back.im.abs().to_bits(), z.im.abs().to_bits());
    }
}
