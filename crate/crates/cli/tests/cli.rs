// Copyright 2026 The clifford-vqd Authors
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

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clifford-vqd"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn solve_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&[
        "solve",
        "--hamiltonian",
        data("xx_zz.txt").to_str().unwrap(),
        "--levels",
        "2",
        "--blocks",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "point_label,level,energy_ha,penalty_ha,cost_ha,exact_ha,abs_error_ha,params");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("xx_zz,0,-2.000000000000,"), "{}", lines[1]);
}

#[test]
fn solve_is_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "4"].iter().enumerate() {
        let out = dir.path().join(format!("r{i}.json"));
        let o = run(&[
            "--threads",
            threads,
            "solve",
            "--hamiltonian",
            data("xx_half_z.txt").to_str().unwrap(),
            "--levels",
            "3",
            "--blocks",
            "1",
            "--search",
            "cd",
            "--seed",
            "9",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn sweep_and_refine() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = run(&[
        "sweep",
        "--manifest",
        data("sweep_example.toml").to_str().unwrap(),
        "--blocks",
        "1",
        "--beta",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 7);

    let out = dir.path().join("r.csv");
    let o = run(&[
        "refine",
        "--hamiltonian",
        data("diag_zi_2iz.txt").to_str().unwrap(),
        "--levels",
        "1",
        "--cold-seeds",
        "2",
        "--tolerance",
        "1e-3",
        "--blocks",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().starts_with("0,clifford_warm,,-3.000000000000,-3.000000000000,0,"));
}

#[test]
fn validate_passes_on_shipped_files() {
    let mut args = vec!["validate".to_string(), "--samples".into(), "200".into()];
    for f in ["diag_zi_2iz.txt", "xx_zz.txt", "xx_half_z.txt"] {
        args.push("--hamiltonian".into());
        args.push(data(f).to_string_lossy().into_owned());
    }
    let o = bin().args(&args).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("ok"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();

    assert_eq!(code(&run(&["solve", "--levels", "1"])), 2);
    assert_eq!(code(&run(&["solve", "--hamiltonian", "x", "--levels", "1", "--beta", "-1", "--out", out])), 2);

    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&run(&["solve", "--hamiltonian", missing.to_str().unwrap(), "--levels", "1", "--out", out])), 3);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1.0 ZQ\n").unwrap();
    let o = run(&["solve", "--hamiltonian", bad.to_str().unwrap(), "--levels", "1", "--out", out]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let unwritable = dir.path().join("no/such/dir/r.csv");
    let o = run(&[
        "solve",
        "--hamiltonian",
        data("xx_zz.txt").to_str().unwrap(),
        "--levels",
        "1",
        "--blocks",
        "1",
        "--out",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);

    // Three-qubit file against a two-qubit validation run.
    let three = dir.path().join("three.txt");
    fs::write(&three, "1.0 ZZZ\n").unwrap();
    assert_eq!(code(&run(&["validate", "--samples", "5", "--hamiltonian", three.to_str().unwrap()])), 2);
}
