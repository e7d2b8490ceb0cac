//! End-to-end tests of the `lsgbp` binary: flag handling, exit codes,
//! output determinism, and the contract that every emitted solution file
//! re-verifies under `eval`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lsgbp_cli::{InstanceFile, PiTag, SolutionFile};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lsgbp")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("LSGBP_THREADS")
        .output()
        .expect("binary runs")
}

fn write_instance(dir: &Path, name: &str, file: &InstanceFile) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(file).unwrap()).unwrap();
    path
}

fn sample_instances() -> Vec<(&'static str, InstanceFile)> {
    vec![
        (
            "cut.json",
            InstanceFile::MaxCCut {
                n: 5,
                edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
                c: 2,
            },
        ),
        (
            "ce.json",
            InstanceFile::ClusterEditing {
                n: 4,
                edges: vec![(0, 1), (1, 2), (0, 2)],
            },
        ),
        (
            "vbp.json",
            InstanceFile::Vbp {
                vectors: vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
                bin_weights: vec![vec![1, 1], vec![2, 1]],
            },
        ),
        (
            "mk.json",
            InstanceFile::MultiKnapsack {
                capacities: vec![3, 4],
                values: vec![vec![2, 1], vec![1, 3], vec![2, 2]],
                weights: vec![vec![2, 2], vec![1, 3], vec![3, 1]],
            },
        ),
        (
            "nash.json",
            InstanceFile::Nash {
                utilities: vec![vec![1, 2, 3, 1], vec![2, 1, 1, 3]],
            },
        ),
        (
            "pi.json",
            InstanceFile::PiDeletion {
                n: 5,
                edges: vec![(0, 1), (1, 2), (3, 4)],
                c: 2,
                pi: PiTag::Edgeless,
            },
        ),
    ]
}

#[test]
fn solve_outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (name, file) in sample_instances() {
        let instance = write_instance(dir.path(), name, &file);
        for seed in ["0", "7"] {
            for strategy in ["best", "first"] {
                let out_a = dir.path().join(format!("a-{seed}-{strategy}-{name}"));
                let out_b = dir.path().join(format!("b-{seed}-{strategy}-{name}"));
                for out in [&out_a, &out_b] {
                    let r = run(&[
                        "solve",
                        "--instance",
                        instance.to_str().unwrap(),
                        "--seed",
                        seed,
                        "-k",
                        "2",
                        "--strategy",
                        strategy,
                        "--output",
                        out.to_str().unwrap(),
                    ]);
                    assert!(r.status.success(), "{name} seed {seed}: {r:?}");
                }
                assert_eq!(
                    fs::read(&out_a).unwrap(),
                    fs::read(&out_b).unwrap(),
                    "{name} seed {seed} strategy {strategy} differs between runs"
                );
            }
        }
    }
}

#[test]
fn every_emitted_solution_passes_eval() {
    let dir = tempfile::tempdir().unwrap();
    for (name, file) in sample_instances() {
        let instance = write_instance(dir.path(), name, &file);
        let out = dir.path().join(format!("sol-{name}"));
        let r = run(&[
            "solve",
            "--instance",
            instance.to_str().unwrap(),
            "-k",
            "1",
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success());
        let r = run(&[
            "eval",
            "--instance",
            instance.to_str().unwrap(),
            "--solution",
            out.to_str().unwrap(),
        ]);
        assert_eq!(r.status.code(), Some(0), "{name}: {r:?}");
    }
}

#[test]
fn eval_rejects_a_tampered_value() {
    let dir = tempfile::tempdir().unwrap();
    let (name, file) = &sample_instances()[0];
    let instance = write_instance(dir.path(), name, file);
    let out = dir.path().join("sol.json");
    assert!(run(&[
        "solve",
        "--instance",
        instance.to_str().unwrap(),
        "-k",
        "1",
        "--output",
        out.to_str().unwrap(),
    ])
    .status
    .success());

    let mut solution: SolutionFile =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    solution.value = Some("123456".into());
    fs::write(&out, serde_json::to_string(&solution).unwrap()).unwrap();

    let r = run(&[
        "eval",
        "--instance",
        instance.to_str().unwrap(),
        "--solution",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(1));
    let stdout = String::from_utf8(r.stdout).unwrap();
    assert!(stdout.contains("value="), "recomputed value missing: {stdout}");
    assert!(stdout.contains("recorded=123456"), "recorded value missing: {stdout}");
}

#[test]
fn verify_types_holds_on_shipped_instances() {
    let dir = tempfile::tempdir().unwrap();
    for (name, file) in sample_instances() {
        let instance = write_instance(dir.path(), name, &file);
        let r = run(&["verify-types", "--instance", instance.to_str().unwrap()]);
        assert_eq!(r.status.code(), Some(0), "{name}: {r:?}");
        let stdout = String::from_utf8(r.stdout).unwrap();
        assert!(stdout.contains("holds=true"), "{name}: {stdout}");
        assert!(stdout.contains("exhaustive=true"), "{name}: {stdout}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (name, file) = &sample_instances()[0];
    let instance = write_instance(dir.path(), name, file);
    let inst = instance.to_str().unwrap();

    // Missing required radius.
    let r = run(&["solve", "--instance", inst]);
    assert_eq!(r.status.code(), Some(2));
    // Unknown flag.
    let r = run(&["solve", "--instance", inst, "-k", "1", "--frobnicate"]);
    assert_eq!(r.status.code(), Some(2));
    // Unknown subcommand.
    let r = run(&["optimize"]);
    assert_eq!(r.status.code(), Some(2));
    // Conflicting init flags.
    let r = run(&[
        "solve", "--instance", inst, "-k", "1",
        "--init", "x.json", "--init-strategy", "greedy",
    ]);
    assert_eq!(r.status.code(), Some(2));
    // Mismatched problem tag.
    let r = run(&["solve", "--instance", inst, "-k", "1", "--problem", "nash"]);
    assert_eq!(r.status.code(), Some(2));
    // Missing instance file.
    let r = run(&["solve", "--instance", "/nonexistent.json", "-k", "1"]);
    assert_eq!(r.status.code(), Some(2));
    // Help is not a failure.
    let r = run(&["--help"]);
    assert_eq!(r.status.code(), Some(0));
}

#[test]
fn init_file_feeds_the_search_and_expect_improve_signals() {
    let dir = tempfile::tempdir().unwrap();
    let (name, file) = &sample_instances()[0];
    let instance = write_instance(dir.path(), name, file);
    let first = dir.path().join("first.json");
    // Run to a local optimum.
    assert!(run(&[
        "solve",
        "--instance",
        instance.to_str().unwrap(),
        "--seed",
        "3",
        "-k",
        "2",
        "--output",
        first.to_str().unwrap(),
    ])
    .status
    .success());
    // Restarting from it cannot improve: --expect-improve must exit 1.
    let r = run(&[
        "solve",
        "--instance",
        instance.to_str().unwrap(),
        "--init",
        first.to_str().unwrap(),
        "-k",
        "2",
        "--expect-improve",
    ]);
    assert_eq!(r.status.code(), Some(1), "{r:?}");
}

#[test]
fn threads_do_not_change_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let (name, file) = &sample_instances()[2];
    let instance = write_instance(dir.path(), name, file);
    let single = dir.path().join("t1.json");
    let multi = dir.path().join("t4.json");
    let env_based = dir.path().join("env.json");
    for (out, threads) in [(&single, "1"), (&multi, "4")] {
        assert!(run(&[
            "solve",
            "--instance",
            instance.to_str().unwrap(),
            "-k",
            "2",
            "--threads",
            threads,
            "--output",
            out.to_str().unwrap(),
        ])
        .status
        .success());
    }
    let r = Command::new(bin())
        .args([
            "solve",
            "--instance",
            instance.to_str().unwrap(),
            "-k",
            "2",
            "--output",
            env_based.to_str().unwrap(),
        ])
        .env("LSGBP_THREADS", "4")
        .output()
        .unwrap();
    assert!(r.status.success());
    let bytes = fs::read(&single).unwrap();
    assert_eq!(bytes, fs::read(&multi).unwrap());
    assert_eq!(bytes, fs::read(&env_based).unwrap());

    // A malformed env fallback is a usage error.
    let r = Command::new(bin())
        .args(["solve", "--instance", instance.to_str().unwrap(), "-k", "1"])
        .env("LSGBP_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn greedy_init_strategy_works() {
    let dir = tempfile::tempdir().unwrap();
    let (name, file) = &sample_instances()[3];
    let instance = write_instance(dir.path(), name, file);
    let out = dir.path().join("greedy.json");
    let r = run(&[
        "solve",
        "--instance",
        instance.to_str().unwrap(),
        "--init-strategy",
        "greedy",
        "-k",
        "1",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{r:?}");
    let solution: SolutionFile =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    // A greedy start on this knapsack instance is never Worst.
    assert_ne!(solution.value.as_deref(), Some("worst"));
}

#[test]
fn stats_go_to_stderr_as_key_value_lines() {
    let dir = tempfile::tempdir().unwrap();
    let (name, file) = &sample_instances()[0];
    let instance = write_instance(dir.path(), name, file);
    let out = dir.path().join("sol.json");
    let r = run(&[
        "solve",
        "--instance",
        instance.to_str().unwrap(),
        "-k",
        "1",
        "--stats",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    assert!(r.stdout.is_empty(), "solution went to the file, not stdout");
    let stderr = String::from_utf8(r.stderr).unwrap();
    let keys: Vec<&str> = stderr
        .lines()
        .filter_map(|line| line.split_once('=').map(|(k, _)| k))
        .collect();
    assert_eq!(
        keys,
        ["deltas_enumerated", "table_entries", "ibe_evals", "wall_ms"],
        "stderr was: {stderr}"
    );

    // The oracle prints the same keys, zeroed where not applicable.
    let r = run(&[
        "oracle",
        "--instance",
        instance.to_str().unwrap(),
        "-k",
        "1",
        "--stats",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let stderr = String::from_utf8(r.stderr).unwrap();
    assert!(stderr.contains("deltas_enumerated=0"), "{stderr}");
    assert!(stderr.contains("table_entries=0"), "{stderr}");
}

#[test]
fn clique_deletion_instances_parse_and_solve() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write_instance(
        dir.path(),
        "clique.json",
        &InstanceFile::PiDeletion {
            n: 4,
            edges: vec![(0, 1), (1, 2), (0, 2), (2, 3)],
            c: 1,
            pi: PiTag::Clique,
        },
    );
    let out = dir.path().join("sol.json");
    let r = run(&[
        "solve",
        "--instance",
        instance.to_str().unwrap(),
        "-k",
        "2",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{r:?}");
    let r = run(&[
        "eval",
        "--instance",
        instance.to_str().unwrap(),
        "--solution",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(0));
}

#[test]
fn oracle_budget_violations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let g = lsgbp::gen::gnp_graph(60, 0.1, 5);
    let instance = write_instance(
        dir.path(),
        "big.json",
        &InstanceFile::MaxCCut {
            n: 60,
            edges: g.edges().to_vec(),
            c: 2,
        },
    );
    let r = run(&[
        "oracle",
        "--instance",
        instance.to_str().unwrap(),
        "-k",
        "3",
    ]);
    assert_eq!(r.status.code(), Some(2), "{r:?}");
    let stderr = String::from_utf8(r.stderr).unwrap();
    assert!(stderr.contains("budget"), "{stderr}");
}
