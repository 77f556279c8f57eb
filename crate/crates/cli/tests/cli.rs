//! End-to-end tests of the command-line runner: artifact layout, schema
//! basics, error paths, and bitwise reproducibility of outputs.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qaoa-landscape"))
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("config.toml");
    fs::write(&path, body).unwrap();
    path
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {}\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

const QUBO5: &str = r#"
[objective]
kind = "qubo"
n_bits = 5
seed = 3

[search]
epsilon = 0.1
max_rounds = 20
record_every = 1
"#;

#[test]
fn run_writes_expected_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), QUBO5);
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);

    let records = fs::read_to_string(out_dir.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 21); // header + 20 rounds
    assert!(records.starts_with(
        "p,beta,gamma,f_value,success_prob,approx_ratio_raw,approx_ratio_norm,grad_b_mag"
    ));

    let dist = fs::read_to_string(out_dir.join("distribution.csv")).unwrap();
    assert_eq!(dist.lines().count(), 33); // header + 32 strings

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["schema_version"], 1);
    assert_eq!(summary["command"], "run");
    assert_eq!(summary["rounds"], 20);
    assert!(summary["final_metrics"]["success_prob"].is_number());
    assert_eq!(summary["config"]["objective"]["kind"], "qubo");
}

#[test]
fn run_single_round_has_one_record() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"qubo\"\nn_bits = 4\nseed = 1\n\n[search]\nmax_rounds = 1\n",
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let records = fs::read_to_string(out_dir.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 2);
}

#[test]
fn reruns_are_bitwise_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), QUBO5);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for dir in [&a, &b] {
        run_ok(&[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
        ]);
    }
    for name in ["records.csv", "distribution.csv", "summary.json"] {
        let x = fs::read(a.join(name)).unwrap();
        let y = fs::read(b.join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between identical runs");
    }
}

#[test]
fn seed_override_changes_instance() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), QUBO5);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        a.to_str().unwrap(),
    ]);
    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        b.to_str().unwrap(),
        "--seed",
        "99",
    ]);
    let x = fs::read(a.join("records.csv")).unwrap();
    let y = fs::read(b.join("records.csv")).unwrap();
    assert_ne!(x, y);
}

#[test]
fn landscape_exhaustive_and_sampled() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"qubo\"\nn_bits = 8\nseed = 2\n",
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "landscape",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let mu_f = fs::read_to_string(out_dir.join("mu_f.csv")).unwrap();
    assert_eq!(mu_f.lines().count(), 257); // header + 256 strings
    assert!(mu_f.starts_with("z_decimal,f,mu,mu_tilde,eps_bound"));
    let stats: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("stats.json")).unwrap()).unwrap();
    assert_eq!(stats["n_points"], 256);
    assert!(stats["stats"]["frac_mu_positive"].is_number());

    let cfg2 = write_config(
        tmp.path(),
        "[objective]\nkind = \"qubo\"\nn_bits = 8\nseed = 2\n\n[landscape]\nmode = \"sample\"\nsize = 40\nseed = 7\n",
    );
    let out2 = tmp.path().join("out2");
    run_ok(&[
        "landscape",
        "--config",
        cfg2.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    let mu_f = fs::read_to_string(out2.join("mu_f.csv")).unwrap();
    assert_eq!(mu_f.lines().count(), 41);
}

#[test]
fn landscape_constant_objective_all_zero_mu() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"constant\"\nn_bits = 4\nvalue = 2.0\n",
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "landscape",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let mu_f = fs::read_to_string(out_dir.join("mu_f.csv")).unwrap();
    for line in mu_f.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[2], "0.0"); // mu
    }
}

#[test]
fn severing_verdicts() {
    let tmp = tempfile::tempdir().unwrap();
    // Constant objective: value violation, still exit 0.
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"constant\"\nn_bits = 3\nvalue = 1.0\n",
    );
    let out_dir = tmp.path().join("out");
    let out = run_ok(&[
        "severing",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("degenerate values"), "stdout: {text}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("severing.json")).unwrap()).unwrap();
    assert_eq!(report["report"]["severing"], false);

    // Random table: severing with probability one.
    let cfg2 = write_config(
        tmp.path(),
        "[objective]\nkind = \"uniform\"\nn_bits = 9\nseed = 5\nlo = -1.0\nhi = 1.0\n",
    );
    let out2 = tmp.path().join("out2");
    let out = run_ok(&[
        "severing",
        "--config",
        cfg2.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("severing: all values"));
}

#[test]
fn severing_resonance_from_table_file() {
    // An arithmetic progression has equal differences; load it via the
    // flat table format.
    let tmp = tempfile::tempdir().unwrap();
    let table_path = tmp.path().join("ap.csv");
    fs::write(&table_path, "n_bits,kind,seed\n2,file,0\n0.0\n1.0\n2.0\n3.0\n").unwrap();
    let cfg = write_config(
        tmp.path(),
        &format!(
            "[objective]\nkind = \"file\"\npath = \"{}\"\n",
            table_path.to_str().unwrap().replace('\\', "/")
        ),
    );
    let out_dir = tmp.path().join("out");
    let out = run_ok(&[
        "severing",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("degenerate resonance"), "stdout: {text}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("severing.json")).unwrap()).unwrap();
    assert_eq!(report["report"]["violation"]["type"], "degenerate_resonance");
}

#[test]
fn landscape_thirteen_bit_instance() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"qubo\"\nn_bits = 13\nseed = 0\n",
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "landscape",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let mu_f = fs::read_to_string(out_dir.join("mu_f.csv")).unwrap();
    assert_eq!(mu_f.lines().count(), 8193);
}

#[test]
fn trap_demo_artifacts_and_no_trap_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"qubo\"\nn_bits = 5\nseed = 3\n",
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "trap-demo",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["command"], "trap_demo");
    assert!(summary["trap"]["final_weight"].as_f64().unwrap() > 0.5);

    // A constant objective has no trap: nonzero exit with a message.
    let cfg2 = write_config(
        tmp.path(),
        "[objective]\nkind = \"constant\"\nn_bits = 4\nvalue = 1.0\n",
    );
    let out = bin()
        .args([
            "trap-demo",
            "--config",
            cfg2.to_str().unwrap(),
            "--out",
            tmp.path().join("out2").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no trap") || err.contains("sup-norm"), "stderr: {err}");
}

#[test]
fn sweep_writes_one_record_set_per_epsilon() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"qubo\"\nn_bits = 5\nseed = 3\n\n[search]\nmax_rounds = 15\n\n[sweep]\nepsilons = [0.01, 0.1, 1.0]\n",
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    for eps in ["0.01", "0.1", "1"] {
        assert!(out_dir.join(format!("eps_{eps}")).join("records.csv").exists());
    }
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("sweep_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["runs"].as_array().unwrap().len(), 3);
}

#[test]
fn invalid_config_fails_with_message() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "[objective]\nkind = \"nope\"\n");
    let out = bin()
        .args(["run", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parsing"));

    let missing = bin().args(["run"]).output().unwrap();
    assert!(!missing.status.success());
}

#[test]
fn dump_state_flag_writes_statevector() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[objective]\nkind = \"qubo\"\nn_bits = 4\nseed = 1\n\n[search]\nmax_rounds = 2\n",
    );
    let out_dir = tmp.path().join("out");
    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--dump-state",
    ]);
    let state = fs::read_to_string(out_dir.join("state.csv")).unwrap();
    assert_eq!(state.lines().count(), 17);
}
