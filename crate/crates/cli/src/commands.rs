//! Subcommand implementations. Each writes its artifacts into the output
//! directory and echoes the full configuration into the summary document so
//! results can be regenerated exactly.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;

use qaoa_landscape::io as qio;
use qaoa_landscape::landscape::{diagram_stats, mu_f_diagram, DiagramMode, DiagramStats};
use qaoa_landscape::metrics::{longest_plateau, outcome_distribution};
use qaoa_landscape::search::{self, InitialStateSpec, RoundRecord, SearchConfig, SearchRun};
use qaoa_landscape::universality::{check_severing, SeveringReport, Violation};

use crate::config::{ExperimentConfig, LandscapeSection, SCHEMA_VERSION};

#[derive(Serialize)]
struct FinalMetrics {
    f_value: f64,
    success_prob: f64,
    approx_ratio_raw: Option<f64>,
    approx_ratio_norm: f64,
    grad_b_mag: f64,
}

impl From<&RoundRecord> for FinalMetrics {
    fn from(r: &RoundRecord) -> Self {
        Self {
            f_value: r.f_value,
            success_prob: r.success_prob,
            approx_ratio_raw: r.approx_ratio_raw,
            approx_ratio_norm: r.approx_ratio_norm,
            grad_b_mag: r.grad_b_mag,
        }
    }
}

#[derive(Serialize)]
struct TrapInfo {
    string: u32,
    final_weight: f64,
}

#[derive(Serialize)]
struct RunSummary<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a ExperimentConfig,
    n_bits: u8,
    f_min: f64,
    f_max: f64,
    argmin: Vec<u32>,
    rounds: usize,
    records_written: usize,
    start_string: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trap: Option<TrapInfo>,
    final_metrics: FinalMetrics,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    use std::io::Write;
    writeln!(w)?;
    Ok(())
}

fn write_run_artifacts(
    out: &Path,
    cfg: &ExperimentConfig,
    command: &'static str,
    run: &SearchRun,
    rounds: usize,
    dump_state: bool,
) -> anyhow::Result<()> {
    fs::create_dir_all(out)?;
    qio::write_records_csv(File::create(out.join("records.csv"))?, &run.records)?;
    let dist = outcome_distribution(&run.final_state);
    qio::write_distribution_csv(File::create(out.join("distribution.csv"))?, &dist)?;
    if dump_state {
        qio::write_state_csv(File::create(out.join("state.csv"))?, &run.final_state)?;
    }

    let trap = run.start_string.map(|z| TrapInfo {
        string: z.value(),
        final_weight: run.final_state.overlap_probability(z).unwrap_or(0.0),
    });
    let last = run.records.last().expect("at least one record");
    let summary = RunSummary {
        schema_version: SCHEMA_VERSION,
        command,
        config: cfg,
        n_bits: run.table.n_bits(),
        f_min: run.table.f_min(),
        f_max: run.table.f_max(),
        argmin: run.table.argmin_set().iter().map(|z| z.value()).collect(),
        rounds,
        records_written: run.records.len(),
        start_string: run.start_string.map(|z| z.value()),
        trap,
        final_metrics: FinalMetrics::from(last),
    };
    write_json(&out.join("summary.json"), &summary)?;
    Ok(())
}

pub fn cmd_run(cfg: &ExperimentConfig, out: &Path, dump_state: bool) -> anyhow::Result<()> {
    let sc = SearchConfig {
        objective: cfg.objective.clone(),
        epsilon: cfg.search.epsilon,
        max_rounds: cfg.search.max_rounds,
        record_every: cfg.search.record_every,
        initial_state: cfg.search.initial_state.clone(),
    };
    let run = search::run(&sc)?;
    write_run_artifacts(out, cfg, "run", &run, sc.max_rounds, dump_state)?;
    let last = run.records.last().expect("at least one record");
    println!(
        "run: {} rounds, final f = {:.6}, success probability = {:.6}",
        sc.max_rounds, last.f_value, last.success_prob
    );
    Ok(())
}

pub fn cmd_trap_demo(cfg: &ExperimentConfig, out: &Path, dump_state: bool) -> anyhow::Result<()> {
    let sc = SearchConfig {
        objective: cfg.objective.clone(),
        epsilon: cfg.trap_demo.epsilon,
        max_rounds: cfg.trap_demo.max_rounds,
        record_every: 1,
        initial_state: InitialStateSpec::NearTrap {
            delta: cfg.trap_demo.delta,
        },
    };
    let run = search::run(&sc)?;
    write_run_artifacts(out, cfg, "trap_demo", &run, sc.max_rounds, dump_state)?;
    let z = run.start_string.expect("near-trap start");
    println!(
        "trap-demo: started next to string {}, final weight there = {:.6}",
        z,
        run.final_state.overlap_probability(z)?
    );
    Ok(())
}

#[derive(Serialize)]
struct LandscapeSummary<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a ExperimentConfig,
    n_bits: u8,
    n_points: usize,
    stats: DiagramStats,
}

pub fn cmd_landscape(cfg: &ExperimentConfig, out: &Path) -> anyhow::Result<()> {
    let table = cfg.objective.build()?;
    let mode = match cfg.landscape {
        LandscapeSection::Exhaustive => DiagramMode::Exhaustive,
        LandscapeSection::Sample { size, seed } => DiagramMode::Sample { size, seed },
    };
    let points = mu_f_diagram(&table, mode)?;
    let stats = diagram_stats(&points, table.argmin_set())?;

    fs::create_dir_all(out)?;
    qio::write_mu_f_csv(File::create(out.join("mu_f.csv"))?, &points)?;
    let summary = LandscapeSummary {
        schema_version: SCHEMA_VERSION,
        command: "landscape",
        config: cfg,
        n_bits: table.n_bits(),
        n_points: points.len(),
        stats,
    };
    write_json(&out.join("stats.json"), &summary)?;
    println!(
        "landscape: {} points, fraction with positive mu = {:.4}",
        points.len(),
        summary.stats.frac_mu_positive
    );
    Ok(())
}

#[derive(Serialize)]
struct SeveringSummary<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a ExperimentConfig,
    report: SeveringReport,
}

pub fn cmd_severing(cfg: &ExperimentConfig, out: &Path) -> anyhow::Result<()> {
    let table = cfg.objective.build()?;
    let report = check_severing(&table, cfg.severing.tol)?;
    fs::create_dir_all(out)?;
    write_json(
        &out.join("severing.json"),
        &SeveringSummary {
            schema_version: SCHEMA_VERSION,
            command: "severing",
            config: cfg,
            report,
        },
    )?;
    // The verdict is data, not an error: always exit 0.
    match report.violation {
        Violation::None => println!("severing: all values and value differences distinct"),
        Violation::DegenerateValues { z, z_prime } => {
            println!("not severing: degenerate values at strings {z} and {z_prime}")
        }
        Violation::DegenerateResonance { pair_a, pair_b } => println!(
            "not severing: degenerate resonance f({}) - f({}) = f({}) - f({})",
            pair_a.0, pair_a.1, pair_b.0, pair_b.1
        ),
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepEntry {
    epsilon: f64,
    out_dir: String,
    final_metrics: FinalMetrics,
    /// Longest run of consecutive rounds with success probability constant
    /// within 1e-9.
    max_success_plateau: usize,
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a ExperimentConfig,
    runs: Vec<SweepEntry>,
}

pub fn cmd_sweep(cfg: &ExperimentConfig, out: &Path) -> anyhow::Result<()> {
    if cfg.sweep.epsilons.is_empty() {
        anyhow::bail!("sweep.epsilons must be nonempty");
    }
    fs::create_dir_all(out)?;
    let mut entries = Vec::new();
    for &eps in &cfg.sweep.epsilons {
        let sub = out.join(format!("eps_{eps}"));
        let sc = SearchConfig {
            objective: cfg.objective.clone(),
            epsilon: eps,
            max_rounds: cfg.search.max_rounds,
            record_every: cfg.search.record_every,
            initial_state: cfg.search.initial_state.clone(),
        };
        let run = search::run(&sc)?;
        write_run_artifacts(&sub, cfg, "sweep", &run, sc.max_rounds, false)?;
        let series: Vec<f64> = run.records.iter().map(|r| r.success_prob).collect();
        let last = run.records.last().expect("at least one record");
        entries.push(SweepEntry {
            epsilon: eps,
            out_dir: sub
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            final_metrics: FinalMetrics::from(last),
            max_success_plateau: longest_plateau(&series, 1e-9),
        });
        println!(
            "sweep eps={eps}: final success probability = {:.6}",
            last.success_prob
        );
    }
    write_json(
        &out.join("sweep_summary.json"),
        &SweepSummary {
            schema_version: SCHEMA_VERSION,
            command: "sweep",
            config: cfg,
            runs: entries,
        },
    )?;
    Ok(())
}
