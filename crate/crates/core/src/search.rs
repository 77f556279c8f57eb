//! Greedy local search over a fixed grid of single-layer circuit candidates.
//!
//! Each round applies every candidate layer `U_B(beta) U_C(gamma)` to the
//! active state, evaluates the objective expectation, and keeps the candidate
//! with the smallest value. The grid is symmetric around zero and contains
//! the identity pair `(0, 0)`, so the active estimate never increases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::landscape::mu;
use crate::metrics::{approximation_ratios, success_probability};
use crate::objective::{
    gen_bimodal, gen_maxcut, gen_qubo, gen_random_graph, gen_uniform, normalize_sup, traceless,
    BitString, ObjectiveTable, TracelessObjective,
};
use crate::statevector::{phase_factors, LayerParams, StateVector};

/// Number of mixer angles per round.
pub const BETA_STEPS: usize = 11;
/// Number of phase-separator angles per round.
pub const GAMMA_STEPS: usize = 5;

/// The per-round candidate parameters: `BETA_STEPS x GAMMA_STEPS` pairs in
/// row-major order (beta outer), both axes equally spaced over
/// `[-range, range]` with `range = epsilon / ||H||_inf`.
#[derive(Clone, Debug)]
pub struct CandidateGrid {
    pairs: Vec<LayerParams>,
    betas: Vec<f64>,
    gammas: Vec<f64>,
    epsilon: f64,
    range: f64,
}

/// `steps` equally spaced points over `[-range, range]`; `steps` is odd, so
/// the midpoint is exactly zero and the endpoints exactly `±range`.
fn symmetric_axis(range: f64, steps: usize) -> Vec<f64> {
    debug_assert!(steps % 2 == 1);
    let half = (steps / 2) as i64;
    (0..steps)
        .map(|i| range * ((i as i64 - half) as f64 / half as f64))
        .collect()
}

impl CandidateGrid {
    pub fn pairs(&self) -> &[LayerParams] {
        &self.pairs
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Grid half-width `epsilon / ||H||_inf`.
    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }
}

pub fn build_grid(epsilon: f64, h_sup_norm: f64) -> Result<CandidateGrid> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidParam(format!(
            "epsilon must be positive (got {epsilon})"
        )));
    }
    if h_sup_norm <= 0.0 || !h_sup_norm.is_finite() {
        return Err(Error::InvalidParam(format!(
            "objective sup-norm must be positive (got {h_sup_norm})"
        )));
    }
    let range = epsilon / h_sup_norm;
    let betas = symmetric_axis(range, BETA_STEPS);
    let gammas = symmetric_axis(range, GAMMA_STEPS);
    let mut pairs = Vec::with_capacity(BETA_STEPS * GAMMA_STEPS);
    for &beta in &betas {
        for &gamma in &gammas {
            pairs.push(LayerParams { beta, gamma });
        }
    }
    Ok(CandidateGrid {
        pairs,
        betas,
        gammas,
        epsilon,
        range,
    })
}

/// Telemetry of one search round.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundRecord {
    /// Round index (= circuit depth after this round), starting at 1.
    pub p: usize,
    pub beta: f64,
    pub gamma: f64,
    /// Active estimate: objective expectation of the selected state.
    pub f_value: f64,
    pub success_prob: f64,
    pub approx_ratio_raw: Option<f64>,
    pub approx_ratio_norm: f64,
    /// Magnitude of the first derivative along the mixer trajectory.
    pub grad_b_mag: f64,
}

/// Apply one layer (phase separator, then mixer) for precomputed phases.
fn apply_layer_cached(state: &StateVector, phases: &[num_complex::Complex64], beta: f64) -> StateVector {
    let mut s = state.clone();
    s.apply_phases(phases);
    s.apply_mixer(beta);
    s
}

/// One search round: evaluate all candidates, keep the argmin (ties broken by
/// lowest grid index), and return the selected state with its telemetry.
pub fn step(
    state: &StateVector,
    grid: &CandidateGrid,
    c: &TracelessObjective,
    table: &ObjectiveTable,
    round: usize,
) -> Result<(StateVector, RoundRecord)> {
    if state.n_bits() != table.n_bits() || state.n_bits() != c.n_bits() {
        return Err(Error::DimensionMismatch {
            lhs: state.n_bits(),
            rhs: table.n_bits(),
        });
    }
    // The same gamma appears in BETA_STEPS candidates; compute each diagonal
    // once per round.
    let phase_cache: Vec<Vec<num_complex::Complex64>> = grid
        .gammas()
        .iter()
        .map(|&g| phase_factors(g, c))
        .collect();

    let mut best_idx = 0usize;
    let mut best_f = f64::INFINITY;
    for (i, pair) in grid.pairs().iter().enumerate() {
        let candidate = apply_layer_cached(state, &phase_cache[i % GAMMA_STEPS], pair.beta);
        let f = candidate.expectation(table)?;
        if f < best_f {
            best_f = f;
            best_idx = i;
        }
    }

    let chosen = grid.pairs()[best_idx];
    let next = apply_layer_cached(state, &phase_cache[best_idx % GAMMA_STEPS], chosen.beta);
    let ratios = approximation_ratios(&next, table)?;
    let record = RoundRecord {
        p: round,
        beta: chosen.beta,
        gamma: chosen.gamma,
        f_value: best_f,
        success_prob: success_probability(&next, table.argmin_set())?,
        approx_ratio_raw: ratios.raw,
        approx_ratio_norm: ratios.normalized,
        grad_b_mag: next.grad_b(table)?.abs(),
    };
    Ok((next, record))
}

/// Problem-instance specification; fully determines the objective table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectiveSpec {
    Uniform { n_bits: u8, seed: u64, lo: f64, hi: f64 },
    Bimodal { n_bits: u8, seed: u64, lo: f64, hi: f64 },
    Qubo { n_bits: u8, seed: u64 },
    MaxCut { n_vertices: usize, edge_prob: f64, seed: u64 },
    /// Constant objective; a test hook for degenerate-landscape paths.
    Constant { n_bits: u8, value: f64 },
    /// Explicit value table loaded from the flat CSV format.
    File { path: String },
}

impl ObjectiveSpec {
    pub fn build(&self) -> Result<ObjectiveTable> {
        match *self {
            ObjectiveSpec::Uniform { n_bits, seed, lo, hi } => gen_uniform(n_bits, seed, lo, hi),
            ObjectiveSpec::Bimodal { n_bits, seed, lo, hi } => gen_bimodal(n_bits, seed, lo, hi),
            ObjectiveSpec::Qubo { n_bits, seed } => gen_qubo(n_bits, seed),
            ObjectiveSpec::MaxCut {
                n_vertices,
                edge_prob,
                seed,
            } => gen_maxcut(&gen_random_graph(n_vertices, edge_prob, seed)?),
            ObjectiveSpec::Constant { n_bits, value } => {
                ObjectiveTable::from_values(n_bits, vec![value; 1usize << n_bits])
            }
            ObjectiveSpec::File { ref path } => {
                let file = std::fs::File::open(path)?;
                let (table, _, _) = crate::io::read_table_csv(file)?;
                Ok(table)
            }
        }
    }

    /// The seed driving instance randomness, if any.
    pub fn set_seed(&mut self, new_seed: u64) {
        match self {
            ObjectiveSpec::Uniform { seed, .. }
            | ObjectiveSpec::Bimodal { seed, .. }
            | ObjectiveSpec::Qubo { seed, .. }
            | ObjectiveSpec::MaxCut { seed, .. } => *seed = new_seed,
            ObjectiveSpec::Constant { .. } | ObjectiveSpec::File { .. } => {}
        }
    }
}

/// Initial state of a search run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialStateSpec {
    /// Uniform superposition.
    #[default]
    Plus,
    /// `normalize(|z> + delta |+>)` for an explicit string.
    NearEigenstate { z: u32, delta: f64 },
    /// As above, with `z` chosen as the most trap-like non-optimal string.
    NearTrap { delta: f64 },
}

/// Everything a run needs; two runs with equal configs produce identical
/// telemetry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub objective: ObjectiveSpec,
    pub epsilon: f64,
    pub max_rounds: usize,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
    #[serde(default)]
    pub initial_state: InitialStateSpec,
}

fn default_record_every() -> usize {
    1
}

/// Outcome of [`run`]: the sup-normalized table the search ran on, the
/// recorded telemetry, and the final state.
#[derive(Clone, Debug)]
pub struct SearchRun {
    pub table: ObjectiveTable,
    pub records: Vec<RoundRecord>,
    pub final_state: StateVector,
    /// The eigenstate string of a near-eigenstate start, if one was used.
    pub start_string: Option<BitString>,
}

/// `normalize(|z> + delta |+>)`; overlap with `|z>` approaches 1 as
/// `delta -> 0`.
pub fn near_eigenstate_init(z: BitString, delta: f64) -> Result<StateVector> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParam(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let dim = 1usize << z.n_bits();
    let background = delta / (dim as f64).sqrt();
    let mut amps = vec![num_complex::Complex64::new(background, 0.0); dim];
    amps[z.index()] += num_complex::Complex64::ONE;
    StateVector::normalized(z.n_bits(), amps)
}

/// The non-optimal string with the largest positive `mu`, i.e. the most
/// trap-like saddle. Ties broken by lowest string value.
pub fn pick_trap_string(table: &ObjectiveTable) -> Result<BitString> {
    let mut best: Option<(BitString, f64)> = None;
    for index in 0..table.len() {
        let z = BitString::new(index as u32, table.n_bits()).expect("index in range");
        if table.argmin_set().contains(&z) {
            continue;
        }
        let m = mu(table, z);
        if m > 0.0 && best.is_none_or(|(_, bm)| m > bm) {
            best = Some((z, m));
        }
    }
    best.map(|(z, _)| z).ok_or(Error::NoTrap)
}

/// Run the full search: normalize the objective to unit sup-norm, build the
/// grid, and iterate [`step`] for `max_rounds` rounds, recording every
/// `record_every`-th round plus the final one.
pub fn run(config: &SearchConfig) -> Result<SearchRun> {
    if config.max_rounds < 1 {
        return Err(Error::InvalidParam("max_rounds must be at least 1".into()));
    }
    if config.record_every < 1 {
        return Err(Error::InvalidParam("record_every must be at least 1".into()));
    }
    let raw = config.objective.build()?;
    let table = normalize_sup(&raw)?;
    let c = traceless(&table);
    let grid = build_grid(config.epsilon, table.sup_norm())?;

    let (mut state, start_string) = match config.initial_state {
        InitialStateSpec::Plus => (StateVector::plus_state(table.n_bits())?, None),
        InitialStateSpec::NearEigenstate { z, delta } => {
            let z = BitString::new(z, table.n_bits())?;
            (near_eigenstate_init(z, delta)?, Some(z))
        }
        InitialStateSpec::NearTrap { delta } => {
            let z = pick_trap_string(&table)?;
            (near_eigenstate_init(z, delta)?, Some(z))
        }
    };

    let mut records = Vec::new();
    for p in 1..=config.max_rounds {
        let (next, record) = step(&state, &grid, &c, &table, p)?;
        if p % config.record_every == 0 || p == config.max_rounds {
            records.push(record);
        }
        state = next;
    }
    Ok(SearchRun {
        table,
        records,
        final_state: state,
        start_string,
    })
}
