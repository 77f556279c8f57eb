//! Classical landscape diagnostics derived from the objective table alone:
//! the neighbor-average statistic `mu`, valley-radius bounds, trough
//! membership, and the `(f, mu)` diagram with summary statistics.
//!
//! `mu(z)` is the average signed difference of `f` between `z` and its `N`
//! Hamming-1 neighbors. A string with `mu(z) > 0` sits at the center of a
//! valley whose trace-distance radius is bounded by `mu_tilde(z) / (2N)`.

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::objective::{traceless, BitString, ObjectiveTable, TracelessObjective};
use crate::statevector::StateVector;

/// One point of the `(f, mu)` diagram with its bound annotations.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MuFPoint {
    #[serde(rename = "z_decimal")]
    pub z: BitString,
    #[serde(rename = "f")]
    pub f_val: f64,
    pub mu: f64,
    pub mu_tilde: f64,
    pub eps_bound: f64,
}

/// Fixed binning of the diagram density histogram.
pub const HIST_BINS: usize = 64;

/// Row-major `HIST_BINS x HIST_BINS` counts over the diagram bounding box
/// (`f` on the first axis, `mu` on the second).
#[derive(Clone, Debug, Serialize)]
pub struct DiagramHistogram {
    pub f_min: f64,
    pub f_max: f64,
    pub mu_min: f64,
    pub mu_max: f64,
    pub bins: usize,
    pub counts: Vec<u32>,
}

/// Answers to the diagram questions: trap fraction, depth/size correlation,
/// and whether the deepest point carries the largest valley.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramStats {
    pub frac_mu_positive: f64,
    pub pearson_f_mu: f64,
    /// False when either marginal has zero variance; the correlation is then
    /// reported as 0.
    pub pearson_defined: bool,
    pub argmax_mu: BitString,
    pub deepest_is_largest: bool,
    pub histogram: DiagramHistogram,
}

/// Average signed difference of `f` to the `N` Hamming-1 neighbors.
pub fn mu(table: &ObjectiveTable, z: BitString) -> f64 {
    assert_eq!(z.n_bits(), table.n_bits());
    let fz = table.value(z);
    let mut acc = 0.0;
    for n in z.neighbors() {
        acc += table.value(n) - fz;
    }
    acc / f64::from(table.n_bits())
}

/// `mu(z)` rescaled by the sup-norm of the traceless objective, making it
/// invariant under positive rescaling of `f`.
pub fn mu_tilde(table: &ObjectiveTable, z: BitString) -> Result<f64> {
    let c_sup = table.c_sup_norm();
    if c_sup <= 0.0 {
        return Err(Error::ConstantObjective);
    }
    Ok(mu(table, z) / c_sup)
}

/// Valley-radius bound `mu_tilde(z) / (2N)` in trace-distance units.
/// Only defined at valley centers (`mu(z) > 0`).
pub fn epsilon_bound(table: &ObjectiveTable, z: BitString) -> Result<f64> {
    if mu(table, z) <= 0.0 {
        return Err(Error::NotAValleyCenter);
    }
    Ok(mu_tilde(table, z)? / (2.0 * f64::from(table.n_bits())))
}

/// Closed-form bound `4 N^2 ||c||_inf` on the spectral norm of the
/// double-commutator operator behind the second derivative.
pub fn f2b_norm_bound(table: &ObjectiveTable) -> f64 {
    let n = f64::from(table.n_bits());
    4.0 * n * n * table.c_sup_norm()
}

/// `v[z] *= c(z)` for a real work vector.
fn apply_c_real(c: &TracelessObjective, v: &[f64]) -> Vec<f64> {
    v.iter().zip(c.values()).map(|(x, cz)| x * cz).collect()
}

/// `(B v)_z = -sum_n v_{z xor e_n}` for a real work vector.
fn apply_b_real(n_bits: u8, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for (z, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for q in 0..n_bits {
            acc += v[z ^ (1usize << q)];
        }
        *slot = -acc;
    }
    out
}

/// `[B,[B,C]] v = B^2 C v - 2 B C B v + C B^2 v`, matrix-free. The operator
/// couples strings at Hamming distance at most 2.
fn apply_double_commutator(n_bits: u8, c: &TracelessObjective, v: &[f64]) -> Vec<f64> {
    let bv = apply_b_real(n_bits, v);
    let bbv = apply_b_real(n_bits, &bv);
    let t1 = apply_b_real(n_bits, &apply_b_real(n_bits, &apply_c_real(c, v)));
    let t2 = apply_b_real(n_bits, &apply_c_real(c, &bv));
    let t3 = apply_c_real(c, &bbv);
    t1.iter()
        .zip(&t2)
        .zip(&t3)
        .map(|((a, b), c)| a - 2.0 * b + c)
        .collect()
}

/// Power-iteration estimate of the spectral norm of `[B,[B,C]]`.
///
/// Iterates with the squared operator, which is positive semi-definite, so
/// the Rayleigh estimate is monotone non-decreasing in `iters` and converges
/// to the true norm from below. Always bounded by [`f2b_norm_bound`].
pub fn f2b_norm_estimate(table: &ObjectiveTable, iters: usize) -> f64 {
    assert!(iters >= 1, "at least one iteration required");
    let c = traceless(table);
    if c.sup_norm() <= 0.0 {
        return 0.0;
    }
    let n_bits = table.n_bits();
    let dim = table.len();
    // Deterministic pseudo-random start vector.
    let mut rng = StdRng::seed_from_u64(0x9e3779b97f4a7c15);
    let mut v: Vec<f64> = (0..dim)
        .map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0))
        .collect();
    let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    let mut est = 0.0;
    for _ in 0..iters {
        let gv = apply_double_commutator(n_bits, &c, &v);
        let w = apply_double_commutator(n_bits, &c, &gv);
        let rayleigh: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        est = rayleigh.max(0.0).sqrt();
        let wn: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if wn <= 0.0 {
            return est;
        }
        for (slot, x) in v.iter_mut().zip(&w) {
            *slot = x / wn;
        }
    }
    est
}

/// Valley-radius bound `2 N mu(z) / ||[B,[B,C]]||`, using the power-iteration
/// norm estimate instead of the closed-form bound. Never smaller than
/// [`epsilon_bound`].
pub fn epsilon_bound_tight(table: &ObjectiveTable, z: BitString, iters: usize) -> Result<f64> {
    let m = mu(table, z);
    if m <= 0.0 {
        return Err(Error::NotAValleyCenter);
    }
    if table.c_sup_norm() <= 0.0 {
        return Err(Error::ConstantObjective);
    }
    let norm = f2b_norm_estimate(table, iters);
    if norm <= 0.0 {
        return Err(Error::ConstantObjective);
    }
    Ok(2.0 * f64::from(table.n_bits()) * m / norm)
}

/// True when the first derivative along the mixer trajectory vanishes within
/// `grad_tol` and the second derivative exceeds `hess_tol`.
pub fn trough_membership(
    state: &StateVector,
    table: &ObjectiveTable,
    grad_tol: f64,
    hess_tol: f64,
) -> Result<bool> {
    assert!(grad_tol > 0.0, "grad_tol must be positive");
    let grad = state.grad_b(table)?;
    let hess = state.hess_b(table)?;
    Ok(grad.abs() < grad_tol && hess > hess_tol)
}

/// Default tolerances for [`trough_membership`].
pub const TROUGH_GRAD_TOL: f64 = 1e-9;
pub const TROUGH_HESS_TOL: f64 = 0.0;

/// Enumeration mode for [`mu_f_diagram`].
#[derive(Clone, Copy, Debug)]
pub enum DiagramMode {
    /// All `2^N` strings (supported up to 20 bits).
    Exhaustive,
    /// A seeded uniform sample of distinct strings, ascending.
    Sample { size: usize, seed: u64 },
}

fn mu_f_point(table: &ObjectiveTable, c_sup: f64, z: BitString) -> MuFPoint {
    let m = mu(table, z);
    let mt = if c_sup > 0.0 { m / c_sup } else { 0.0 };
    let eps = if m > 0.0 {
        mt / (2.0 * f64::from(table.n_bits()))
    } else {
        0.0
    };
    MuFPoint {
        z,
        f_val: table.value(z),
        mu: m,
        mu_tilde: mt,
        eps_bound: eps,
    }
}

/// The diagram `{(f(z), mu(z))}`, exhaustively or on a seeded sample.
pub fn mu_f_diagram(table: &ObjectiveTable, mode: DiagramMode) -> Result<Vec<MuFPoint>> {
    let n_bits = table.n_bits();
    let c_sup = table.c_sup_norm();
    match mode {
        DiagramMode::Exhaustive => {
            if n_bits > 20 {
                return Err(Error::TooManyBitsForExhaustive(n_bits));
            }
            Ok((0..table.len())
                .into_par_iter()
                .map(|z| mu_f_point(table, c_sup, BitString::from_index(z, n_bits)))
                .collect())
        }
        DiagramMode::Sample { size, seed } => {
            if size == 0 || size > table.len() {
                return Err(Error::InvalidParam(format!(
                    "sample size {size} outside 1..=2^{n_bits}"
                )));
            }
            let mut rng = StdRng::seed_from_u64(seed);
            let mut picks = rand::seq::index::sample(&mut rng, table.len(), size).into_vec();
            picks.sort_unstable();
            Ok(picks
                .into_iter()
                .map(|z| mu_f_point(table, c_sup, BitString::from_index(z, n_bits)))
                .collect())
        }
    }
}

/// Summary statistics over diagram points. `argmin_set` is the set of optimal
/// strings of the underlying table, used for the `deepest_is_largest` flag.
pub fn diagram_stats(points: &[MuFPoint], argmin_set: &[BitString]) -> Result<DiagramStats> {
    if points.is_empty() {
        return Err(Error::InvalidParam("empty diagram".into()));
    }
    let n = points.len() as f64;
    let frac_mu_positive = points.iter().filter(|p| p.mu > 0.0).count() as f64 / n;

    let mean_f = points.iter().map(|p| p.f_val).sum::<f64>() / n;
    let mean_mu = points.iter().map(|p| p.mu).sum::<f64>() / n;
    let mut var_f = 0.0;
    let mut var_mu = 0.0;
    let mut cov = 0.0;
    for p in points {
        let df = p.f_val - mean_f;
        let dm = p.mu - mean_mu;
        var_f += df * df;
        var_mu += dm * dm;
        cov += df * dm;
    }
    let denom = var_f.sqrt() * var_mu.sqrt();
    let (pearson_f_mu, pearson_defined) = if denom > 0.0 && (cov / denom).is_finite() {
        ((cov / denom).clamp(-1.0, 1.0), true)
    } else {
        (0.0, false)
    };

    // Ties broken by lowest string value: strict comparison keeps the first.
    let mut best = &points[0];
    for p in &points[1..] {
        if p.mu > best.mu {
            best = p;
        }
    }
    let argmax_mu = best.z;
    let deepest_is_largest = argmin_set.contains(&argmax_mu);

    let f_min = points.iter().map(|p| p.f_val).fold(f64::INFINITY, f64::min);
    let f_max = points.iter().map(|p| p.f_val).fold(f64::NEG_INFINITY, f64::max);
    let mu_min = points.iter().map(|p| p.mu).fold(f64::INFINITY, f64::min);
    let mu_max = points.iter().map(|p| p.mu).fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0u32; HIST_BINS * HIST_BINS];
    let bin = |x: f64, lo: f64, hi: f64| -> usize {
        if hi <= lo {
            return 0;
        }
        (((x - lo) / (hi - lo) * HIST_BINS as f64) as usize).min(HIST_BINS - 1)
    };
    for p in points {
        let i = bin(p.f_val, f_min, f_max);
        let j = bin(p.mu, mu_min, mu_max);
        counts[i * HIST_BINS + j] += 1;
    }

    Ok(DiagramStats {
        frac_mu_positive,
        pearson_f_mu,
        pearson_defined,
        argmax_mu,
        deepest_is_largest,
        histogram: DiagramHistogram {
            f_min,
            f_max,
            mu_min,
            mu_max,
            bins: HIST_BINS,
            counts,
        },
    })
}
