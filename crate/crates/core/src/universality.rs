//! Severing conditions on an objective and a dense probe of the generated
//! Lie algebra.
//!
//! An objective is severing when all values are pairwise distinct and all
//! value differences over ordered pairs of distinct strings are pairwise
//! distinct. Severing objectives make the two gate generators universal:
//! the algebra generated by `iB` and `iC` is all of `su(2^N)`. The
//! [`lie_closure_dim`] probe verifies this numerically for tiny systems.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::objective::{traceless, BitString, ObjectiveTable};

/// First severing violation found, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Violation {
    None,
    /// Two strings share an objective value: condition (a) fails.
    DegenerateValues { z: BitString, z_prime: BitString },
    /// Two ordered pairs share a value difference: condition (b) fails.
    DegenerateResonance {
        pair_a: (BitString, BitString),
        pair_b: (BitString, BitString),
    },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeveringReport {
    pub severing: bool,
    pub violation: Violation,
    /// Distinctness threshold relative to the traceless sup-norm.
    pub tolerance: f64,
}

/// Default relative distinctness tolerance.
///
/// Chosen well below the birthday-collision scale of the difference set: a
/// 9-bit table has ~2.6e5 ordered differences spread over a few sup-norms,
/// so thresholds much above ~1e-12 flag spurious resonances on random
/// tables. 1e-14 still covers ~45 ulps of floating-point fuzz at unit scale.
pub const SEVERING_TOL: f64 = 1e-14;

/// Check the two severing conditions with tolerance-based distinctness.
///
/// Two quantities are considered equal when they differ by at most
/// `tol * c_sup_norm`, which makes the verdict invariant under affine maps
/// of the objective. The first violation in lexicographic pair order is
/// reported. Condition (b) materializes all ordered pairs, so `n_bits` is
/// capped at 12.
pub fn check_severing(table: &ObjectiveTable, tol: f64) -> Result<SeveringReport> {
    assert!(tol >= 0.0, "tolerance must be nonnegative");
    let n_bits = table.n_bits();
    if n_bits > 12 {
        return Err(Error::TooManyBitsForSevering(n_bits));
    }
    let thresh = tol * table.c_sup_norm();
    let dim = table.len();

    // Condition (a): sort values (ties by string), adjacent entries closer
    // than the threshold collide.
    let mut by_value: Vec<(f64, u32)> = table
        .values()
        .iter()
        .enumerate()
        .map(|(z, &v)| (v, z as u32))
        .collect();
    by_value.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mut value_violation: Option<(u32, u32)> = None;
    for w in by_value.windows(2) {
        if (w[1].0 - w[0].0).abs() <= thresh {
            let pair = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            if value_violation.is_none_or(|best| pair < best) {
                value_violation = Some(pair);
            }
        }
    }
    if let Some((z, zp)) = value_violation {
        return Ok(SeveringReport {
            severing: false,
            violation: Violation::DegenerateValues {
                z: BitString::new(z, n_bits)?,
                z_prime: BitString::new(zp, n_bits)?,
            },
            tolerance: tol,
        });
    }

    // Condition (b): all ordered pairs of distinct strings, sorted by
    // difference; adjacent near-equal differences collide. The sign-flipped
    // partner (z', z) of a pair is excluded as a trivially forced match.
    let mut diffs: Vec<(f64, u32, u32)> = Vec::with_capacity(dim * (dim - 1));
    for z in 0..dim {
        for zp in 0..dim {
            if z != zp {
                diffs.push((
                    table.value_at(z) - table.value_at(zp),
                    z as u32,
                    zp as u32,
                ));
            }
        }
    }
    diffs.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("finite differences")
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    let mut resonance: Option<((u32, u32), (u32, u32))> = None;
    for w in diffs.windows(2) {
        let (d0, z0, zp0) = w[0];
        let (d1, z1, zp1) = w[1];
        if (d1 - d0).abs() <= thresh {
            if z1 == zp0 && zp1 == z0 {
                continue;
            }
            let (a, b) = if (z0, zp0) <= (z1, zp1) {
                ((z0, zp0), (z1, zp1))
            } else {
                ((z1, zp1), (z0, zp0))
            };
            if resonance.is_none_or(|best| (a, b) < best) {
                resonance = Some((a, b));
            }
        }
    }
    if let Some((a, b)) = resonance {
        return Ok(SeveringReport {
            severing: false,
            violation: Violation::DegenerateResonance {
                pair_a: (BitString::new(a.0, n_bits)?, BitString::new(a.1, n_bits)?),
                pair_b: (BitString::new(b.0, n_bits)?, BitString::new(b.1, n_bits)?),
            },
            tolerance: tol,
        });
    }

    Ok(SeveringReport {
        severing: true,
        violation: Violation::None,
        tolerance: tol,
    })
}

/// Hilbert–Schmidt inner product `Re tr(A^dagger B)`.
fn hs_inner(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

fn hs_norm(a: &DMatrix<Complex64>) -> f64 {
    hs_inner(a, a).sqrt()
}

/// Modified Gram–Schmidt against `basis`; returns the normalized residual if
/// its norm stays above the rank-acceptance threshold.
fn orthogonal_residual(
    basis: &[DMatrix<Complex64>],
    candidate: &DMatrix<Complex64>,
) -> Option<DMatrix<Complex64>> {
    const RANK_TOL: f64 = 1e-8;
    let norm = hs_norm(candidate);
    if norm <= RANK_TOL {
        return None;
    }
    let mut r = candidate / Complex64::from(norm);
    for b in basis {
        let coeff = hs_inner(b, &r);
        r -= b * Complex64::from(coeff);
    }
    let rn = hs_norm(&r);
    if rn > RANK_TOL {
        Some(r / Complex64::from(rn))
    } else {
        None
    }
}

/// Dimension of the real span closed under commutators of the two gate
/// generators, computed densely. Supported for `n_bits <= 3`.
///
/// Sweeps commutate all pairs of the current orthonormal basis until a
/// fixpoint; non-convergence within `max_depth` sweeps is an error carrying
/// the partial dimension. A severing objective yields `4^N - 1 = dim su(2^N)`;
/// a constant objective yields 1 (the mixer generator alone).
pub fn lie_closure_dim(table: &ObjectiveTable, max_depth: usize) -> Result<usize> {
    let n_bits = table.n_bits();
    if n_bits > 3 {
        return Err(Error::InvalidParam(format!(
            "dense closure probe supports up to 3 bits (got {n_bits})"
        )));
    }
    let dim = table.len();

    let mut ib = DMatrix::<Complex64>::zeros(dim, dim);
    for z in 0..dim {
        for q in 0..n_bits {
            ib[(z, z ^ (1usize << q))] = Complex64::new(0.0, -1.0);
        }
    }
    let c = traceless(table);
    let mut ic = DMatrix::<Complex64>::zeros(dim, dim);
    for z in 0..dim {
        ic[(z, z)] = Complex64::new(0.0, c.values()[z]);
    }

    let mut basis: Vec<DMatrix<Complex64>> = Vec::new();
    for gen in [ib, ic] {
        if let Some(r) = orthogonal_residual(&basis, &gen) {
            basis.push(r);
        }
    }

    for _ in 0..max_depth {
        let len = basis.len();
        let mut added = false;
        for i in 0..len {
            for j in i + 1..len {
                let comm = &basis[i] * &basis[j] - &basis[j] * &basis[i];
                if let Some(r) = orthogonal_residual(&basis, &comm) {
                    basis.push(r);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(basis.len());
        }
    }
    Err(Error::ClosureNotConverged {
        max_depth,
        dim: basis.len(),
    })
}

/// Connectivity of the hypercube graph induced by the mixer's off-diagonal
/// entries, decided by explicit breadth-first traversal. Always true.
pub fn mixer_graph_connected(n_bits: u8) -> bool {
    if n_bits == 0 || n_bits > crate::objective::MAX_BITS {
        return false;
    }
    let dim = 1usize << n_bits;
    let mut seen = vec![false; dim];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut visited = 1usize;
    while let Some(z) = queue.pop_front() {
        for q in 0..n_bits {
            let w = z ^ (1usize << q);
            if !seen[w] {
                seen[w] = true;
                visited += 1;
                queue.push_back(w);
            }
        }
    }
    visited == dim
}
