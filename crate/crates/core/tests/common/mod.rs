#![allow(dead_code)] // each test target uses a different subset

//! Dense reference implementations shared by the integration and acceptance
//! suites. Everything here recomputes quantities through an independent route
//! (dense matrices, eigendecompositions, finite differences) so the
//! matrix-free kernels can be checked against them.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qaoa_landscape::objective::{traceless, ObjectiveTable, TracelessObjective};
use qaoa_landscape::statevector::StateVector;

/// Dense mixer generator: `B[z][z^e_n] = -1`.
pub fn dense_b(n_bits: u8) -> DMatrix<Complex64> {
    let dim = 1usize << n_bits;
    let mut b = DMatrix::<Complex64>::zeros(dim, dim);
    for z in 0..dim {
        for q in 0..n_bits {
            b[(z, z ^ (1usize << q))] = Complex64::new(-1.0, 0.0);
        }
    }
    b
}

/// Dense diagonal phase-separator generator.
pub fn dense_c(c: &TracelessObjective) -> DMatrix<Complex64> {
    let dim = c.values().len();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (z, &v) in c.values().iter().enumerate() {
        m[(z, z)] = Complex64::new(v, 0.0);
    }
    m
}

/// Dense diagonal objective Hamiltonian.
pub fn dense_h(table: &ObjectiveTable) -> DMatrix<Complex64> {
    let dim = table.len();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (z, &v) in table.values().iter().enumerate() {
        m[(z, z)] = Complex64::new(v, 0.0);
    }
    m
}

/// Matrix exponential by scaling and squaring with a Taylor series. Accurate
/// to ~1e-13 for the small, moderately normed matrices used in tests.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let norm_bound: f64 = a.iter().map(|x| x.norm()).sum::<f64>();
    let s = if norm_bound > 0.5 {
        (norm_bound / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = a / Complex64::from(2f64.powi(s));
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=25 {
        term = &term * &b / Complex64::from(k as f64);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

pub fn matvec(m: &DMatrix<Complex64>, v: &[Complex64]) -> Vec<Complex64> {
    let dim = m.nrows();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, vj) in v.iter().enumerate() {
            acc += m[(i, j)] * vj;
        }
        *slot = acc;
    }
    out
}

/// Seeded Haar-ish random state (normalized complex Gaussians).
pub fn random_state(n_bits: u8, seed: u64) -> StateVector {
    let mut rng = StdRng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..1usize << n_bits)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(n_bits, amps).unwrap()
}

/// Spectral norm of the dense double commutator `[B,[B,C]]`.
pub fn dense_double_commutator_norm(table: &ObjectiveTable) -> f64 {
    let b = dense_b(table.n_bits());
    let c = dense_c(&traceless(table));
    let inner = &b * &c - &c * &b;
    let g = &b * &inner - &inner * &b;
    // G is Hermitian: its spectral norm is the largest |eigenvalue| of the
    // real symmetric matrix of the same entries.
    let dim = g.nrows();
    let mut real = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            assert!(g[(i, j)].im.abs() < 1e-12);
            real[(i, j)] = g[(i, j)].re;
        }
    }
    real.symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|e| e.abs())
        .fold(0.0f64, f64::max)
}

/// Objective expectation along the `exp(i*beta*B)` trajectory, via the
/// mixer gate with negated angle.
pub fn f_along_b(state: &StateVector, table: &ObjectiveTable, beta: f64) -> f64 {
    let mut s = state.clone();
    s.apply_mixer(-beta);
    s.expectation(table).unwrap()
}

pub fn grad_fd(state: &StateVector, table: &ObjectiveTable, h: f64) -> f64 {
    (f_along_b(state, table, h) - f_along_b(state, table, -h)) / (2.0 * h)
}

pub fn hess_fd(state: &StateVector, table: &ObjectiveTable, h: f64) -> f64 {
    (f_along_b(state, table, h) - 2.0 * f_along_b(state, table, 0.0)
        + f_along_b(state, table, -h))
        / (h * h)
}
