//! Exact `2^N`-amplitude statevector with matrix-free gate application.
//!
//! Two gate families act on the state: the diagonal phase separator
//! `exp(-i*gamma*C)` generated by the traceless objective, and the mixer
//! `exp(-i*beta*B)` with `B = -sum_n sigma_x^(n)`, applied as `N` sequential
//! single-qubit rotations. Derivatives of the expectation along the
//! `exp(i*beta*B)` trajectory are evaluated matrix-free from neighbor sums.
//!
//! All reductions run in ascending index order so results are bitwise
//! reproducible.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{BitString, ObjectiveTable, TracelessObjective, MAX_BITS};

/// Mixer/phase-separator angles of one circuit layer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerParams {
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Clone, Debug)]
pub struct StateVector {
    n_bits: u8,
    amps: Vec<Complex64>,
}

fn check_dims(lhs: u8, rhs: u8) -> Result<()> {
    if lhs != rhs {
        return Err(Error::DimensionMismatch { lhs, rhs });
    }
    Ok(())
}

/// Phase factors `exp(-i*gamma*c(z))` for every string, in index order.
pub(crate) fn phase_factors(gamma: f64, c: &TracelessObjective) -> Vec<Complex64> {
    c.values()
        .iter()
        .map(|&cz| Complex64::from_polar(1.0, -gamma * cz))
        .collect()
}

/// `(B psi)_z = -sum_n psi_{z xor e_n}` for a raw amplitude slice.
fn apply_b_raw(n_bits: u8, amps: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; amps.len()];
    for (z, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::ZERO;
        for q in 0..n_bits {
            acc += amps[z ^ (1usize << q)];
        }
        *slot = -acc;
    }
    out
}

impl StateVector {
    /// Uniform superposition: every amplitude `2^(-N/2)`, the ground state of
    /// the mixer generator.
    pub fn plus_state(n_bits: u8) -> Result<Self> {
        if !(1..=MAX_BITS).contains(&n_bits) {
            return Err(Error::BitsOutOfRange(n_bits));
        }
        let dim = 1usize << n_bits;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            n_bits,
            amps: vec![a; dim],
        })
    }

    /// Computational basis state `|z>`.
    pub fn basis_state(z: BitString) -> Self {
        let mut amps = vec![Complex64::ZERO; 1usize << z.n_bits()];
        amps[z.index()] = Complex64::ONE;
        Self {
            n_bits: z.n_bits(),
            amps,
        }
    }

    /// Wrap an explicit amplitude vector; must already have unit norm.
    pub fn from_amplitudes(n_bits: u8, amps: Vec<Complex64>) -> Result<Self> {
        if !(1..=MAX_BITS).contains(&n_bits) {
            return Err(Error::BitsOutOfRange(n_bits));
        }
        if amps.len() != 1usize << n_bits {
            return Err(Error::InvalidParam(format!(
                "amplitude vector length {} does not match 2^{}",
                amps.len(),
                n_bits
            )));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { n_bits, amps })
    }

    /// Normalize an arbitrary nonzero amplitude vector.
    pub fn normalized(n_bits: u8, mut amps: Vec<Complex64>) -> Result<Self> {
        if !(1..=MAX_BITS).contains(&n_bits) {
            return Err(Error::BitsOutOfRange(n_bits));
        }
        if amps.len() != 1usize << n_bits {
            return Err(Error::InvalidParam(format!(
                "amplitude vector length {} does not match 2^{}",
                amps.len(),
                n_bits
            )));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let inv = norm_sqr.sqrt().recip();
        for a in &mut amps {
            *a *= inv;
        }
        Ok(Self { n_bits, amps })
    }

    pub fn n_bits(&self) -> u8 {
        self.n_bits
    }

    /// Amplitude count `2^N`; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply the diagonal unitary `exp(-i*gamma*C)` in place. Moduli of all
    /// amplitudes are untouched, so the norm is preserved exactly.
    pub fn apply_phase_separator(&mut self, gamma: f64, c: &TracelessObjective) -> Result<()> {
        check_dims(self.n_bits, c.n_bits())?;
        let phases = phase_factors(gamma, c);
        self.apply_phases(&phases);
        Ok(())
    }

    pub(crate) fn apply_phases(&mut self, phases: &[Complex64]) {
        debug_assert_eq!(phases.len(), self.amps.len());
        for (a, p) in self.amps.iter_mut().zip(phases) {
            *a *= p;
        }
    }

    /// Apply the mixer `exp(-i*beta*B) = prod_n (cos(beta) I + i sin(beta) X_n)`
    /// in place, one qubit at a time.
    pub fn apply_mixer(&mut self, beta: f64) {
        let cos = beta.cos();
        let isin = Complex64::new(0.0, beta.sin());
        for q in 0..self.n_bits {
            let mask = 1usize << q;
            for z in 0..self.amps.len() {
                if z & mask == 0 {
                    let a = self.amps[z];
                    let b = self.amps[z | mask];
                    self.amps[z] = cos * a + isin * b;
                    self.amps[z | mask] = cos * b + isin * a;
                }
            }
        }
    }

    /// `F = sum_z f(z) |a_z|^2`, summed in ascending index order.
    pub fn expectation(&self, table: &ObjectiveTable) -> Result<f64> {
        check_dims(self.n_bits, table.n_bits())?;
        let mut acc = 0.0;
        for (a, &f) in self.amps.iter().zip(table.values()) {
            acc += f * a.norm_sqr();
        }
        Ok(acc)
    }

    /// The (unnormalized) image `B psi` of the mixer generator.
    pub fn apply_b(&self) -> Vec<Complex64> {
        apply_b_raw(self.n_bits, &self.amps)
    }

    /// First derivative of `beta -> F(exp(i*beta*B) psi)` at `beta = 0`.
    ///
    /// With `w = <psi| H B |psi>` the derivative is `-2 Im(w)`; it vanishes
    /// identically on eigenstates of either `H` or `B`.
    pub fn grad_b(&self, table: &ObjectiveTable) -> Result<f64> {
        check_dims(self.n_bits, table.n_bits())?;
        let bpsi = self.apply_b();
        let mut w = Complex64::ZERO;
        for ((a, b), &f) in self.amps.iter().zip(&bpsi).zip(table.values()) {
            w += a.conj() * f * b;
        }
        Ok(-2.0 * w.im)
    }

    /// Second derivative of `beta -> F(exp(i*beta*B) psi)` at `beta = 0`:
    /// `2 (<B psi|H|B psi> - Re <psi|H B^2 psi>)`.
    pub fn hess_b(&self, table: &ObjectiveTable) -> Result<f64> {
        check_dims(self.n_bits, table.n_bits())?;
        let u = self.apply_b();
        let v = apply_b_raw(self.n_bits, &u);
        let mut quad = 0.0;
        let mut cross = Complex64::ZERO;
        for (z, &f) in table.values().iter().enumerate() {
            quad += f * u[z].norm_sqr();
            cross += self.amps[z].conj() * f * v[z];
        }
        Ok(2.0 * (quad - cross.re))
    }

    /// `|<z|psi>|^2`.
    pub fn overlap_probability(&self, z: BitString) -> Result<f64> {
        check_dims(self.n_bits, z.n_bits())?;
        Ok(self.amps[z.index()].norm_sqr())
    }
}
