//! Second-order Zassenhaus splitting of the perturbed propagator:
//!
//! `U_Z = U_S exp(-i m t H') exp(-m t^2/2 [H_S, H'])`.
//!
//! Each factor is a true exponential of the full sum, computed from a
//! blockwise eigendecomposition, so `U_Z` is unitary to round-off. The
//! commutator is anti-Hermitian; `K = i [H_S, H']` is diagonalized instead.

use num_complex::Complex64;

use crate::block::BlockOperator;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hprime, build_hs, CouplingConfig};
use crate::hilbert::Register;
use crate::propagator::{ideal_gate, SpectralOperator};

/// `[H_S, H']` at the given rotating-frame phase.
pub fn commutator_hs_hprime(
    register: Register,
    delta: f64,
    gate_time: f64,
) -> Result<BlockOperator> {
    let hs = build_hs(register);
    let hp = build_hprime(register, delta, gate_time);
    hs.commutator(&hp)
}

/// Cached factors for evaluating `U_Z` at many couplings `m`.
#[derive(Debug, Clone)]
pub struct ZassenhausFactors {
    gate_time: f64,
    ideal: BlockOperator,
    hprime: SpectralOperator,
    /// Spectrum of `i [H_S, H']`.
    commutator: SpectralOperator,
}

impl ZassenhausFactors {
    /// `delta` in units of the active coupling, `gate_time` dimensionless.
    pub fn new(register: Register, delta: f64, gate_time: f64) -> Result<Self> {
        let hp = build_hprime(register, delta, gate_time);
        let c = build_hs(register).commutator(&hp)?;
        // anti-Hermitian <=> c + c^dagger = 0
        let asym = c
            .add(&c.adjoint())?
            .max_abs_diff(&BlockOperator::zeros(register))?;
        if asym > 1e-12 {
            return Err(Error::NotHermitian {
                weight: 0,
                deviation: asym,
            });
        }
        let k = c.scale(Complex64::i());
        Ok(Self {
            gate_time,
            ideal: ideal_gate(register, gate_time),
            hprime: SpectralOperator::new(&hp)?,
            commutator: SpectralOperator::new(&k)?,
        })
    }

    /// The second factor, `exp(-m t^2/2 [H_S, H'])`.
    pub fn commutator_factor(&self, m: f64) -> BlockOperator {
        // -a C = i a K  =>  exp(-a C) = exp(-i (-a) K)
        let a = m * self.gate_time * self.gate_time / 2.0;
        self.commutator.evolve(-a)
    }

    pub fn unitary(&self, m: f64) -> Result<BlockOperator> {
        let drift = self.hprime.evolve(m * self.gate_time);
        self.ideal
            .matmul(&drift)?
            .matmul(&self.commutator_factor(m))
    }
}

pub fn zassenhaus_unitary(config: &CouplingConfig) -> Result<BlockOperator> {
    let register = config.validate()?;
    ZassenhausFactors::new(register, config.delta / config.gamma, config.gate_time)?
        .unitary(config.m)
}
