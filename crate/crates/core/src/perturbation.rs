//! Second-order perturbative fidelity of the iSWAP with weakly coupled idle qubits.
//!
//! Expanding `exp(-i t (H_S + m H'))` to second order in `m` gives
//! `U_S + m L1 + m^2 L2` with `L1 = (e^{-it} - 1) H'` and
//! `L2 = (alpha H_S + beta) H'^2`; the entanglement fidelity becomes
//! `F_e = 1 - x n m^2 + (x^2 + y^2) n^2 m^4 / 4`.
//!
//! The coefficient expressions below keep their finite polynomial tails
//! verbatim; `x(pi/2) ~ 2.479` and `x^2 + y^2 ~ 12.434` come out of exactly these
//! forms.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::block::BlockOperator;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hprime, build_hs, CouplingConfig};
use crate::propagator::ideal_gate;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationCoefficients {
    pub gate_time: f64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
    pub c5: Complex64,
    /// `c1 + c2 + c3 + c4 + 2 c5`
    pub alpha: Complex64,
    /// `c1 + c2 - t^2`
    pub beta: Complex64,
    pub x: f64,
    pub y: f64,
}

const FACT: [f64; 8] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0];

pub fn coefficients(gate_time: f64) -> PerturbationCoefficients {
    let t = gate_time;
    let p = |k: i32| t.powi(k) / FACT[k as usize];
    let (s, c) = t.sin_cos();
    let i = Complex64::i();

    let c1 = Complex64::from(c - 1.0 + p(2) - p(4));
    let c2 = i * (-s + t - p(3) + p(5));
    let c3 = Complex64::from(2.0 - 2.0 * c - 0.5 * t * s - p(2) + p(6));
    let c4 = Complex64::from(1.0 - c - 0.5 * t * s - p(4) + 2.0 * p(6));
    let c5 = i * (-t - 0.5 * t * c + 1.5 * s + p(5) - 2.0 * p(7));
    let alpha = c1 + c2 + c3 + c4 + 2.0 * c5;
    let beta = c1 + c2 - t * t;

    let x = 1.0 - c - s + t * c + p(2) + 2.0 * p(3) + p(4) - 4.0 * p(5) + 4.0 * p(7);
    let y = 1.0 - c + s - t - t * s - p(2) + p(3) - 3.0 * p(4) - p(5) + 3.0 * p(6);

    PerturbationCoefficients {
        gate_time,
        c1,
        c2,
        c3,
        c4,
        c5,
        alpha,
        beta,
        x,
        y,
    }
}

impl PerturbationCoefficients {
    pub fn iswap() -> Self {
        coefficients(FRAC_PI_2)
    }

    /// Largest `n m^2` before `F_e` turns back up, `2x / (x^2 + y^2)`.
    pub fn validity_bound(&self) -> f64 {
        let r2 = self.x * self.x + self.y * self.y;
        if r2 == 0.0 {
            f64::INFINITY
        } else {
            2.0 * self.x / r2
        }
    }

    /// `1 - x n m^2 + (x^2 + y^2) n^2 m^4 / 4`, without a validity check.
    pub fn series_fe(&self, n: f64, m: f64) -> f64 {
        let nm2 = n * m * m;
        1.0 - self.x * nm2 + (self.x * self.x + self.y * self.y) * nm2 * nm2 / 4.0
    }

    /// Largest integer idle count allowed by the validity bound at coupling `m`.
    pub fn max_valid_idle(&self, m: f64) -> f64 {
        (self.validity_bound() / (m * m)).floor()
    }
}

/// Perturbative entanglement fidelity, rejected past the validity bound.
pub fn perturbative_fe(config: &CouplingConfig) -> Result<f64> {
    config.validate_parameters()?;
    let coeffs = coefficients(config.gate_time);
    let n = config.idle_count() as f64;
    let value = n * config.m * config.m;
    let bound = coeffs.validity_bound();
    if value > bound {
        return Err(Error::ModelOutOfRange { value, bound });
    }
    Ok(coeffs.series_fe(n, config.m))
}

/// `U_S + m (e^{-it} - 1) H' + m^2 (alpha H_S + beta) H'^2`.
///
/// Not unitary; useful to inspect which orders contribute to the fidelity.
pub fn perturbative_unitary(config: &CouplingConfig) -> Result<BlockOperator> {
    let register = config.validate()?;
    let t = config.gate_time;
    let coeffs = coefficients(t);
    let hs = build_hs(register);
    let hp = build_hprime(register, config.delta / config.gamma, t);
    let hp2 = hp.matmul(&hp)?;

    let first = Complex64::from_polar(1.0, -t) - 1.0;
    let m = config.m;
    let second = hs
        .matmul(&hp2)?
        .scale(coeffs.alpha)
        .add_scaled(&hp2, coeffs.beta)?;
    ideal_gate(register, t)
        .add_scaled(&hp, first * m)?
        .add_scaled(&second, Complex64::from(m * m))
}
