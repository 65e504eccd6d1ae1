//! Effective qubit-only Hamiltonians, in units of the active-pair coupling.
//!
//! `H = H_S + m H' + m_tilde H_tilde + omega_tilde H_zz` where
//! * `H_S` is the flip-flop between the two active qubits,
//! * `H'` couples each active qubit to each idle qubit, with the rotating-frame
//!   phase `exp(+-i Delta t_g)` frozen at the gate time,
//! * `H_tilde` is the idle-idle flip-flop and `H_zz` the idle-idle `sz sz` term.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::block::BlockOperator;
use crate::error::{Error, Result};
use crate::hilbert::{apply_flipflop, sz, ExcitationSector, Register, MAX_QUBITS};
use crate::linalg::CMat;

/// Dimensionless couplings of the effective Hamiltonian.
///
/// `gamma` only sets the unit in which `delta` is measured; all dynamics
/// depend on `gate_time = gamma * t_g`, the ratios, and `delta * t_g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConfig {
    pub gamma: f64,
    /// Active-idle coupling over active-active coupling.
    pub m: f64,
    /// Idle-idle transverse coupling over active-active coupling.
    pub m_tilde: f64,
    /// Idle-idle ZZ coefficient over active-active coupling.
    pub omega_tilde: f64,
    /// Active-idle detuning, in the same angular units as `gamma`.
    pub delta: f64,
    pub gate_time: f64,
    pub n_qubits: usize,
}

impl CouplingConfig {
    /// iSWAP operating point: `gate_time = pi/2`, no detuning, idle-idle terms off.
    pub fn new(n_qubits: usize, m: f64) -> Self {
        Self {
            gamma: 1.0,
            m,
            m_tilde: 0.0,
            omega_tilde: 0.0,
            delta: 0.0,
            gate_time: FRAC_PI_2,
            n_qubits,
        }
    }

    pub fn with_gate_time(mut self, gate_time: f64) -> Self {
        self.gate_time = gate_time;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_idle_couplings(mut self, m_tilde: f64, omega_tilde: f64) -> Self {
        self.m_tilde = m_tilde;
        self.omega_tilde = omega_tilde;
        self
    }

    pub fn register(&self) -> Result<Register> {
        Register::new(self.n_qubits)
    }

    pub fn idle_count(&self) -> usize {
        self.n_qubits.saturating_sub(2)
    }

    /// Rotating-frame phase `Delta * t_g`.
    pub fn detuning_phase(&self) -> f64 {
        self.delta * self.gate_time / self.gamma
    }

    /// Full check, including that the register fits the dense simulators.
    pub fn validate(&self) -> Result<Register> {
        self.validate_parameters()?;
        self.register()
    }

    /// Parameter check without the register-size cap, for the closed-form models.
    pub fn validate_parameters(&self) -> Result<()> {
        if self.n_qubits < 2 {
            return Err(Error::RegisterSize {
                n_qubits: self.n_qubits,
                max: MAX_QUBITS,
            });
        }
        let checks: [(&'static str, f64, bool, &'static str); 5] = [
            ("m", self.m, self.m >= 0.0, "must be non-negative"),
            (
                "m_tilde",
                self.m_tilde,
                self.m_tilde >= 0.0,
                "must be non-negative",
            ),
            (
                "gate_time",
                self.gate_time,
                self.gate_time > 0.0,
                "must be positive",
            ),
            ("gamma", self.gamma, self.gamma > 0.0, "must be positive"),
            (
                "delta",
                self.delta,
                self.delta.is_finite(),
                "must be finite",
            ),
        ];
        for (name, value, ok, reason) in checks {
            if !ok || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason,
                });
            }
        }
        if !self.omega_tilde.is_finite() {
            return Err(Error::InvalidParameter {
                name: "omega_tilde",
                value: self.omega_tilde,
                reason: "must be finite",
            });
        }
        Ok(())
    }

    /// Violations of the assumed ordering `1 >> m >> m_tilde`.
    pub fn hierarchy_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.m >= 1.0 {
            out.push(format!(
                "m = {} is not small: the idle coupling is comparable to the gate coupling",
                self.m
            ));
        }
        if self.m_tilde > 0.0 && self.m_tilde >= self.m {
            out.push(format!(
                "m_tilde = {} is not below m = {}: idle-idle coupling dominates",
                self.m_tilde, self.m
            ));
        }
        out
    }
}

fn flipflop_sum(sector: &ExcitationSector, pairs: &[(usize, usize)], phase: Complex64) -> CMat {
    let mut m = CMat::zeros(sector.len(), sector.len());
    for &(i, j) in pairs {
        let t = apply_flipflop(sector, i, j, phase).expect("pairs are valid register indices");
        for (r, c, v) in t.entries {
            m[(r, c)] += v;
        }
    }
    m
}

fn active_idle_pairs(register: &Register) -> Vec<(usize, usize)> {
    register
        .active()
        .into_iter()
        .flat_map(|i| register.idle().map(move |j| (i, j)))
        .collect()
}

fn idle_pairs(register: &Register) -> Vec<(usize, usize)> {
    let idle: Vec<usize> = register.idle().collect();
    let mut pairs = Vec::new();
    for (a, &i) in idle.iter().enumerate() {
        for &j in &idle[a + 1..] {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Flip-flop between the two active qubits.
pub fn build_hs(register: Register) -> BlockOperator {
    let [a, b] = register.active();
    BlockOperator::from_sectors(register, |s| {
        flipflop_sum(s, &[(a, b)], Complex64::new(1.0, 0.0))
    })
}

/// Active-idle flip-flops dressed with the rotating-frame phase.
///
/// `delta` is in units of the active coupling and `gate_time` is dimensionless,
/// so the phase is `delta * gate_time`. Zero for a two-qubit register.
pub fn build_hprime(register: Register, delta: f64, gate_time: f64) -> BlockOperator {
    let pairs = active_idle_pairs(&register);
    // s-(i) s+(j) carries e^{+i Delta t_g}, so s+(i) s-(j) carries e^{-i Delta t_g}
    let phase = Complex64::from_polar(1.0, -delta * gate_time);
    BlockOperator::from_sectors(register, |s| flipflop_sum(s, &pairs, phase))
}

/// Idle-idle flip-flops. Zero with fewer than two idle qubits.
pub fn build_htilde(register: Register) -> BlockOperator {
    let pairs = idle_pairs(&register);
    BlockOperator::from_sectors(register, |s| {
        flipflop_sum(s, &pairs, Complex64::new(1.0, 0.0))
    })
}

/// Idle-idle `sz sz` coupling, diagonal in the computational basis.
pub fn build_hzz(register: Register) -> BlockOperator {
    let pairs = idle_pairs(&register);
    BlockOperator::from_sectors(register, |s| {
        let mut m = CMat::zeros(s.len(), s.len());
        for (p, &bits) in s.states().iter().enumerate() {
            let e: f64 = pairs.iter().map(|&(i, j)| sz(bits, i) * sz(bits, j)).sum();
            m[(p, p)] = Complex64::new(e, 0.0);
        }
        m
    })
}

/// `H_S + m H' + m_tilde H_tilde + omega_tilde H_zz`.
pub fn build_total(config: &CouplingConfig) -> Result<BlockOperator> {
    let register = config.validate()?;
    let mut h = build_hs(register);
    if config.m != 0.0 {
        let hp = build_hprime(register, config.delta / config.gamma, config.gate_time);
        h = h.add_scaled(&hp, config.m.into())?;
    }
    if config.m_tilde != 0.0 {
        h = h.add_scaled(&build_htilde(register), config.m_tilde.into())?;
    }
    if config.omega_tilde != 0.0 {
        h = h.add_scaled(&build_hzz(register), config.omega_tilde.into())?;
    }
    Ok(h)
}
