//! Entanglement fidelity, average gate fidelity and error rate of a perturbed
//! propagator against the ideal gate.
//!
//! For unitaries the entanglement fidelity on the maximally entangled state of
//! the register and an equally sized ancilla reduces to `|Tr(U^dagger V)|^2 / d^2`,
//! which is evaluated blockwise; the `4^N`-dimensional state is never built.

use std::fmt;
use std::str::FromStr;

use crate::block::BlockOperator;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_total, CouplingConfig};
use crate::propagator::SpectralOperator;
use crate::{meanfield, perturbation, propagator, zassenhaus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Exact,
    Perturbative,
    Zassenhaus,
    MeanField,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Exact,
        Method::Perturbative,
        Method::Zassenhaus,
        Method::MeanField,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Perturbative => "perturbative",
            Method::Zassenhaus => "zassenhaus",
            Method::MeanField => "meanfield",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Method::Exact),
            "pert" | "perturbative" => Ok(Method::Perturbative),
            "zass" | "zassenhaus" => Ok(Method::Zassenhaus),
            "mf" | "meanfield" | "mean-field" => Ok(Method::MeanField),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    pub method: Method,
    pub n_qubits: usize,
    pub m: f64,
    pub gate_time: f64,
    pub entanglement_fidelity: f64,
    /// `(d F_e + 1) / (d + 1)` with `d = 2^N`.
    pub average_fidelity: f64,
    /// `1 - average_fidelity`.
    pub error_rate: f64,
}

impl FidelityReport {
    pub fn new(method: Method, config: &CouplingConfig, entanglement_fidelity: f64) -> Self {
        let d = (config.n_qubits as f64).exp2();
        let average_fidelity = average_fidelity(entanglement_fidelity, d);
        Self {
            method,
            n_qubits: config.n_qubits,
            m: config.m,
            gate_time: config.gate_time,
            entanglement_fidelity,
            average_fidelity,
            error_rate: 1.0 - average_fidelity,
        }
    }

    pub fn n_idle(&self) -> usize {
        self.n_qubits.saturating_sub(2)
    }
}

pub fn average_fidelity(entanglement_fidelity: f64, dim: f64) -> f64 {
    if dim.is_infinite() {
        return entanglement_fidelity;
    }
    (dim * entanglement_fidelity + 1.0) / (dim + 1.0)
}

/// `|Tr(U_ref^dagger U_p)|^2 / d^2`, summed block by block.
pub fn entanglement_fidelity_trace(u_ref: &BlockOperator, u_p: &BlockOperator) -> Result<f64> {
    let overlap = u_ref.trace_adjoint_product(u_p)?;
    let d = u_ref.dimension() as f64;
    Ok(overlap.norm_sqr() / (d * d))
}

/// Fidelity of one parameter point under the chosen model.
///
/// The exact method includes every term of the configured Hamiltonian; the
/// approximate models only see `H_S + m H'`.
pub fn report(method: Method, config: &CouplingConfig) -> Result<FidelityReport> {
    let fe = match method {
        Method::Exact => {
            let register = config.validate()?;
            let u = propagator::exact_propagator(config)?;
            let reference = propagator::ideal_gate(register, config.gate_time);
            entanglement_fidelity_trace(&reference, &u)?
        }
        Method::Perturbative => perturbation::perturbative_fe(config)?,
        Method::Zassenhaus => {
            let register = config.validate()?;
            let u = zassenhaus::zassenhaus_unitary(config)?;
            let reference = propagator::ideal_gate(register, config.gate_time);
            entanglement_fidelity_trace(&reference, &u)?
        }
        Method::MeanField => return meanfield::meanfield_average(config),
    };
    Ok(FidelityReport::new(method, config, fe))
}

/// Exact reports at several gate times.
///
/// At zero detuning the Hamiltonian does not depend on the gate time and a
/// single eigendecomposition serves every point; otherwise each point is
/// rebuilt because the frozen rotating-frame phase moves with `t_g`.
pub fn exact_over_gate_times(
    config: &CouplingConfig,
    times: &[f64],
) -> Result<Vec<FidelityReport>> {
    let register = config.validate()?;
    if config.delta != 0.0 {
        return times
            .iter()
            .map(|&t| report(Method::Exact, &config.with_gate_time(t)))
            .collect();
    }
    let spectral = SpectralOperator::new(&build_total(config)?)?;
    times
        .iter()
        .map(|&t| {
            let cfg = config.with_gate_time(t);
            cfg.validate_parameters()?;
            let fe = entanglement_fidelity_trace(
                &propagator::ideal_gate(register, t),
                &spectral.evolve(t),
            )?;
            Ok(FidelityReport::new(Method::Exact, &cfg, fe))
        })
        .collect()
}

/// Whether `err` is the perturbative model's validity violation.
pub fn is_out_of_range(err: &Error) -> bool {
    matches!(err, Error::ModelOutOfRange { .. })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Register;

    #[test]
    fn identical_unitaries() {
        let u = propagator::ideal_iswap(Register::new(4).unwrap());
        assert!((entanglement_fidelity_trace(&u, &u).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_registers() {
        let a = BlockOperator::identity(Register::new(3).unwrap());
        let b = BlockOperator::identity(Register::new(4).unwrap());
        assert!(entanglement_fidelity_trace(&a, &b).is_err());
    }

    #[test]
    fn exact_without_idle_qubits_is_perfect() {
        let r = report(Method::Exact, &CouplingConfig::new(2, 0.0)).unwrap();
        assert!(r.error_rate.abs() < 1e-12);
        assert!((r.entanglement_fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stored_relation_holds() {
        let r = report(Method::Exact, &CouplingConfig::new(5, 0.05)).unwrap();
        let d = 32.0;
        assert_eq!(
            r.average_fidelity,
            (d * r.entanglement_fidelity + 1.0) / (d + 1.0)
        );
        assert_eq!(r.error_rate, 1.0 - r.average_fidelity);
        assert!(r.entanglement_fidelity <= 1.0 + 1e-12 && r.entanglement_fidelity >= 0.0);
    }

    #[test]
    fn perturbative_out_of_range_is_reported() {
        // n m^2 = 0.5 is past the validity bound
        let err = report(Method::Perturbative, &CouplingConfig::new(52, 0.1)).unwrap_err();
        assert!(is_out_of_range(&err));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!("pert".parse::<Method>().unwrap(), Method::Perturbative);
        assert!("nope".parse::<Method>().is_err());
    }
}
