//! Cavity-mediated couplings from physical qubit parameters.
//!
//! A Schrieffer-Wolff elimination of the cavity gives, for each qubit pair,
//! a transverse exchange `g_i eta_j + g_j eta_i` with
//! `eta_i = g_i omega_c / (omega_c^2 - omega_i^2)`, a ZZ term
//! `lambda_i lambda_j (omega_i + omega_j) / (omega_i omega_j)`, and a frequency
//! shift `omega_i -> omega_i - 2 g_i eta_i`.
//!
//! Couplings keep the sign of this form; for qubits below the cavity it is
//! opposite to the closed form `g1 g2 omega_c (1/(w1^2 - wc^2) + 1/(w2^2 - wc^2))`.
//! The simulator only needs ratios and `|gamma|`, so the sign is reported but
//! not propagated.

mod file;

use std::f64::consts::PI;

pub use file::{parse_hardware_spec, read_hardware_spec};

use crate::error::{Error, Result};
use crate::hamiltonian::CouplingConfig;

/// Coupling-to-detuning ratio above which a warning is issued.
pub const DISPERSIVE_WARN: f64 = 0.1;
/// Coupling-to-detuning ratio above which the elimination is rejected.
pub const DISPERSIVE_LIMIT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitMode {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalQubit {
    pub omega: f64,
    pub g: f64,
    pub lambda: f64,
    pub mode: QubitMode,
}

impl PhysicalQubit {
    pub fn new(omega: f64, g: f64, lambda: f64, mode: QubitMode) -> Self {
        Self {
            omega,
            g,
            lambda,
            mode,
        }
    }

    /// `max(|g|, |lambda|) / |omega_c - omega|`.
    pub fn dispersive_ratio(&self, cavity_freq: f64) -> Result<f64> {
        let detuning = (cavity_freq - self.omega).abs();
        if detuning == 0.0 {
            return Err(Error::Resonance { omega: self.omega });
        }
        Ok(self.g.abs().max(self.lambda.abs()) / detuning)
    }

    /// Errors beyond [`DISPERSIVE_LIMIT`]; returns a warning beyond [`DISPERSIVE_WARN`].
    pub fn check_dispersive(&self, cavity_freq: f64) -> Result<Option<String>> {
        let ratio = self.dispersive_ratio(cavity_freq)?;
        if ratio > DISPERSIVE_LIMIT {
            return Err(Error::NotDispersive {
                ratio,
                limit: DISPERSIVE_LIMIT,
            });
        }
        Ok((ratio > DISPERSIVE_WARN).then(|| {
            format!(
                "qubit at omega = {} is weakly dispersive (coupling/detuning = {ratio:.3})",
                self.omega
            )
        }))
    }

    /// Frequency after the cavity-induced shift, `omega - 2 g eta`.
    pub fn renormalized_omega(&self, cavity_freq: f64) -> Result<f64> {
        Ok(self.omega - 2.0 * self.g * eta(self, cavity_freq)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardwareSpec {
    pub cavity_freq: f64,
    pub qubits: Vec<PhysicalQubit>,
}

impl HardwareSpec {
    pub fn on_qubits(&self) -> impl Iterator<Item = &PhysicalQubit> {
        self.qubits.iter().filter(|q| q.mode == QubitMode::On)
    }

    pub fn off_qubits(&self) -> impl Iterator<Item = &PhysicalQubit> {
        self.qubits.iter().filter(|q| q.mode == QubitMode::Off)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cavity_freq.is_finite() && self.cavity_freq > 0.0) {
            return Err(Error::InvalidHardware(format!(
                "cavity_freq must be positive, got {}",
                self.cavity_freq
            )));
        }
        if self.qubits.len() < 2 {
            return Err(Error::InvalidHardware(format!(
                "need at least 2 qubits, got {}",
                self.qubits.len()
            )));
        }
        let on = self.on_qubits().count();
        if on != 2 {
            return Err(Error::InvalidHardware(format!(
                "exactly 2 qubits must be `on`, got {on}"
            )));
        }
        for q in &self.qubits {
            if ![q.omega, q.g, q.lambda].iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidHardware(format!(
                    "non-finite qubit parameter in {q:?}"
                )));
            }
        }
        Ok(())
    }
}

/// `g omega_c / (omega_c^2 - omega^2)`.
pub fn eta(qubit: &PhysicalQubit, cavity_freq: f64) -> Result<f64> {
    let denom = cavity_freq * cavity_freq - qubit.omega * qubit.omega;
    if denom == 0.0 {
        return Err(Error::Resonance { omega: qubit.omega });
    }
    Ok(qubit.g * cavity_freq / denom)
}

/// Transverse exchange `g_i eta_j + g_j eta_i`.
pub fn pair_coupling(qi: &PhysicalQubit, qj: &PhysicalQubit, cavity_freq: f64) -> Result<f64> {
    Ok(qi.g * eta(qj, cavity_freq)? + qj.g * eta(qi, cavity_freq)?)
}

/// `g1 g2 omega_c (1/(w1^2 - wc^2) + 1/(w2^2 - wc^2))`, the negative of
/// [`pair_coupling`].
pub fn pair_coupling_closed_form(
    qi: &PhysicalQubit,
    qj: &PhysicalQubit,
    cavity_freq: f64,
) -> Result<f64> {
    let wc2 = cavity_freq * cavity_freq;
    let inv = |q: &PhysicalQubit| {
        let d = q.omega * q.omega - wc2;
        if d == 0.0 {
            Err(Error::Resonance { omega: q.omega })
        } else {
            Ok(1.0 / d)
        }
    };
    Ok(qi.g * qj.g * cavity_freq * (inv(qi)? + inv(qj)?))
}

/// `lambda_i lambda_j (omega_i + omega_j) / (omega_i omega_j)`.
pub fn zz_coefficient(qi: &PhysicalQubit, qj: &PhysicalQubit) -> Result<f64> {
    if qi.omega == 0.0 || qj.omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    Ok(qi.lambda * qj.lambda * (qi.omega + qj.omega) / (qi.omega * qj.omega))
}

/// Simulator parameters derived from a hardware description.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedCouplings {
    pub config: CouplingConfig,
    /// On-on exchange with its physical sign.
    pub gamma_signed: f64,
    /// `pi / (2 |gamma|)`, the iSWAP duration.
    pub gate_duration: f64,
    pub warnings: Vec<String>,
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn spread_warning(what: &str, values: &[f64]) -> Option<String> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let scale = lo.abs().max(hi.abs());
    (values.len() > 1 && hi - lo > 1e-9 * scale).then(|| {
        format!("{what} differ across idle qubits (range {lo:.6e} to {hi:.6e}); using the mean")
    })
}

/// Reduce a hardware description to a [`CouplingConfig`] at dimensionless
/// gate time `gate_time`.
pub fn to_coupling_config(spec: &HardwareSpec, gate_time: f64) -> Result<DerivedCouplings> {
    spec.validate()?;
    let wc = spec.cavity_freq;
    let mut warnings = Vec::new();
    for q in &spec.qubits {
        warnings.extend(q.check_dispersive(wc)?);
    }
    let on: Vec<&PhysicalQubit> = spec.on_qubits().collect();
    let off: Vec<&PhysicalQubit> = spec.off_qubits().collect();

    let gamma_signed = pair_coupling(on[0], on[1], wc)?;
    if gamma_signed == 0.0 {
        return Err(Error::InvalidHardware(
            "the two on qubits do not couple (gamma = 0)".into(),
        ));
    }
    let gamma = gamma_signed.abs();

    let mut on_idle = Vec::new();
    for q in &off {
        for p in &on {
            on_idle.push(pair_coupling(p, q, wc)?.abs() / gamma);
        }
    }
    let mut idle_idle = Vec::new();
    let mut zz = Vec::new();
    for (a, qa) in off.iter().enumerate() {
        for qb in &off[a + 1..] {
            idle_idle.push(pair_coupling(qa, qb, wc)?.abs() / gamma);
            zz.push(zz_coefficient(qa, qb)? / gamma);
        }
    }
    warnings.extend(spread_warning("on-idle couplings", &on_idle));
    warnings.extend(spread_warning("idle-idle couplings", &idle_idle));
    warnings.extend(spread_warning("ZZ coefficients", &zz));

    let mut on_freq = Vec::new();
    for q in &on {
        on_freq.push(q.renormalized_omega(wc)?);
    }
    let mut off_freq = Vec::new();
    for q in &off {
        off_freq.push(q.renormalized_omega(wc)?);
    }
    let delta = if off.is_empty() {
        0.0
    } else {
        mean(&on_freq) - mean(&off_freq)
    };

    let config = CouplingConfig {
        gamma,
        m: mean(&on_idle),
        m_tilde: mean(&idle_idle),
        omega_tilde: mean(&zz),
        delta,
        gate_time,
        n_qubits: spec.qubits.len(),
    };
    warnings.extend(config.hierarchy_warnings());
    Ok(DerivedCouplings {
        config,
        gamma_signed,
        gate_duration: PI / (2.0 * gamma),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use super::*;

    fn on(omega: f64, g: f64) -> PhysicalQubit {
        PhysicalQubit::new(omega, g, 0.0, QubitMode::On)
    }

    fn off(omega: f64, g: f64) -> PhysicalQubit {
        PhysicalQubit::new(omega, g, 0.0, QubitMode::Off)
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(&on(5.0, 0.0), 7.0).unwrap(), 0.0);
        assert!((eta(&on(5.0, 0.1), 7.0).unwrap() - 0.7 / 24.0).abs() < 1e-15);
        assert!(eta(&on(8.0, 0.1), 7.0).unwrap() < 0.0);
        assert!(matches!(
            eta(&on(7.0, 0.1), 7.0),
            Err(Error::Resonance { .. })
        ));
    }

    #[test]
    fn symmetric_pair() {
        let (g, w, wc) = (0.1, 5.0, 7.0);
        let gamma = pair_coupling(&on(w, g), &on(w, g), wc).unwrap();
        assert!((gamma - 2.0 * g * g * wc / (wc * wc - w * w)).abs() < 1e-15);
        let closed = pair_coupling_closed_form(&on(w, g), &on(w, g), wc).unwrap();
        assert!((gamma + closed).abs() < 1e-15 * gamma.abs());
    }

    #[test]
    fn zz_values() {
        let a = PhysicalQubit::new(5.0, 0.1, 0.02, QubitMode::Off);
        assert!((zz_coefficient(&a, &a).unwrap() - 2.0 * 0.02 * 0.02 / 5.0).abs() < 1e-16);
        assert_eq!(zz_coefficient(&off(5.0, 0.1), &a).unwrap(), 0.0);
        let z = PhysicalQubit::new(0.0, 0.1, 0.02, QubitMode::Off);
        assert_eq!(zz_coefficient(&z, &a), Err(Error::ZeroFrequency));
    }

    #[test]
    fn dispersive_thresholds() {
        assert!(on(5.0, 0.1).check_dispersive(7.0).unwrap().is_none());
        assert!(on(5.0, 0.5).check_dispersive(7.0).unwrap().is_some());
        assert!(matches!(
            on(5.0, 1.5).check_dispersive(7.0),
            Err(Error::NotDispersive { .. })
        ));
    }

    #[test]
    fn ratio_of_couplings() {
        let spec = HardwareSpec {
            cavity_freq: 7.0,
            qubits: vec![on(5.0, 0.1), on(5.0, 0.1), off(5.0, 1e-3), off(5.0, 1e-3)],
        };
        let d = to_coupling_config(&spec, FRAC_PI_2).unwrap();
        assert!((d.config.m - 1e-2).abs() < 1e-15);
        assert!((d.config.m_tilde - 1e-4).abs() < 1e-17);
        assert_eq!(d.config.n_qubits, 4);
        assert!(d.warnings.is_empty(), "{:?}", d.warnings);
    }

    #[test]
    fn bare_pair() {
        let spec = HardwareSpec {
            cavity_freq: 7.0,
            qubits: vec![on(5.0, 0.1), on(5.0, 0.1)],
        };
        let d = to_coupling_config(&spec, FRAC_PI_2).unwrap();
        assert_eq!(d.config.m, 0.0);
        assert_eq!(d.config.delta, 0.0);
        assert!((d.gate_duration - PI / (2.0 * d.config.gamma)).abs() < 1e-12);
    }

    #[test]
    fn heterogeneous_idle_warns() {
        let spec = HardwareSpec {
            cavity_freq: 7.0,
            qubits: vec![on(5.0, 0.1), on(5.0, 0.1), off(5.0, 1e-3), off(5.0, 2e-3)],
        };
        let d = to_coupling_config(&spec, FRAC_PI_2).unwrap();
        assert!(d.warnings.iter().any(|w| w.contains("on-idle")));
        assert!((d.config.m - 1.5e-2).abs() < 1e-15);
    }

    #[test]
    fn wrong_number_of_on_qubits() {
        let spec = HardwareSpec {
            cavity_freq: 7.0,
            qubits: vec![on(5.0, 0.1), off(5.0, 0.1), off(5.0, 0.1)],
        };
        assert!(matches!(
            to_coupling_config(&spec, FRAC_PI_2),
            Err(Error::InvalidHardware(_))
        ));
    }
}
