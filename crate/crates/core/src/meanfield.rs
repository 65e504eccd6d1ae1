//! Mean-field model: idle qubits are replaced by their expectation values,
//! leaving the active pair under a random transverse field `Omega`.
//!
//! A Bloch-uniform idle qubit contributes a magnetization uniform on
//! `[-m, m]` (in units of the active coupling), so `Omega` follows the
//! Irwin-Hall law of `n` such terms. The gate fidelity is the two-qubit
//! magnetized fidelity averaged over that law.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fidelity::{FidelityReport, Method};
use crate::hamiltonian::CouplingConfig;
use crate::linalg::{self, CMat};
use crate::quadrature::Integrator;

/// Above this many terms the alternating Irwin-Hall sum loses too many
/// digits; the B-spline recursion takes over.
pub const ALTERNATING_SUM_MAX_N: usize = 20;

/// Law of the sum of `n` independent uniforms on `[-coupling, coupling]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetizationDistribution {
    pub n: usize,
    pub coupling: f64,
}

impl MagnetizationDistribution {
    pub fn new(n: usize, coupling: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                value: 0.0,
                reason: "needs at least one idle qubit",
            });
        }
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "coupling",
                value: coupling,
                reason: "must be positive and finite",
            });
        }
        Ok(Self { n, coupling })
    }

    pub fn support(&self) -> (f64, f64) {
        let half = self.n as f64 * self.coupling;
        (-half, half)
    }

    /// The `n + 1` knots where the density changes polynomial piece.
    pub fn breakpoints(&self) -> Vec<f64> {
        let (lo, _) = self.support();
        (0..=self.n)
            .map(|k| lo + 2.0 * k as f64 * self.coupling)
            .collect()
    }

    pub fn pdf(&self, omega: f64) -> f64 {
        irwin_hall_pdf(self.n, self.coupling, omega)
    }

    pub fn variance(&self) -> f64 {
        self.n as f64 * self.coupling * self.coupling / 3.0
    }
}

/// Density of the sum of `n` uniforms on `[-coupling, coupling]` at `omega`.
pub fn irwin_hall_pdf(n: usize, coupling: f64, omega: f64) -> f64 {
    assert!(n >= 1, "Irwin-Hall law needs n >= 1");
    let u = (omega + n as f64 * coupling) / (2.0 * coupling);
    if !(0.0..=n as f64).contains(&u) {
        return 0.0;
    }
    // the density is symmetric; summing from the near end limits cancellation
    let u = u.min(n as f64 - u);
    let unit = if n == 1 {
        1.0
    } else if n <= ALTERNATING_SUM_MAX_N {
        standard_alternating(n, u)
    } else {
        standard_recursive(n, u)
    };
    unit / (2.0 * coupling)
}

/// `1/(n-1)! sum_k (-1)^k C(n,k) (u-k)^{n-1} H(u-k)` for the sum of `n` U(0,1).
fn standard_alternating(n: usize, u: f64) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        let s = u - k as f64;
        if s > 0.0 {
            let term = binom * s.powi(n as i32 - 1);
            sum += if k % 2 == 0 { term } else { -term };
        }
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    let fact: f64 = (1..n).map(|k| k as f64).product();
    (sum / fact).max(0.0)
}

/// Cardinal B-spline recursion
/// `f_k(u) = (u f_{k-1}(u) + (k - u) f_{k-1}(u - 1)) / (k - 1)`,
/// which only combines non-negative terms.
fn standard_recursive(n: usize, u: f64) -> f64 {
    // vals[j] = f_k(u - j) for j = 0..n
    let mut vals: Vec<f64> = (0..=n)
        .map(|j| {
            let s = u - j as f64;
            if (0.0..1.0).contains(&s) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for k in 2..=n {
        let kf = k as f64;
        for j in 0..=(n - k) {
            let s = u - j as f64;
            vals[j] = (s * vals[j] + (kf - s) * vals[j + 1]) / (kf - 1.0);
        }
    }
    vals[0]
}

fn two_qubit_generator(omega: f64) -> CMat {
    // basis index = bits (qubit 0 is bit 0)
    CMat::from_fn(4, 4, |r, c| {
        let flip = r ^ c;
        let v = match flip {
            // sx on qubit 0 or qubit 1
            0b01 | 0b10 => omega,
            // flip-flop only within {01, 10}
            0b11 if r.count_ones() == 1 => 1.0,
            _ => 0.0,
        };
        Complex64::new(v, 0.0)
    })
}

/// Entanglement fidelity of the active pair evolved under
/// `H_S + omega (sx_1 + sx_2)` against `exp(-i t H_S)`; `omega` in units of the
/// active coupling.
pub fn magnetized_fidelity(omega: f64, gate_time: f64) -> f64 {
    1.0 - magnetized_infidelity(omega, gate_time)
}

fn magnetized_infidelity(omega: f64, gate_time: f64) -> f64 {
    let u = linalg::expm_hermitian(two_qubit_generator(omega).as_ref(), gate_time)
        .expect("4x4 Hermitian eigendecomposition");
    let reference = linalg::expm_hermitian(two_qubit_generator(0.0).as_ref(), gate_time)
        .expect("4x4 Hermitian eigendecomposition");
    let mut overlap = Complex64::new(0.0, 0.0);
    for j in 0..4 {
        for i in 0..4 {
            overlap += reference[(i, j)].conj() * u[(i, j)];
        }
    }
    1.0 - overlap.norm_sqr() / 16.0
}

/// Mean-field fidelity report: `F = int F(Omega) P_n(Omega) dOmega`, taken as
/// the entanglement fidelity of the full register.
pub fn meanfield_average(config: &CouplingConfig) -> Result<FidelityReport> {
    meanfield_average_with(config, &Integrator::default())
}

pub fn meanfield_average_with(
    config: &CouplingConfig,
    integrator: &Integrator,
) -> Result<FidelityReport> {
    config.validate_parameters()?;
    let n = config.idle_count();
    if n == 0 || config.m == 0.0 {
        return Ok(FidelityReport::new(Method::MeanField, config, 1.0));
    }
    let dist = MagnetizationDistribution::new(n, config.m)?;
    // integrate the infidelity so the tolerance is relative to the error itself
    let integrand = |w: f64| magnetized_infidelity(w, config.gate_time) * dist.pdf(w);
    let knots = dist.breakpoints();
    let mut infidelity = 0.0;
    for panel in knots.windows(2) {
        infidelity += integrator.integrate(integrand, panel[0], panel[1])?;
    }
    Ok(FidelityReport::new(
        Method::MeanField,
        config,
        1.0 - infidelity,
    ))
}
