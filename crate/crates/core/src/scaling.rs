//! Connectivity limit: how many idle qubits fit under an error budget.
//!
//! With `A = E_thr / (x m^2)` and `N = n + 2`, the budget condition
//! `2^N n / (2^N + 1) <= A` rearranges to `n / (1 + 2^-(n+2)) <= A`, whose
//! real root is `A + W0(A ln2 / 4 * 2^-A) / ln2`.

use std::f64::consts::{E, LN_2};

use crate::error::{Error, Result};
use crate::perturbation::PerturbationCoefficients;

/// Principal branch of the Lambert W function on `[-1/e, inf)`.
pub fn lambert_w0(z: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if z.is_nan() || z < branch {
        return Err(Error::LambertDomain(z));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    if z - branch < 1e-300 {
        return Ok(-1.0);
    }
    // branch-point series near -1/e, log asymptotics for large z
    let mut w = if z < -0.25 {
        let p = (2.0 * (E * z + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if z < 3.0 {
        let l = (1.0 + z).ln();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l = z.ln();
        l - l.ln()
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-300 {
            break;
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(1e-300) {
            break;
        }
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingSolution {
    pub m: f64,
    pub e_thr: f64,
    pub n_closed_form: u64,
    pub n_numeric: u64,
    pub x_used: f64,
    /// Un-floored root of the budget condition.
    pub real_valued_n: f64,
}

impl ScalingSolution {
    pub fn n_qubits(&self) -> u64 {
        self.n_closed_form + 2
    }
}

fn check_inputs(m: f64, e_thr: f64, x: f64) -> Result<()> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m,
            reason: "must be positive and finite",
        });
    }
    if !(e_thr > 0.0 && e_thr < 1.0) {
        return Err(Error::InvalidParameter {
            name: "e_thr",
            value: e_thr,
            reason: "must lie in (0, 1)",
        });
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            reason: "must be positive and finite",
        });
    }
    Ok(())
}

/// Left side of the budget condition as a function of `n`, `n / (1 + 2^-(n+2))`.
pub fn budget_load(n: f64) -> f64 {
    n / (1.0 + (-(n + 2.0) * LN_2).exp())
}

/// Budget `E_thr / (x m^2)` in units of idle qubits.
pub fn budget(m: f64, e_thr: f64, x: f64) -> f64 {
    e_thr / (x * m * m)
}

/// Lambert-W closed form, before flooring.
pub fn closed_form_real(a: f64) -> Result<f64> {
    // A 2^-A underflows harmlessly to 0 for large A
    let z = a * LN_2 / 4.0 * (-a * LN_2).exp();
    Ok(a + lambert_w0(z)? / LN_2)
}

/// Small-`m / E_thr` form `A + A/4 2^-A`, before flooring.
pub fn asymptotic_real(a: f64) -> f64 {
    a + a / 4.0 * (-a * LN_2).exp()
}

/// Real root of `budget_load(n) = a` by bisection.
pub fn real_root(a: f64) -> f64 {
    // budget_load is increasing with budget_load(n) <= n <= budget_load(n) * 1.25
    let (mut lo, mut hi) = (a, 1.25 * a + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if budget_load(mid) <= a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Largest integer `n` with `budget_load(n) <= a`.
fn integer_search(a: f64) -> u64 {
    let mut n = a.floor().max(0.0) as u64;
    while budget_load((n + 1) as f64) <= a {
        n += 1;
    }
    while n > 0 && budget_load(n as f64) > a {
        n -= 1;
    }
    n
}

/// Maximum idle-qubit count at the iSWAP operating point.
pub fn max_idle_qubits(m: f64, e_thr: f64) -> Result<ScalingSolution> {
    max_idle_qubits_with_x(m, e_thr, PerturbationCoefficients::iswap().x)
}

pub fn max_idle_qubits_with_x(m: f64, e_thr: f64, x: f64) -> Result<ScalingSolution> {
    check_inputs(m, e_thr, x)?;
    let a = budget(m, e_thr, x);
    let closed = closed_form_real(a)?;
    Ok(ScalingSolution {
        m,
        e_thr,
        n_closed_form: closed.floor().max(0.0) as u64,
        n_numeric: integer_search(a),
        x_used: x,
        real_valued_n: real_root(a),
    })
}

/// Log-spaced grid of `points` values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..points)
                .map(|k| {
                    if k == 0 {
                        lo
                    } else if k + 1 == points {
                        hi
                    } else {
                        (a + (b - a) * k as f64 / (points - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}
