//! Adaptive Gauss-Legendre quadrature on a finite interval.

use crate::error::{Error, Result};

/// Nodes and weights of the `order`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pnm1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[derive(Debug, Clone)]
pub struct Integrator {
    coarse: (Vec<f64>, Vec<f64>),
    fine: (Vec<f64>, Vec<f64>),
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for Integrator {
    fn default() -> Self {
        Self::new(1e-8)
    }
}

fn apply_rule(rule: &(Vec<f64>, Vec<f64>), f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (half, mid) = ((b - a) / 2.0, (a + b) / 2.0);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

impl Integrator {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            coarse: gauss_legendre(10),
            fine: gauss_legendre(20),
            rel_tol,
            abs_tol: 1e-300,
            max_depth: 30,
        }
    }

    /// Integral of `f` over `[a, b]`, bisecting panels whose 10- and 20-point
    /// estimates disagree.
    pub fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let whole = apply_rule(&self.fine, &f, a, b);
        let target = (self.rel_tol * whole.abs()).max(self.abs_tol);
        let mut stack = vec![(a, b, 0u32)];
        let mut total = 0.0;
        let mut worst = 0.0f64;
        let mut failed = false;
        while let Some((lo, hi, depth)) = stack.pop() {
            let fine = apply_rule(&self.fine, &f, lo, hi);
            let coarse = apply_rule(&self.coarse, &f, lo, hi);
            let err = (fine - coarse).abs();
            let budget = target * (hi - lo) / (b - a);
            if err <= budget {
                total += fine;
            } else if depth >= self.max_depth {
                total += fine;
                worst = worst.max(err / budget.max(f64::MIN_POSITIVE));
                failed = true;
            } else {
                let mid = (lo + hi) / 2.0;
                stack.push((mid, hi, depth + 1));
                stack.push((lo, mid, depth + 1));
            }
        }
        if failed {
            return Err(Error::Quadrature {
                achieved: worst * self.rel_tol,
                requested: self.rel_tol,
            });
        }
        Ok(total)
    }
}
