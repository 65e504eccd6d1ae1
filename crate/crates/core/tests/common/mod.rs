//! Dense full-space reference implementations, built from Kronecker products
//! of Pauli matrices and a Taylor-series exponential. Shares no code with the
//! block-sector machinery under test.
#![allow(dead_code)]

use num_complex::Complex64 as C;

#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub data: Vec<C>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C::new(0.0, 0.0); n * n],
        }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[[C; 2]; 2]) -> Self {
        let mut m = Self::zeros(2);
        for r in 0..2 {
            for c in 0..2 {
                m[(r, c)] = rows[r][c];
            }
        }
        m
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut out = Self::zeros(n);
        for a in 0..self.n {
            for b in 0..self.n {
                let s = self[(a, b)];
                if s == C::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.n {
                    for d in 0..other.n {
                        out[(a * other.n + c, b * other.n + d)] = s * other[(c, d)];
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(C::new(1.0, 0.0), other)
    }

    /// `self + s * other`
    pub fn axpy(&self, s: C, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + s * b)
                .collect(),
        }
    }

    pub fn scale(&self, s: C) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.axpy(C::new(-1.0, 0.0), other).max_abs()
    }
}

impl std::ops::Index<(usize, usize)> for Dense {
    type Output = C;
    fn index(&self, (r, c): (usize, usize)) -> &C {
        &self.data[r * self.n + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Dense {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C {
        &mut self.data[r * self.n + c]
    }
}

const fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Raising operator with bit 1 = excited: `|1><0|`.
pub fn sigma_plus() -> Dense {
    Dense::from_rows(&[[c(0., 0.), c(0., 0.)], [c(1., 0.), c(0., 0.)]])
}

pub fn sigma_minus() -> Dense {
    sigma_plus().dagger()
}

pub fn sigma_z() -> Dense {
    Dense::from_rows(&[[c(-1., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]])
}

pub fn sigma_x() -> Dense {
    Dense::from_rows(&[[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]])
}

/// Product of single-qubit operators on an `n`-qubit register, qubit 0 being
/// the least significant bit of the basis index.
pub fn embed(n: usize, ops: &[(usize, Dense)]) -> Dense {
    let mut out = Dense::eye(1);
    for q in (0..n).rev() {
        let factor = ops
            .iter()
            .find(|(k, _)| *k == q)
            .map(|(_, op)| op.clone())
            .unwrap_or_else(|| Dense::eye(2));
        out = out.kron(&factor);
    }
    out
}

/// `phase s+_i s-_j + conj(phase) s-_i s+_j`
pub fn flipflop(n: usize, i: usize, j: usize, phase: C) -> Dense {
    let a = embed(n, &[(i, sigma_plus()), (j, sigma_minus())]);
    let b = embed(n, &[(i, sigma_minus()), (j, sigma_plus())]);
    a.scale(phase).add(&b.scale(phase.conj()))
}

pub struct DenseModel {
    pub hs: Dense,
    pub hprime: Dense,
    pub htilde: Dense,
    pub hzz: Dense,
}

pub fn dense_model(n: usize, delta_phase: f64) -> DenseModel {
    let dim = 1usize << n;
    let one = c(1.0, 0.0);
    let hs = flipflop(n, 0, 1, one);
    let mut hprime = Dense::zeros(dim);
    let ph = C::from_polar(1.0, -delta_phase);
    for i in 0..2 {
        for j in 2..n {
            hprime = hprime.add(&flipflop(n, i, j, ph));
        }
    }
    let mut htilde = Dense::zeros(dim);
    let mut hzz = Dense::zeros(dim);
    for i in 2..n {
        for j in i + 1..n {
            htilde = htilde.add(&flipflop(n, i, j, one));
            hzz = hzz.add(&embed(n, &[(i, sigma_z()), (j, sigma_z())]));
        }
    }
    DenseModel {
        hs,
        hprime,
        htilde,
        hzz,
    }
}

/// `exp(-i angle h)` by scaling and squaring of a Taylor series.
pub fn expm_taylor(h: &Dense, angle: f64) -> Dense {
    let a = h.scale(c(0.0, -angle));
    let norm = a.norm1();
    let mut squarings = 0;
    let mut s = 1.0;
    while norm / s > 0.25 {
        s *= 2.0;
        squarings += 1;
    }
    let a = a.scale(c(1.0 / s, 0.0));
    let mut term = Dense::eye(h.n);
    let mut sum = Dense::eye(h.n);
    for k in 1..=30 {
        term = term.mul(&a).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.max_abs() < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

/// `<psi|(U_ref^dagger U ⊗ 1)|psi>` squared, with `|psi> = sum_a |a>|a> / sqrt(d)`
/// built explicitly on the doubled register.
pub fn ancilla_fidelity(u_ref: &Dense, u: &Dense) -> f64 {
    let d = u.n;
    let norm = 1.0 / (d as f64).sqrt();
    let mut psi = vec![c(0.0, 0.0); d * d];
    for a in 0..d {
        psi[a * d + a] = c(norm, 0.0);
    }
    // (U ⊗ 1)|psi>, system index major
    let apply = |op: &Dense, v: &[C]| {
        let mut out = vec![c(0.0, 0.0); d * d];
        for s in 0..d {
            for t in 0..d {
                let o = op[(s, t)];
                if o == c(0.0, 0.0) {
                    continue;
                }
                for anc in 0..d {
                    out[s * d + anc] += o * v[t * d + anc];
                }
            }
        }
        out
    };
    let a = apply(u, &psi);
    let b = apply(u_ref, &psi);
    let overlap: C = b.iter().zip(&a).map(|(x, y)| x.conj() * y).sum();
    overlap.norm_sqr()
}

/// Dense copy of a block operator, via its public entry accessor.
pub fn densify(op: &xtalk_core::BlockOperator) -> Dense {
    let d = op.dimension();
    let mut out = Dense::zeros(d);
    for r in 0..d {
        for col in 0..d {
            out[(r, col)] = op.entry(r as u32, col as u32);
        }
    }
    out
}

/// Least-squares fit `y = a + b x`, returning `(a, b, r_squared)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let b = sxy / sxx;
    (my - b * mx, b, sxy * sxy / (sxx * syy))
}
