//! Thin deterministic wrappers over faer kernels.
//!
//! Every kernel runs with `Par::Seq`: results must not depend on the thread
//! count, so parallelism lives one level up (across sectors and sweep points).

use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::linalg::matmul::matmul;
use faer::traits::Conjugate;
use faer::{Accum, Mat, MatRef, Par};
use num_complex::Complex64;

pub type CMat = Mat<Complex64>;

pub fn mul<L, R>(a: MatRef<'_, L>, b: MatRef<'_, R>) -> CMat
where
    L: Conjugate<Canonical = Complex64>,
    R: Conjugate<Canonical = Complex64>,
{
    let mut out = CMat::zeros(a.nrows(), b.ncols());
    matmul(
        out.as_mut(),
        Accum::Replace,
        a,
        b,
        Complex64::new(1.0, 0.0),
        Par::Seq,
    );
    out
}

fn mul_real(a: MatRef<'_, f64>, b: MatRef<'_, f64>) -> Mat<f64> {
    let mut out = Mat::<f64>::zeros(a.nrows(), b.ncols());
    matmul(out.as_mut(), Accum::Replace, a, b, 1.0, Par::Seq);
    out
}

/// Largest entrywise modulus of `a - a^dagger`.
pub fn hermiticity_deviation(a: MatRef<'_, Complex64>) -> f64 {
    let n = a.nrows();
    let mut dev = 0.0f64;
    for j in 0..n {
        for i in j..n {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn is_real(a: MatRef<'_, Complex64>) -> bool {
    (0..a.ncols()).all(|j| (0..a.nrows()).all(|i| a[(i, j)].im == 0.0))
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: MatRef<'_, Complex64>, b: MatRef<'_, Complex64>) -> f64 {
    let mut dev = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            dev = dev.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    dev
}

pub fn identity(n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Spectral decomposition `A = V diag(w) V^dagger` of a Hermitian matrix.
///
/// Real symmetric input is decomposed in real arithmetic, which is several
/// times cheaper and covers every Hamiltonian at zero detuning.
#[derive(Debug, Clone)]
pub enum Spectrum {
    Real { values: Vec<f64>, vectors: Mat<f64> },
    Complex { values: Vec<f64>, vectors: CMat },
}

impl Spectrum {
    /// Returns `None` when the eigensolver fails to converge.
    pub fn of_hermitian(a: MatRef<'_, Complex64>) -> Option<Self> {
        let n = a.nrows();
        if n == 0 {
            return Some(Spectrum::Real {
                values: Vec::new(),
                vectors: Mat::zeros(0, 0),
            });
        }
        if is_real(a) {
            let re = Mat::<f64>::from_fn(n, n, |i, j| a[(i, j)].re);
            let (values, vectors) = evd_real(re.as_ref())?;
            Some(Spectrum::Real { values, vectors })
        } else {
            let (values, vectors) = evd_complex(a)?;
            Some(Spectrum::Complex { values, vectors })
        }
    }

    pub fn values(&self) -> &[f64] {
        match self {
            Spectrum::Real { values, .. } | Spectrum::Complex { values, .. } => values,
        }
    }

    pub fn dim(&self) -> usize {
        self.values().len()
    }

    /// `exp(-i * angle * A)`.
    pub fn exp_i(&self, angle: f64) -> CMat {
        let n = self.dim();
        if n == 0 {
            return CMat::zeros(0, 0);
        }
        match self {
            Spectrum::Real { values, vectors } => {
                // V diag(cos) V^T - i V diag(sin) V^T
                let scaled = |f: fn(f64) -> f64| {
                    Mat::<f64>::from_fn(n, n, |i, j| vectors[(i, j)] * f(-angle * values[j]))
                };
                let vt = vectors.transpose();
                let re = mul_real(scaled(f64::cos).as_ref(), vt);
                let im = mul_real(scaled(f64::sin).as_ref(), vt);
                CMat::from_fn(n, n, |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
            }
            Spectrum::Complex { values, vectors } => {
                let scaled = CMat::from_fn(n, n, |i, j| {
                    vectors[(i, j)] * Complex64::from_polar(1.0, -angle * values[j])
                });
                mul(scaled.as_ref(), vectors.adjoint())
            }
        }
    }
}

fn evd_real(a: MatRef<'_, f64>) -> Option<(Vec<f64>, Mat<f64>)> {
    let n = a.nrows();
    let mut u = Mat::<f64>::zeros(n, n);
    let mut s = Diag::<f64>::zeros(n);
    let scratch = evd::self_adjoint_evd_scratch::<f64>(
        n,
        ComputeEigenvectors::Yes,
        Par::Seq,
        Default::default(),
    );
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        Some(u.as_mut()),
        Par::Seq,
        MemStack::new(&mut MemBuffer::new(scratch)),
        Default::default(),
    )
    .ok()?;
    let values = (0..n).map(|i| s[i]).collect();
    Some((values, u))
}

fn evd_complex(a: MatRef<'_, Complex64>) -> Option<(Vec<f64>, CMat)> {
    let n = a.nrows();
    let mut u = CMat::zeros(n, n);
    let mut s = Diag::<Complex64>::zeros(n);
    let scratch = evd::self_adjoint_evd_scratch::<Complex64>(
        n,
        ComputeEigenvectors::Yes,
        Par::Seq,
        Default::default(),
    );
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        Some(u.as_mut()),
        Par::Seq,
        MemStack::new(&mut MemBuffer::new(scratch)),
        Default::default(),
    )
    .ok()?;
    let values = (0..n).map(|i| s[i].re).collect();
    Some((values, u))
}

/// `exp(-i * angle * A)` for a small dense Hermitian matrix.
pub fn expm_hermitian(a: MatRef<'_, Complex64>, angle: f64) -> Option<CMat> {
    Spectrum::of_hermitian(a).map(|s| s.exp_i(angle))
}
