//! Exact evolution `U = exp(-i * angle * H)` computed sector by sector.
//!
//! Each Hermitian block is diagonalized once; [`SpectralOperator`] keeps the
//! eigendecompositions so the same Hamiltonian can be re-exponentiated at many
//! angles (gate-time sweeps) for the price of a matrix product per block.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::block::BlockOperator;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_total, CouplingConfig};
use crate::hilbert::{ExcitationSector, Register};
use crate::linalg::{self, CMat, Spectrum};

/// Per-sector eigendecomposition of a Hermitian [`BlockOperator`].
#[derive(Debug, Clone)]
pub struct SpectralOperator {
    register: Register,
    sectors: Arc<[ExcitationSector]>,
    spectra: Vec<Spectrum>,
}

impl SpectralOperator {
    pub fn new(h: &BlockOperator) -> Result<Self> {
        let spectra = h
            .blocks()
            .par_iter()
            .zip(h.sectors().par_iter())
            .map(|(block, sector)| {
                let scale = (0..block.ncols())
                    .flat_map(|j| (0..block.nrows()).map(move |i| block[(i, j)].norm()))
                    .fold(1.0, f64::max);
                let deviation = linalg::hermiticity_deviation(block.as_ref());
                if deviation > 1e-12 * scale {
                    return Err(Error::NotHermitian {
                        weight: sector.weight(),
                        deviation,
                    });
                }
                Spectrum::of_hermitian(block.as_ref()).ok_or(Error::Eigen {
                    weight: sector.weight(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            register: h.register(),
            sectors: h.shared_sectors(),
            spectra,
        })
    }

    pub fn register(&self) -> Register {
        self.register
    }

    /// Eigenvalues of the block with excitation number `weight`, ascending.
    pub fn eigenvalues(&self, weight: usize) -> &[f64] {
        self.spectra[weight].values()
    }

    /// `exp(-i * angle * H)`.
    pub fn evolve(&self, angle: f64) -> BlockOperator {
        let blocks = self.spectra.par_iter().map(|s| s.exp_i(angle)).collect();
        BlockOperator::from_parts(self.register, Arc::clone(&self.sectors), blocks)
    }
}

/// `exp(-i * angle * H)` for a blockwise Hermitian `H`.
pub fn expm_block(h: &BlockOperator, angle: f64) -> Result<BlockOperator> {
    if !angle.is_finite() {
        return Err(Error::InvalidParameter {
            name: "angle",
            value: angle,
            reason: "must be finite",
        });
    }
    Ok(SpectralOperator::new(h)?.evolve(angle))
}

/// Operator that acts on the active pair as `[[diag, off], [off, diag]]`
/// on `{|01>, |10>}` and as the identity everywhere else.
fn active_pair_gate(register: Register, diag: Complex64, off: Complex64) -> BlockOperator {
    let [a, b] = register.active();
    let mask = (1u32 << a) | (1u32 << b);
    BlockOperator::from_sectors(register, |s| {
        let mut m = CMat::zeros(s.len(), s.len());
        for (p, &bits) in s.states().iter().enumerate() {
            let pair = bits & mask;
            if pair == 0 || pair == mask {
                m[(p, p)] = Complex64::new(1.0, 0.0);
            } else {
                m[(p, p)] = diag;
                let q = s.position(bits ^ mask).expect("swap stays in sector");
                m[(q, p)] = off;
            }
        }
        m
    })
}

/// The unperturbed gate `exp(-i * gate_time * H_S)`, in closed form.
///
/// Uses `H_S^3 = H_S`: the result is `1 + (cos t - 1) H_S^2 - i sin t H_S`.
pub fn ideal_gate(register: Register, gate_time: f64) -> BlockOperator {
    active_pair_gate(
        register,
        Complex64::new(gate_time.cos(), 0.0),
        Complex64::new(0.0, -gate_time.sin()),
    )
}

/// iSWAP on the active pair (`|01> -> i|10>`, `|10> -> i|01>`), identity on idle qubits.
///
/// This is `ideal_gate(register, -pi/2)` with exact entries. The evolution
/// `exp(-i pi/2 H_S)` produces its adjoint; fidelities are insensitive to the
/// choice because the Hamiltonians are real at zero detuning.
pub fn ideal_iswap(register: Register) -> BlockOperator {
    active_pair_gate(register, Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0))
}

/// Exact propagator of the full effective Hamiltonian over `config.gate_time`.
pub fn exact_propagator(config: &CouplingConfig) -> Result<BlockOperator> {
    let h = build_total(config)?;
    expm_block(&h, config.gate_time)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::hamiltonian::build_hs;

    fn reg(n: usize) -> Register {
        Register::new(n).unwrap()
    }

    #[test]
    fn zero_hamiltonian_gives_identity() {
        let z = BlockOperator::zeros(reg(4));
        let u = expm_block(&z, 1.234).unwrap();
        assert_eq!(
            u.max_abs_diff(&BlockOperator::identity(reg(4))).unwrap(),
            0.0
        );
    }

    #[test]
    fn hs_quarter_period() {
        let u = expm_block(&build_hs(reg(2)), FRAC_PI_2).unwrap();
        let b = u.block(1);
        assert!(b[(0, 0)].norm() < 1e-15);
        assert!((b[(0, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((b[(1, 0)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        // the displayed iSWAP is the evolution backwards in time
        let back = expm_block(&build_hs(reg(2)), -FRAC_PI_2).unwrap();
        assert!(back.max_abs_diff(&ideal_iswap(reg(2))).unwrap() < 1e-15);
    }

    #[test]
    fn iswap_matrix() {
        let u = ideal_iswap(reg(2)).to_dense();
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let expected = [
            [one, zero, zero, zero],
            [zero, zero, i, zero],
            [zero, i, zero, zero],
            [zero, zero, zero, one],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(u[(r, c)], v);
            }
        }
    }

    #[test]
    fn iswap_on_three_qubits() {
        let u = ideal_iswap(reg(3));
        // qubit 1 excited goes to qubit 0 excited with phase i, idle qubit untouched
        assert_eq!(u.entry(0b001, 0b010), Complex64::new(0.0, 1.0));
        assert_eq!(u.entry(0b101, 0b110), Complex64::new(0.0, 1.0));
        assert_eq!(u.entry(0b100, 0b100), Complex64::new(1.0, 0.0));
        assert!(u.is_unitary(1e-15));
    }

    #[test]
    fn ideal_gate_matches_numeric_exponential() {
        for n in 2..=5 {
            for t in [0.3, FRAC_PI_2, 2.0] {
                let closed = ideal_gate(reg(n), t);
                let numeric = expm_block(&build_hs(reg(n)), t).unwrap();
                assert!(closed.max_abs_diff(&numeric).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn group_property() {
        let h = build_total(&CouplingConfig::new(5, 0.1)).unwrap();
        let spec = SpectralOperator::new(&h).unwrap();
        let half = spec.evolve(FRAC_PI_2);
        let twice = half.matmul(&half).unwrap();
        assert!(twice.max_abs_diff(&spec.evolve(PI)).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let reg = reg(2);
        let mut blocks: Vec<CMat> = build_hs(reg).blocks().to_vec();
        blocks[1][(0, 1)] = Complex64::new(0.0, 1.0);
        let bad = BlockOperator::from_blocks(reg, blocks).unwrap();
        assert!(matches!(
            expm_block(&bad, 1.0),
            Err(Error::NotHermitian { weight: 1, .. })
        ));
    }

    #[test]
    fn rejects_non_finite_angle() {
        assert!(expm_block(&build_hs(reg(2)), f64::NAN).is_err());
    }
}
