//! Computational basis of an N-qubit register and its split into
//! total-excitation (Hamming weight) sectors.
//!
//! Basis states are bitstrings stored as `u32`, qubit `q` being bit `q`
//! (qubit 0 is the least significant bit). A set bit is an excited qubit
//! (spin up). Qubits 0 and 1 are the operated pair; qubits `2..N` are idle.
//! Within a sector, states are sorted ascending as integers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register the simulator accepts; binomial(16, 8) = 12870.
pub const MAX_QUBITS: usize = 16;

/// The two operated qubits (0-based).
pub const ACTIVE: [usize; 2] = [0, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Register {
    n_qubits: usize,
}

impl Register {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::RegisterSize {
                n_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(Self { n_qubits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of idle qubits, `n = N - 2`.
    pub fn idle_count(&self) -> usize {
        self.n_qubits - 2
    }

    pub fn active(&self) -> [usize; 2] {
        ACTIVE
    }

    pub fn idle(&self) -> std::ops::Range<usize> {
        2..self.n_qubits
    }

    /// Full Hilbert space dimension `2^N`.
    pub fn dimension(&self) -> usize {
        1 << self.n_qubits
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n_qubits {
            return Err(Error::QubitIndex {
                index,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }
}

/// All basis states with a fixed number of excitations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcitationSector {
    n_qubits: usize,
    weight: usize,
    states: Vec<u32>,
}

impl ExcitationSector {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Position of `bits` within the sector, if it belongs to it.
    pub fn position(&self, bits: u32) -> Option<usize> {
        self.states.binary_search(&bits).ok()
    }
}

/// Splits the register basis into its `N + 1` excitation sectors, ordered by weight.
pub fn enumerate_sectors(register: &Register) -> Vec<ExcitationSector> {
    let n = register.n_qubits();
    let mut sectors: Vec<ExcitationSector> = (0..=n)
        .map(|weight| ExcitationSector {
            n_qubits: n,
            weight,
            states: Vec::with_capacity(binomial(n, weight)),
        })
        .collect();
    for bits in 0..(1u32 << n) {
        sectors[bits.count_ones() as usize].states.push(bits);
    }
    sectors
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Coordinate-format matrix restricted to one excitation sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorTriplets {
    pub dim: usize,
    pub entries: Vec<(usize, usize, Complex64)>,
}

impl SectorTriplets {
    pub fn to_dense(&self) -> faer::Mat<Complex64> {
        let mut m = faer::Mat::<Complex64>::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }
}

/// Matrix of `phase * s+(i) s-(j) + conj(phase) * s-(i) s+(j)` on `sector`.
///
/// Connects exactly the pairs of states that differ by moving one excitation
/// between qubits `i` and `j`.
pub fn apply_flipflop(
    sector: &ExcitationSector,
    i: usize,
    j: usize,
    phase: Complex64,
) -> Result<SectorTriplets> {
    let register = Register::new(sector.n_qubits)?;
    register.check_index(i)?;
    register.check_index(j)?;
    if i == j {
        return Err(Error::SameQubit(i));
    }
    let (bi, bj) = (1u32 << i, 1u32 << j);
    let mut entries = Vec::new();
    for (col, &s) in sector.states.iter().enumerate() {
        // s-(j) then s+(i): needs j excited and i empty
        if s & bj != 0 && s & bi == 0 {
            let t = s ^ bi ^ bj;
            let row = sector.position(t).expect("excitation number is conserved");
            entries.push((row, col, phase));
            entries.push((col, row, phase.conj()));
        }
    }
    Ok(SectorTriplets {
        dim: sector.len(),
        entries,
    })
}

/// Eigenvalue of `sz(q)` on basis state `bits`: +1 if excited, -1 otherwise.
pub fn sz(bits: u32, q: usize) -> f64 {
    if bits & (1 << q) != 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn register_bounds() {
        assert!(Register::new(1).is_err());
        assert!(Register::new(17).is_err());
        let r = Register::new(16).unwrap();
        assert_eq!(r.idle_count(), 14);
        assert_eq!(Register::new(2).unwrap().idle_count(), 0);
    }

    #[test]
    fn sector_sizes_small() {
        let sizes: Vec<_> = enumerate_sectors(&Register::new(2).unwrap())
            .iter()
            .map(ExcitationSector::len)
            .collect();
        assert_eq!(sizes, vec![1, 2, 1]);
    }

    #[test]
    fn four_qubit_half_filling() {
        let sectors = enumerate_sectors(&Register::new(4).unwrap());
        assert_eq!(
            sectors[2].states(),
            &[0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]
        );
    }

    #[test]
    fn largest_sector_at_fourteen() {
        let sectors = enumerate_sectors(&Register::new(14).unwrap());
        let (k, size) = sectors
            .iter()
            .map(|s| (s.weight(), s.len()))
            .max_by_key(|&(_, l)| l)
            .unwrap();
        assert_eq!((k, size), (7, 3432));
    }

    #[test]
    fn sectors_partition_basis() {
        for n in 2..=10 {
            let reg = Register::new(n).unwrap();
            let sectors = enumerate_sectors(&reg);
            assert_eq!(sectors.len(), n + 1);
            let mut all: Vec<u32> = sectors.iter().flat_map(|s| s.states().to_vec()).collect();
            assert_eq!(all.len(), reg.dimension());
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), reg.dimension());
            for s in &sectors {
                assert_eq!(s.len(), binomial(n, s.weight()));
            }
        }
    }

    #[test]
    fn flipflop_two_qubits() {
        let sectors = enumerate_sectors(&Register::new(2).unwrap());
        let m = apply_flipflop(&sectors[1], 0, 1, c(1.0, 0.0))
            .unwrap()
            .to_dense();
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(1.0, 0.0));
        assert_eq!(m[(0, 0)], c(0.0, 0.0));
        let empty = apply_flipflop(&sectors[0], 0, 1, c(1.0, 0.0)).unwrap();
        assert!(empty.entries.is_empty());
    }

    #[test]
    fn flipflop_phase_placement() {
        let theta = 0.37;
        let phase = Complex64::from_polar(1.0, theta);
        let sectors = enumerate_sectors(&Register::new(3).unwrap());
        let k1 = &sectors[1];
        let m = apply_flipflop(k1, 0, 2, phase).unwrap().to_dense();
        let a = k1.position(0b001).unwrap();
        let b = k1.position(0b100).unwrap();
        // s+(0) s-(2) takes |100> to |001>
        assert_eq!(m[(a, b)], phase);
        assert_eq!(m[(b, a)], phase.conj());
        let mid = k1.position(0b010).unwrap();
        assert_eq!(m[(mid, mid)], c(0.0, 0.0));
    }

    #[test]
    fn flipflop_rejects_bad_indices() {
        let sectors = enumerate_sectors(&Register::new(3).unwrap());
        assert_eq!(
            apply_flipflop(&sectors[1], 0, 3, c(1.0, 0.0)),
            Err(Error::QubitIndex {
                index: 3,
                n_qubits: 3
            })
        );
        assert_eq!(
            apply_flipflop(&sectors[1], 1, 1, c(1.0, 0.0)),
            Err(Error::SameQubit(1))
        );
    }

    #[test]
    fn flipflop_is_hermitian_with_unit_row_weight() {
        let reg = Register::new(6).unwrap();
        let phase = Complex64::from_polar(1.0, 1.1);
        for sector in enumerate_sectors(&reg) {
            for (i, j) in [(0, 1), (0, 4), (3, 5)] {
                let m = apply_flipflop(&sector, i, j, phase).unwrap().to_dense();
                for r in 0..m.nrows() {
                    let mut row = 0.0;
                    for col in 0..m.ncols() {
                        assert!((m[(r, col)] - m[(col, r)].conj()).norm() < 1e-15);
                        row += m[(r, col)].norm();
                    }
                    assert!(row <= 1.0 + 1e-15);
                }
            }
        }
    }
}
