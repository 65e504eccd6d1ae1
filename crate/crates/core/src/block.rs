//! Operators stored block-diagonally over excitation sectors.

use std::sync::Arc;

use faer::MatRef;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{enumerate_sectors, ExcitationSector, Register};
use crate::linalg::{self, CMat};

/// An operator that commutes with the total excitation number, stored as one
/// dense block per sector (block `k` acts on the states of Hamming weight `k`).
#[derive(Debug, Clone)]
pub struct BlockOperator {
    register: Register,
    sectors: Arc<[ExcitationSector]>,
    blocks: Vec<CMat>,
}

impl BlockOperator {
    /// Builds every block from its sector, in parallel.
    pub fn from_sectors<F>(register: Register, build: F) -> Self
    where
        F: Fn(&ExcitationSector) -> CMat + Sync,
    {
        let sectors: Arc<[ExcitationSector]> = enumerate_sectors(&register).into();
        Self::from_shared_sectors(register, sectors, build)
    }

    pub(crate) fn from_shared_sectors<F>(
        register: Register,
        sectors: Arc<[ExcitationSector]>,
        build: F,
    ) -> Self
    where
        F: Fn(&ExcitationSector) -> CMat + Sync,
    {
        let blocks: Vec<CMat> = sectors.par_iter().map(&build).collect();
        debug_assert!(blocks
            .iter()
            .zip(sectors.iter())
            .all(|(b, s)| b.nrows() == s.len() && b.ncols() == s.len()));
        Self {
            register,
            sectors,
            blocks,
        }
    }

    pub(crate) fn from_parts(
        register: Register,
        sectors: Arc<[ExcitationSector]>,
        blocks: Vec<CMat>,
    ) -> Self {
        debug_assert_eq!(blocks.len(), sectors.len());
        Self {
            register,
            sectors,
            blocks,
        }
    }

    pub fn zeros(register: Register) -> Self {
        Self::from_sectors(register, |s| CMat::zeros(s.len(), s.len()))
    }

    pub fn identity(register: Register) -> Self {
        Self::from_sectors(register, |s| linalg::identity(s.len()))
    }

    /// Wraps explicit blocks, checking their shapes against the sectors.
    pub fn from_blocks(register: Register, blocks: Vec<CMat>) -> Result<Self> {
        let sectors: Arc<[ExcitationSector]> = enumerate_sectors(&register).into();
        if blocks.len() != sectors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for {} sectors",
                blocks.len(),
                sectors.len()
            )));
        }
        for (b, s) in blocks.iter().zip(sectors.iter()) {
            if b.nrows() != s.len() || b.ncols() != s.len() {
                return Err(Error::DimensionMismatch(format!(
                    "block k={} is {}x{}, sector has {} states",
                    s.weight(),
                    b.nrows(),
                    b.ncols(),
                    s.len()
                )));
            }
        }
        Ok(Self {
            register,
            sectors,
            blocks,
        })
    }

    pub fn register(&self) -> Register {
        self.register
    }

    pub fn n_qubits(&self) -> usize {
        self.register.n_qubits()
    }

    pub fn dimension(&self) -> usize {
        self.register.dimension()
    }

    pub fn sectors(&self) -> &[ExcitationSector] {
        &self.sectors
    }

    pub(crate) fn shared_sectors(&self) -> Arc<[ExcitationSector]> {
        Arc::clone(&self.sectors)
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, weight: usize) -> MatRef<'_, Complex64> {
        self.blocks[weight].as_ref()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.register != other.register {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit operator combined with {}-qubit operator",
                self.n_qubits(),
                other.n_qubits()
            )));
        }
        Ok(())
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(MatRef<'_, Complex64>, MatRef<'_, Complex64>) -> CMat + Sync,
    {
        self.check_same(other)?;
        let blocks = self
            .blocks
            .par_iter()
            .zip(other.blocks.par_iter())
            .map(|(a, b)| f(a.as_ref(), b.as_ref()))
            .collect();
        Ok(Self {
            register: self.register,
            sectors: self.shared_sectors(),
            blocks,
        })
    }

    fn map<F>(&self, f: F) -> Self
    where
        F: Fn(MatRef<'_, Complex64>) -> CMat + Sync,
    {
        Self {
            register: self.register,
            sectors: self.shared_sectors(),
            blocks: self.blocks.par_iter().map(|b| f(b.as_ref())).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map(|b| CMat::from_fn(b.nrows(), b.ncols(), |i, j| b[(i, j)] * factor))
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &Self, factor: Complex64) -> Result<Self> {
        self.zip_with(other, |a, b| {
            CMat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] + b[(i, j)] * factor)
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }

    /// Operator product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, linalg::mul)
    }

    pub fn adjoint(&self) -> Self {
        self.map(|b| b.adjoint().to_owned())
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| {
            let ab = linalg::mul(a, b);
            let ba = linalg::mul(b, a);
            CMat::from_fn(a.nrows(), a.ncols(), |i, j| ab[(i, j)] - ba[(i, j)])
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.blocks
            .iter()
            .flat_map(|b| (0..b.nrows()).map(move |i| b[(i, i)]))
            .sum()
    }

    /// `Tr(self^dagger * other)` without forming the product.
    pub fn trace_adjoint_product(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            for j in 0..a.ncols() {
                for i in 0..a.nrows() {
                    acc += a[(i, j)].conj() * b[(i, j)];
                }
            }
        }
        Ok(acc)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| linalg::hermiticity_deviation(b.as_ref()))
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `U^dagger U - I` over all blocks.
    pub fn unitarity_deviation(&self) -> f64 {
        self.blocks
            .par_iter()
            .map(|b| {
                let g = linalg::mul(b.adjoint(), b.as_ref());
                linalg::max_abs_diff(g.as_ref(), linalg::identity(b.nrows()).as_ref())
            })
            .reduce(|| 0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| linalg::max_abs_diff(a.as_ref(), b.as_ref()))
            .fold(0.0, f64::max))
    }

    /// Matrix element `<row|A|col>` between computational basis states.
    pub fn entry(&self, row: u32, col: u32) -> Complex64 {
        if row.count_ones() != col.count_ones() {
            return Complex64::new(0.0, 0.0);
        }
        let sector = &self.sectors[row.count_ones() as usize];
        match (sector.position(row), sector.position(col)) {
            (Some(r), Some(c)) => self.blocks[sector.weight()][(r, c)],
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// Full `2^N x 2^N` matrix in the computational basis.
    pub fn to_dense(&self) -> CMat {
        let d = self.dimension();
        let mut out = CMat::zeros(d, d);
        for (sector, block) in self.sectors.iter().zip(&self.blocks) {
            for (c, &cb) in sector.states().iter().enumerate() {
                for (r, &rb) in sector.states().iter().enumerate() {
                    out[(rb as usize, cb as usize)] = block[(r, c)];
                }
            }
        }
        out
    }
}
