//! Shared fixtures for the criterion benchmarks.

use xtalk_core::CouplingConfig;

/// Coupling ratio at the iSWAP operating point.
pub const M: f64 = 1e-2;

/// Register sizes the exact benchmarks step through.
pub const EXACT_SIZES: [usize; 3] = [8, 10, 12];

pub fn iswap_config(n_qubits: usize) -> CouplingConfig {
    CouplingConfig::new(n_qubits, M)
}

/// Detuned variant, which forces the complex eigensolver path.
pub fn detuned_config(n_qubits: usize) -> CouplingConfig {
    CouplingConfig::new(n_qubits, M).with_delta(0.3)
}
