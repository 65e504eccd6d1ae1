use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register needs between 2 and {max} qubits, got {n_qubits}")]
    RegisterSize { n_qubits: usize, max: usize },

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitIndex { index: usize, n_qubits: usize },

    #[error("flip-flop requires two distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("operator shape mismatch: {0}")]
    DimensionMismatch(String),

    #[error("block for excitation sector k={weight} is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { weight: usize, deviation: f64 },

    #[error("eigendecomposition failed in excitation sector k={weight}")]
    Eigen { weight: usize },

    #[error(
        "perturbative model out of range: n*m^2 = {value:.6} exceeds validity bound {bound:.6}"
    )]
    ModelOutOfRange { value: f64, bound: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Lambert W0 is undefined for z = {0} < -1/e")]
    LambertDomain(f64),

    #[error("qubit frequency {omega} is resonant with the cavity")]
    Resonance { omega: f64 },

    #[error(
        "qubit outside the dispersive regime: coupling/detuning ratio {ratio:.3} exceeds {limit}"
    )]
    NotDispersive { ratio: f64, limit: f64 },

    #[error("zero qubit frequency in ZZ coefficient")]
    ZeroFrequency,

    #[error("quadrature did not converge: achieved relative error {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("hardware spec line {line}: {message}")]
    SpecParse { line: usize, message: String },

    #[error("invalid hardware spec: {0}")]
    InvalidHardware(String),
}
