use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xtalk_core::Method;

#[derive(Debug, Parser)]
#[command(
    name = "xtalk",
    version,
    about = "Cross-talk error of a cavity-mediated iSWAP with idle qubits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity of a single parameter point
    Fidelity(FidelityArgs),
    /// Fidelity over a range of one parameter, as CSV
    Sweep(SweepArgs),
    /// Largest idle-qubit count under an error threshold, as CSV
    MaxQubits(MaxQubitsArgs),
    /// Effective couplings from a hardware description file
    Couplings(CouplingsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    #[value(alias = "perturbative")]
    Pert,
    #[value(alias = "zass")]
    Zassenhaus,
    #[value(alias = "mean-field", alias = "mf")]
    Meanfield,
    All,
}

impl MethodArg {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Exact => vec![Method::Exact],
            MethodArg::Pert => vec![Method::Perturbative],
            MethodArg::Zassenhaus => vec![Method::Zassenhaus],
            MethodArg::Meanfield => vec![Method::MeanField],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Active-idle over active-active coupling
    #[arg(long, default_value_t = 0.0)]
    pub m: f64,
    /// Dimensionless gate time gamma * t_g
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub gate_time: f64,
    /// Active-idle detuning in units of gamma
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Idle-idle transverse coupling over gamma (exact method only)
    #[arg(long, default_value_t = 0.0)]
    pub m_tilde: f64,
    /// Idle-idle ZZ coefficient over gamma (exact method only)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega_tilde: f64,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    /// Total register size N, including the two active qubits
    #[arg(long)]
    pub n_qubits: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Print CSV instead of a table
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    #[value(name = "n_qubits", alias = "n-qubits")]
    NQubits,
    M,
    #[value(name = "gate-time", alias = "gate_time")]
    GateTime,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Parameter to vary
    #[arg(long, value_enum)]
    pub sweep: SweepVar,
    /// First value (inclusive)
    #[arg(long)]
    pub from: f64,
    /// Last value (inclusive)
    #[arg(long)]
    pub to: f64,
    /// Number of points; register sizes always step by one
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// Space points logarithmically (m and gate-time sweeps)
    #[arg(long)]
    pub log: bool,
    /// Comma-separated methods
    #[arg(long, value_enum, value_delimiter = ',', default_value = "exact,pert")]
    pub methods: Vec<MethodArg>,
    /// Register size when not swept
    #[arg(long)]
    pub n_qubits: Option<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MaxQubitsArgs {
    /// Coupling ratio; repeat or comma-separate for several values
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["m_min", "m_max"])]
    pub m: Vec<f64>,
    /// Lower end of a log-spaced grid of m
    #[arg(long, requires = "m_max")]
    pub m_min: Option<f64>,
    /// Upper end of a log-spaced grid of m
    #[arg(long, requires = "m_min")]
    pub m_max: Option<f64>,
    /// Grid size for --m-min/--m-max
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Error threshold
    #[arg(long, default_value_t = 1e-3)]
    pub e_thr: f64,
    /// Override the leading perturbative coefficient x
    #[arg(long)]
    pub x: Option<f64>,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CouplingsArgs {
    /// Hardware description file
    #[arg(long)]
    pub spec: PathBuf,
    /// Dimensionless gate time for the derived configuration
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub gate_time: f64,
}
