use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use xtalk_core::dispersive::{read_hardware_spec, to_coupling_config};
use xtalk_core::fidelity::{exact_over_gate_times, report};
use xtalk_core::scaling::{log_grid, max_idle_qubits_with_x};
use xtalk_core::{CouplingConfig, FidelityReport, Method, PerturbationCoefficients};

use crate::args::{
    Command, CouplingsArgs, FidelityArgs, MaxQubitsArgs, MethodArg, ModelArgs, SweepArgs, SweepVar,
};
use crate::CliError;

pub const REPORT_HEADER: [&str; 8] = [
    "method",
    "n_qubits",
    "n_idle",
    "m",
    "gate_time",
    "entanglement_fidelity",
    "average_fidelity",
    "error_rate",
];

pub const SCALING_HEADER: [&str; 5] = ["m", "e_thr", "n_closed_form", "n_numeric", "real_valued_n"];

pub fn execute(
    command: &Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Fidelity(a) => fidelity(a, out, err),
        Command::Sweep(a) => sweep(a, out),
        Command::MaxQubits(a) => max_qubits(a, out),
        Command::Couplings(a) => couplings(a, out, err),
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError::data(format!("write failed: {e}"))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::data(format!("write failed: {e}"))
}

fn config(n_qubits: usize, model: &ModelArgs) -> CouplingConfig {
    CouplingConfig::new(n_qubits, model.m)
        .with_gate_time(model.gate_time)
        .with_delta(model.delta)
        .with_idle_couplings(model.m_tilde, model.omega_tilde)
}

fn report_record(r: &FidelityReport) -> [String; 8] {
    [
        r.method.name().to_string(),
        r.n_qubits.to_string(),
        r.n_idle().to_string(),
        r.m.to_string(),
        r.gate_time.to_string(),
        r.entanglement_fidelity.to_string(),
        r.average_fidelity.to_string(),
        r.error_rate.to_string(),
    ]
}

fn dedup_methods(args: &[MethodArg]) -> Vec<Method> {
    let mut methods: Vec<Method> = args.iter().flat_map(|m| m.methods()).collect();
    methods.sort_by_key(|m| m.name());
    methods.dedup();
    methods
}

fn fidelity(a: &FidelityArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = config(a.n_qubits, &a.model);
    for w in cfg.hierarchy_warnings() {
        writeln!(err, "warning: {w}").map_err(io_error)?;
    }
    let methods = a.method.methods();
    let results: Vec<_> = methods.par_iter().map(|&m| report(m, &cfg)).collect();

    let mut reports = Vec::new();
    let mut failure: Option<CliError> = None;
    for (method, result) in methods.iter().zip(results) {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => {
                let e = CliError::from(e);
                if methods.len() > 1 {
                    writeln!(err, "{}: {}", method.name(), e.message).map_err(io_error)?;
                }
                // the first failure decides the exit code
                failure.get_or_insert(e);
            }
        }
    }

    if a.csv {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(REPORT_HEADER).map_err(csv_error)?;
        for r in &reports {
            w.write_record(report_record(r)).map_err(csv_error)?;
        }
        w.flush().map_err(io_error)?;
    } else if !reports.is_empty() {
        writeln!(
            out,
            "{:<13} {:>8} {:>6} {:>10} {:>10} {:>22} {:>22} {:>12}",
            "method",
            "n_qubits",
            "n_idle",
            "m",
            "gate_time",
            "entanglement_fidelity",
            "average_fidelity",
            "error_rate"
        )
        .map_err(io_error)?;
        for r in &reports {
            writeln!(
                out,
                "{:<13} {:>8} {:>6} {:>10.4e} {:>10.6} {:>22.15} {:>22.15} {:>12.6e}",
                r.method.name(),
                r.n_qubits,
                r.n_idle(),
                r.m,
                r.gate_time,
                r.entanglement_fidelity,
                r.average_fidelity,
                r.error_rate
            )
            .map_err(io_error)?;
        }
    }
    match failure {
        None => Ok(()),
        Some(e) if methods.len() > 1 => Err(CliError {
            code: e.code,
            message: "one or more methods failed".into(),
        }),
        Some(e) => Err(e),
    }
}

fn sweep_values(a: &SweepArgs) -> Result<Vec<f64>, CliError> {
    if !(a.from.is_finite() && a.to.is_finite()) {
        return Err(CliError::usage("--from and --to must be finite"));
    }
    let (lo, hi) = if a.from <= a.to {
        (a.from, a.to)
    } else {
        (a.to, a.from)
    };
    if a.sweep == SweepVar::NQubits {
        if lo.fract() != 0.0 || hi.fract() != 0.0 || lo < 2.0 {
            return Err(CliError::usage(
                "register sizes must be whole numbers of at least 2",
            ));
        }
        return Ok((lo as usize..=hi as usize).map(|n| n as f64).collect());
    }
    if a.points == 0 {
        return Err(CliError::usage("--points must be at least 1"));
    }
    if a.log {
        if lo <= 0.0 {
            return Err(CliError::usage("--log needs positive bounds"));
        }
        return Ok(log_grid(lo, hi, a.points));
    }
    if a.points == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (a.points - 1) as f64;
    Ok((0..a.points)
        .map(|k| {
            if k + 1 == a.points {
                hi
            } else {
                lo + step * k as f64
            }
        })
        .collect())
}

fn sweep_reports(
    a: &SweepArgs,
    method: Method,
    values: &[f64],
) -> Vec<xtalk_core::Result<FidelityReport>> {
    let base_n = a.n_qubits.unwrap_or(2);
    let point = |v: f64| {
        let mut cfg = config(base_n, &a.model);
        match a.sweep {
            SweepVar::NQubits => cfg.n_qubits = v as usize,
            SweepVar::M => cfg.m = v,
            SweepVar::GateTime => cfg.gate_time = v,
        }
        cfg
    };
    if a.sweep == SweepVar::GateTime && method == Method::Exact {
        // one eigendecomposition serves every gate time
        return match exact_over_gate_times(&point(values[0]), values) {
            Ok(rs) => rs.into_iter().map(Ok).collect(),
            Err(e) => vec![Err(e)],
        };
    }
    values
        .par_iter()
        .map(|&v| report(method, &point(v)))
        .collect()
}

fn open_output<'a>(
    path: Option<&Path>,
    out: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::data(format!("cannot write {}: {e}", p.display()))
        })?)),
        None => Box::new(out),
    })
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.sweep != SweepVar::NQubits && a.n_qubits.is_none() {
        return Err(CliError::usage(
            "--n-qubits is required unless sweeping n_qubits",
        ));
    }
    if a.sweep == SweepVar::NQubits && a.n_qubits.is_some() {
        return Err(CliError::usage(
            "--n-qubits conflicts with --sweep n_qubits",
        ));
    }
    let values = sweep_values(a)?;
    let methods = dedup_methods(&a.methods);
    // evaluate everything before touching the output file
    let mut rows = Vec::new();
    for &method in &methods {
        for r in sweep_reports(a, method, &values) {
            rows.push(report_record(&r?));
        }
    }
    let sink = open_output(a.out.as_deref(), out)?;
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(REPORT_HEADER).map_err(csv_error)?;
    for row in &rows {
        w.write_record(row).map_err(csv_error)?;
    }
    w.flush().map_err(io_error)
}

fn max_qubits(a: &MaxQubitsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let ms = match (a.m_min, a.m_max) {
        (Some(lo), Some(hi)) => {
            if !(lo > 0.0 && hi >= lo) {
                return Err(CliError::usage("need 0 < --m-min <= --m-max"));
            }
            log_grid(lo, hi, a.points)
        }
        _ if a.m.is_empty() => return Err(CliError::usage("give --m or --m-min/--m-max")),
        _ => a.m.clone(),
    };
    let x = a.x.unwrap_or(PerturbationCoefficients::iswap().x);
    let mut rows = Vec::new();
    for m in ms {
        let s = max_idle_qubits_with_x(m, a.e_thr, x)?;
        rows.push([
            s.m.to_string(),
            s.e_thr.to_string(),
            s.n_closed_form.to_string(),
            s.n_numeric.to_string(),
            s.real_valued_n.to_string(),
        ]);
    }
    let sink = open_output(a.out.as_deref(), out)?;
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(SCALING_HEADER).map_err(csv_error)?;
    for row in &rows {
        w.write_record(row).map_err(csv_error)?;
    }
    w.flush().map_err(io_error)
}

fn couplings(a: &CouplingsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let spec = read_hardware_spec(&a.spec)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", a.spec.display())))??;
    let d = to_coupling_config(&spec, a.gate_time)?;
    for w in &d.warnings {
        writeln!(err, "warning: {w}").map_err(io_error)?;
    }
    let c = &d.config;
    let lines = [
        ("n_qubits", c.n_qubits.to_string()),
        ("gamma", c.gamma.to_string()),
        ("gamma_signed", d.gamma_signed.to_string()),
        ("m", c.m.to_string()),
        ("m_tilde", c.m_tilde.to_string()),
        ("omega_tilde", c.omega_tilde.to_string()),
        ("delta", c.delta.to_string()),
        ("gate_duration", d.gate_duration.to_string()),
    ];
    for (k, v) in lines {
        writeln!(out, "{k:<13} = {v}").map_err(io_error)?;
    }
    Ok(())
}
