//! Plain-text hardware description.
//!
//! ```text
//! # frequencies in angular units, e.g. 2*pi*GHz
//! cavity_freq = 7.0
//!
//! [qubit]
//! mode = on
//! omega = 5.0
//! g = 0.1
//! lambda = 0.0   # optional, defaults to 0
//! ```
//!
//! One `[qubit]` section per qubit. `#` starts a comment.

use std::path::Path;

use super::{HardwareSpec, PhysicalQubit, QubitMode};
use crate::error::{Error, Result};

#[derive(Default)]
struct Partial {
    line: usize,
    mode: Option<QubitMode>,
    omega: Option<f64>,
    g: Option<f64>,
    lambda: Option<f64>,
}

impl Partial {
    fn finish(self) -> Result<PhysicalQubit> {
        let missing = |key: &str| Error::SpecParse {
            line: self.line,
            message: format!("[qubit] section is missing `{key}`"),
        };
        Ok(PhysicalQubit {
            mode: self.mode.ok_or_else(|| missing("mode"))?,
            omega: self.omega.ok_or_else(|| missing("omega"))?,
            g: self.g.ok_or_else(|| missing("g"))?,
            lambda: self.lambda.unwrap_or(0.0),
        })
    }
}

fn parse_number(value: &str, line: usize, key: &str) -> Result<f64> {
    let v: f64 = value.parse().map_err(|_| Error::SpecParse {
        line,
        message: format!("`{key}` expects a number, got `{value}`"),
    })?;
    if !v.is_finite() {
        return Err(Error::SpecParse {
            line,
            message: format!("`{key}` must be finite"),
        });
    }
    Ok(v)
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(Error::SpecParse {
            line,
            message: format!("duplicate key `{key}`"),
        });
    }
    *slot = Some(value);
    Ok(())
}

pub fn parse_hardware_spec(text: &str) -> Result<HardwareSpec> {
    let mut cavity: Option<f64> = None;
    let mut qubits = Vec::new();
    let mut current: Option<Partial> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            if content != "[qubit]" {
                return Err(Error::SpecParse {
                    line,
                    message: format!("unknown section `{content}`"),
                });
            }
            if let Some(q) = current.take() {
                qubits.push(q.finish()?);
            }
            current = Some(Partial {
                line,
                ..Default::default()
            });
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::SpecParse {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        match (&mut current, key) {
            (None, "cavity_freq") => {
                set_once(&mut cavity, parse_number(value, line, key)?, line, key)?
            }
            (None, _) => {
                return Err(Error::SpecParse {
                    line,
                    message: format!("unknown top-level key `{key}`"),
                })
            }
            (Some(q), "mode") => {
                let mode = match value.to_ascii_lowercase().as_str() {
                    "on" => QubitMode::On,
                    "off" => QubitMode::Off,
                    _ => {
                        return Err(Error::SpecParse {
                            line,
                            message: format!("mode must be `on` or `off`, got `{value}`"),
                        })
                    }
                };
                set_once(&mut q.mode, mode, line, key)?;
            }
            (Some(q), "omega") => {
                set_once(&mut q.omega, parse_number(value, line, key)?, line, key)?
            }
            (Some(q), "g") => set_once(&mut q.g, parse_number(value, line, key)?, line, key)?,
            (Some(q), "lambda") => {
                set_once(&mut q.lambda, parse_number(value, line, key)?, line, key)?
            }
            (Some(_), _) => {
                return Err(Error::SpecParse {
                    line,
                    message: format!("unknown qubit key `{key}`"),
                })
            }
        }
    }
    if let Some(q) = current.take() {
        qubits.push(q.finish()?);
    }
    let cavity_freq = cavity.ok_or_else(|| Error::SpecParse {
        line: text.lines().count().max(1),
        message: "missing `cavity_freq`".into(),
    })?;
    Ok(HardwareSpec {
        cavity_freq,
        qubits,
    })
}

pub fn read_hardware_spec(path: &Path) -> std::io::Result<Result<HardwareSpec>> {
    Ok(parse_hardware_spec(&std::fs::read_to_string(path)?))
}
