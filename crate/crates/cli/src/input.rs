use std::fmt;
use std::io::Read;

use pairstab_core::pair_model::{Severity, Violation};
use serde::de::DeserializeOwned;

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit code 1: the input could not be read, parsed or accepted.
    Input(Vec<String>),
    /// Exit code 2: a self-consistency check did not hold.
    Internal(String),
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure::Input(vec![msg.into()])
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Internal(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(lines) => {
                for (i, l) in lines.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "error: {l}")?;
                }
                Ok(())
            }
            Failure::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl From<pairstab_core::Error> for Failure {
    fn from(e: pairstab_core::Error) -> Self {
        Failure::input(e.to_string())
    }
}

pub fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {path}: {e}")))
    }
}

/// Deserializes `text`, reporting the JSON path of the offending field.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Failure::input(inner.to_string())
        } else {
            Failure::input(format!("{path}: {inner}"))
        }
    })
}

/// Splits validation output into hard errors (returned as a failure) and
/// warnings (returned for inclusion in the report).
pub fn check_violations(prefix: &str, violations: Vec<Violation>) -> Result<Vec<String>, Failure> {
    let describe = |v: &Violation| match v.record {
        Some(i) => format!("{prefix}.subobjects[{i}]: {}", v.message),
        None => format!("{prefix}: {}", v.message),
    };
    let errors: Vec<String> = violations
        .iter()
        .filter(|v| v.severity == Severity::Error)
        .map(describe)
        .collect();
    if !errors.is_empty() {
        return Err(Failure::Input(errors));
    }
    Ok(violations
        .iter()
        .filter(|v| v.severity == Severity::Warning)
        .map(describe)
        .collect())
}
