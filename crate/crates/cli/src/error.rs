use std::fmt;
use std::process::ExitCode;

use newton_core::central_leaf::LeafError;
use newton_core::kottwitz::KottwitzError;
use newton_core::strata::StrataError;
use newton_core::witt::WittError;
use newton_core::RootDatumError;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Consistency(String),
    Precision(String),
    /// `w` does not fix the Newton point.
    Condition2(String),
    /// The Newton point is not anti-dominant.
    Condition3(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Consistency(_) => 3,
            CliError::Precision(_) => 4,
            CliError::Condition2(_) => 5,
            CliError::Condition3(_) => 6,
            CliError::Io(_) => 1,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Consistency(m) => write!(f, "consistency error: {m}"),
            CliError::Precision(m) => write!(f, "precision error: {m}"),
            CliError::Condition2(m) | CliError::Condition3(m) => write!(f, "invalid leaf datum: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

pub fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

impl From<RootDatumError> for CliError {
    fn from(e: RootDatumError) -> Self {
        usage(e.to_string())
    }
}

impl From<KottwitzError> for CliError {
    fn from(e: KottwitzError) -> Self {
        match e {
            KottwitzError::Consistency(_) => CliError::Consistency(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::Kottwitz(k) => k.into(),
            StrataError::Consistency { .. } => CliError::Consistency(e.to_string()),
        }
    }
}

impl From<WittError> for CliError {
    fn from(e: WittError) -> Self {
        match e {
            WittError::Precision { .. } => CliError::Precision(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<LeafError> for CliError {
    fn from(e: LeafError) -> Self {
        match e {
            LeafError::Witt(w) => w.into(),
            LeafError::NotInLeviWeylGroup { .. } => CliError::Condition2(e.to_string()),
            LeafError::NotAntiDominant { .. } => CliError::Condition3(e.to_string()),
            LeafError::Precision { .. } => CliError::Precision(e.to_string()),
            LeafError::Consistency(_) => CliError::Consistency(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
