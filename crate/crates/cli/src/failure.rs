use std::fmt;

use toric_ech::Error;

/// Error carrying its process exit code.
#[derive(Debug)]
pub enum Failure {
    Config(anyhow::Error),
    Io(anyhow::Error),
    Engine(anyhow::Error),
    Check(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Io(_) => 3,
            Failure::Engine(_) => 4,
            Failure::Check(_) => 5,
        }
    }

    pub fn config(e: impl Into<anyhow::Error>) -> Self {
        Failure::Config(e.into())
    }

    pub fn io(e: impl Into<anyhow::Error>) -> Self {
        Failure::Io(e.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(e) | Failure::Io(e) | Failure::Engine(e) => write!(f, "{e:#}"),
            Failure::Check(s) => f.write_str(s),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ModeMismatch { .. }
            | Error::InvalidK
            | Error::Parse(_)
            | Error::EmptyInput
            | Error::InvalidVertex { .. }
            | Error::NonMonotoneAngles { .. }
            | Error::ShapeClassViolation { .. }
            | Error::ArcOutOfRange { .. }
            | Error::NonpositiveScale(_)
            | Error::IncompleteCurve => Failure::Config(e.into()),
            _ => Failure::Engine(e.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}
