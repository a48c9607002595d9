//! The crate-level error and its process exit codes.

use thiserror::Error;

use crate::category::CategoryError;
use crate::cstar::CstarError;
use crate::groupoid::GroupoidError;
use crate::hull::HullError;
use crate::input::InputError;
use crate::paths::PathError;
use crate::spectrum::SpectrumError;
use crate::tight::TightError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("category fails validation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Tight(#[from] TightError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Cstar(#[from] CstarError),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("unbounded category: {0} needs a finite category, but the input has cycles")]
    Unbounded(&'static str),
    #[error("{0} requires a valid degree map")]
    NoDegree(&'static str),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// 1 for internal cross-check failures (findings), 2 for input errors,
    /// 3 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Hull(HullError::Overflow { .. }) | Error::Cstar(CstarError::DimensionCap(_)) => 3,
            Error::Spectrum(SpectrumError::TooLarge(..)) => 3,
            Error::Spectrum(SpectrumError::OracleDisagreement { .. })
            | Error::Tight(TightError::SisoMismatch { .. })
            | Error::Tight(TightError::NotClosed(..)) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
