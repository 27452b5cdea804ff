use thiserror::Error;

use crate::apps::AppError;
use crate::arith::ArithError;
use crate::incidence::IncidenceError;
use crate::io::IoError;
use crate::partition::PartitionError;
use crate::poly::PolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    App(#[from] AppError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Config(String),
}

fn variant<T: std::fmt::Debug>(e: &T) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

impl Error {
    /// `module::Variant`, naming the innermost module that raised the error.
    pub fn code(&self) -> String {
        match self {
            Error::Arith(e) => format!("arith::{}", variant(e)),
            Error::Poly(e) => format!("poly::{}", variant(e)),
            Error::Incidence(e) => format!("incidence::{}", variant(e)),
            Error::Partition(PartitionError::Poly(e)) => format!("poly::{}", variant(e)),
            Error::Partition(e) => format!("partition::{}", variant(e)),
            Error::App(AppError::Incidence(e)) => format!("incidence::{}", variant(e)),
            Error::App(e) => format!("apps::{}", variant(e)),
            Error::Io(IoError::Incidence(e)) => format!("incidence::{}", variant(e)),
            Error::Io(IoError::Parse { .. }) => "arith::ParseError".to_string(),
            Error::Io(e) => format!("io::{}", variant(e)),
            Error::Config(_) => "config::Invalid".to_string(),
        }
    }
}
