//! Instance files, instance generators and atomic report output.

mod generate;
mod instance;

pub use generate::{generate_instance, random_curves, GeneratorKind};
pub use instance::{parse_instance, parse_instance_str, CurveJson, Instance, InstanceJson};

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::arith::ParseError;
use crate::incidence::IncidenceError;
use crate::poly::PolyError;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {source}")]
    Parse { location: String, source: ParseError },
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}

impl IoError {
    fn file(path: &Path, source: std::io::Error) -> Self {
        IoError::File { path: path.to_path_buf(), source }
    }

    fn poly(label: &str, e: PolyError) -> Self {
        match e {
            PolyError::Coefficient { term, source } => IoError::Parse {
                location: format!("curve {label}, term {term}"),
                source,
            },
            other => unreachable!("term lists only fail on coefficients: {other}"),
        }
    }
}

/// Writes `bytes` to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| IoError::file(path, e))?;
    tmp.write_all(bytes).map_err(|e| IoError::file(path, e))?;
    tmp.persist(path).map_err(|e| IoError::file(path, e.error))?;
    Ok(())
}

/// Appends CSV records to `path`, writing `header` first when the file is new.
pub fn append_csv(path: &Path, header: &[&str], records: &[Vec<String>]) -> Result<(), IoError> {
    let existing = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(IoError::file(path, e)),
    };
    let fresh = existing.is_empty();
    let mut w = csv::Writer::from_writer(existing);
    if fresh {
        w.write_record(header).expect("in-memory write");
    }
    for r in records {
        w.write_record(r).expect("in-memory write");
    }
    write_atomic(path, &w.into_inner().expect("flush"))
}
