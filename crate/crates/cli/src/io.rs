//! File formats: element and function JSON in, report JSON and sweep CSV out.

use std::path::Path;

use irrot_core::json::to_canonical_json;
use irrot_core::{AlgebraElement, TorusFunction};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, CliResult};

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_element(path: &Path) -> CliResult<AlgebraElement> {
    read_json(path)
}

pub fn read_function(path: &Path) -> CliResult<TorusFunction> {
    read_json(path)
}

/// Canonical report JSON, newline terminated.
pub fn render<T: Serialize>(value: &T) -> CliResult<String> {
    to_canonical_json(value).map_err(|e| CliError::Serialize(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub theta: f64,
    pub lambda_param: Option<f64>,
    #[serde(rename = "L")]
    pub l: usize,
    pub z0: f64,
    pub eigenvalue_index: usize,
    pub eigenvalue: f64,
}

/// CSV with a header row and LF line endings.
pub fn csv_bytes<T: Serialize>(rows: &[T]) -> CliResult<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))
}

pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|e| CliError::io(path, e))
}
