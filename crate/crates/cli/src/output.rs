use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::{Args, ValueEnum};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format: JSON lines or CSV with a header row.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", cell(v)))
            .collect::<Vec<_>>()
            .join(";"),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// Renders records as JSON lines or as CSV; nested objects become
/// `name=value;…` cells.
pub fn render(records: &[Map<String, Value>], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut buf = Vec::new();
            for r in records {
                serde_json::to_writer(&mut buf, r).map_err(|e| CliError::Io(e.to_string()))?;
                buf.push(b'\n');
            }
            Ok(buf)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<String> = Vec::new();
            for r in records {
                for key in r.keys() {
                    if !header.contains(key) {
                        header.push(key.clone());
                    }
                }
            }
            if !header.is_empty() {
                w.write_record(&header)
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            for r in records {
                let row: Vec<String> = header
                    .iter()
                    .map(|h| r.get(h).map(cell).unwrap_or_default())
                    .collect();
                w.write_record(&row)
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn emit(records: &[Map<String, Value>], out: &OutputArgs) -> Result<(), CliError> {
    let bytes = render(records, out.format)?;
    write_bytes(&bytes, out.out.as_deref())
}

fn write_bytes(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Io(e.to_string());
    match path {
        Some(p) => File::create(p)
            .and_then(|mut f| f.write_all(bytes))
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => io::stdout().lock().write_all(bytes).map_err(io_err),
    }
}
