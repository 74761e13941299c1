use std::fs;
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Write the assembled output to `--out` or stdout. Content is built fully
/// in memory first, so both destinations receive identical bytes.
pub fn emit(out: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// JSON documents share one envelope: `meta` echoes the resolved run
/// configuration, `data` carries the records. Keys serialize sorted, so the
/// bytes are a function of the configuration alone.
pub fn json_envelope(command: &str, config: serde_json::Value, data: serde_json::Value) -> String {
    let doc = serde_json::json!({
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "config": config,
        },
        "data": data,
    });
    let mut body = serde_json::to_string_pretty(&doc).expect("tree of plain values");
    body.push('\n');
    body
}

/// CSV with an explicit header row, UTF-8, LF line endings.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer.into_inner().context("flushing csv buffer")?;
    Ok(String::from_utf8(bytes).expect("csv writer emits UTF-8"))
}
