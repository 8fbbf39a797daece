use std::fs;
use std::io::Write;

use crate::commands::Document;
use crate::{Cli, CliError, Format};

fn render(format: Format, doc: &Document) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&doc.json).expect("documents serialize");
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let table = doc
                .csv
                .as_ref()
                .ok_or_else(|| CliError::Config("format: this command emits JSON only".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Numeric(format!("csv output: {e}"));
            w.write_record(&table.header).map_err(io)?;
            for row in &table.rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Numeric(format!("csv output: {e}")))
        }
    }
}

/// Writes the document to `--output` or standard output.
pub fn write(cli: &Cli, doc: &Document) -> Result<(), CliError> {
    let bytes = render(cli.format, doc)?;
    match &cli.output {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::Config(format!("output: cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|e| CliError::Numeric(format!("stdout: {e}"))),
    }
}
