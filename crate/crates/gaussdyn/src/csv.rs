//! CSV output: UTF-8, LF line endings, header first.

use std::fs::File;
use std::path::Path;

use crate::error::{CliError, Result};

pub struct CsvWriter {
    out: csv::Writer<File>,
    path: String,
}

impl CsvWriter {
    pub fn create(path: &Path, header: &[&str]) -> Result<Self> {
        let path_str = path.display().to_string();
        let out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(path)
            .map_err(|e| io_error(&path_str, e))?;
        let mut w = Self {
            out,
            path: path_str,
        };
        w.row(header.iter().map(|h| h.to_string()))?;
        Ok(w)
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) -> Result<()> {
        let record: Vec<String> = cells.into_iter().collect();
        self.out
            .write_record(&record)
            .map_err(|e| io_error(&self.path, e))
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|source| CliError::Io {
            path: self.path.clone(),
            source,
        })
    }
}

fn io_error(path: &str, e: csv::Error) -> CliError {
    CliError::Io {
        path: path.to_string(),
        source: e.into(),
    }
}
