use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex;
use serde::de::DeserializeOwned;
use serde::Serialize;

use harmonia::ErrorKind;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("writing output: {0}")]
    Write(io::Error),
    #[error(transparent)]
    Core(#[from] harmonia::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse { .. } => 2,
            CliError::Write(_) => 1,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Precondition => 3,
                ErrorKind::Certificate => 4,
                ErrorKind::NonConvergence => 5,
            },
        }
    }
}

impl CliError {
    /// The reader went away (`harmonia ... | head`); not worth reporting.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Write(e) if e.kind() == io::ErrorKind::BrokenPipe)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Write(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(e) => CliError::Write(e),
            other => CliError::Write(io::Error::other(format!("{other:?}"))),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: name.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: name, source })
}

/// Where results go.
pub struct Out {
    path: Option<PathBuf>,
}

impl Out {
    pub fn new(path: Option<PathBuf>) -> Self {
        Out { path }
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    pub fn json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut w = self.sink()?;
        serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }

    pub fn table(&self, table: &Table) -> Result<()> {
        let mut w = csv::Writer::from_writer(self.sink()?);
        w.write_record(&table.header)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A CSV table built row by row.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Shortest round-trip decimal, switching to exponent form for very large
/// or small magnitudes.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn cells(xs: &[f64]) -> Vec<String> {
    xs.iter().map(|&x| num(x)).collect()
}

/// `re,im` or `re`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex<f64>, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(parse(re)?, parse(im)?)),
        None => Ok(Complex::new(parse(s)?, 0.0)),
    }
}

/// Comma-separated reals.
pub fn parse_reals(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"))).collect()
}
