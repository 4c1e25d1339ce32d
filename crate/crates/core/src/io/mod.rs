//! Dataset files: NPY v1.0, headerless CSV and a raw little-endian format,
//! each with a row-at-a-time writer, plus the JSON manifest and
//! distance-matrix outputs.

pub mod csv;
pub mod manifest;
pub mod matrix;
pub mod npy;
pub mod raw;

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::SeriesBatch;

pub use self::csv::{read_csv, write_csv, CsvWriter};
pub use manifest::{manifest_path, read_manifest, write_manifest, Manifest};
pub use matrix::{write_matrix_csv, write_ppm};
pub use npy::{npy_preamble, read_npy, read_npy_file, write_npy, NpyDtype, NpyWriter};
pub use raw::{read_raw, write_raw, RawWriter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Npy,
    Csv,
    Raw,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Npy => "npy",
            Format::Csv => "csv",
            Format::Raw => "raw",
        }
    }

    /// Guesses from the file extension.
    pub fn from_path(path: impl AsRef<Path>) -> Option<Format> {
        path.as_ref()
            .extension()?
            .to_str()?
            .to_ascii_lowercase()
            .parse()
            .ok()
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "npy" => Ok(Format::Npy),
            "csv" => Ok(Format::Csv),
            "raw" | "bin" => Ok(Format::Raw),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// Row-at-a-time writer for any of the three formats.
pub enum SeriesWriter {
    Npy(NpyWriter<BufWriter<File>>),
    Csv(CsvWriter<BufWriter<File>>),
    Raw(RawWriter<BufWriter<File>>),
}

impl SeriesWriter {
    pub fn create(
        format: Format,
        path: impl AsRef<Path>,
        rows: usize,
        cols: usize,
    ) -> Result<Self> {
        Ok(match format {
            Format::Npy => SeriesWriter::Npy(NpyWriter::create(path, rows, cols)?),
            Format::Csv => SeriesWriter::Csv(CsvWriter::create(path)?),
            Format::Raw => SeriesWriter::Raw(RawWriter::create(path, rows, cols)?),
        })
    }

    pub fn write_row(&mut self, row: &[f32]) -> Result<()> {
        match self {
            SeriesWriter::Npy(w) => w.write_row(row),
            SeriesWriter::Csv(w) => w.write_row(row),
            SeriesWriter::Raw(w) => w.write_row(row),
        }
    }

    pub fn finish(self) -> Result<()> {
        match self {
            SeriesWriter::Npy(w) => w.finish().map(drop),
            SeriesWriter::Csv(w) => w.finish().map(drop),
            SeriesWriter::Raw(w) => w.finish().map(drop),
        }
    }
}

pub fn write_series(batch: &SeriesBatch, format: Format, path: impl AsRef<Path>) -> Result<()> {
    match format {
        Format::Npy => write_npy(batch, path),
        Format::Csv => write_csv(batch, path),
        Format::Raw => write_raw(batch, path),
    }
}

/// A batch read from disk with the format and element type found.
#[derive(Debug, Clone)]
pub struct LoadedSeries {
    pub batch: SeriesBatch,
    pub format: Format,
    /// Element type as stored, e.g. `float32`.
    pub dtype: &'static str,
}

/// Reads a file, detecting NPY and raw files by their magic bytes and
/// treating anything else as CSV.
pub fn read_series(path: impl AsRef<Path>) -> Result<LoadedSeries> {
    let path = path.as_ref();
    let mut head = [0u8; 8];
    let got = {
        let mut f = File::open(path)?;
        let mut got = 0;
        while got < head.len() {
            match f.read(&mut head[got..])? {
                0 => break,
                k => got += k,
            }
        }
        got
    };
    let name = path.display().to_string();
    if got >= 6 && &head[..6] == npy::NPY_MAGIC {
        let f = npy::read_npy_from(BufReader::new(File::open(path)?), &name)?;
        let dtype = match f.dtype {
            NpyDtype::F32 => "float32",
            NpyDtype::F64 => "float64",
        };
        Ok(LoadedSeries {
            batch: f.batch,
            format: Format::Npy,
            dtype,
        })
    } else if got == 8 && &head == raw::RAW_MAGIC {
        Ok(LoadedSeries {
            batch: read_raw(path)?,
            format: Format::Raw,
            dtype: "float32",
        })
    } else if Format::from_path(path) == Some(Format::Npy) {
        Err(Error::BadMagic(name))
    } else {
        Ok(LoadedSeries {
            batch: read_csv(path)?,
            format: Format::Csv,
            dtype: "float32",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_names() {
        for f in [Format::Npy, Format::Csv, Format::Raw] {
            assert_eq!(f.as_str().parse::<Format>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{f}\""));
        }
        assert_eq!(Format::from_path("x/y.CSV"), Some(Format::Csv));
        assert_eq!(Format::from_path("x/y"), None);
    }
}
