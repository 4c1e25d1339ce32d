//! NPY v1.0 reader and writer for 2-D little-endian float arrays.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::generate::SeriesBatch;

pub const NPY_MAGIC: &[u8; 6] = b"\x93NUMPY";
const ALIGN: usize = 64;

/// Element type found in a file that was read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpyDtype {
    F32,
    F64,
}

/// Result of reading an NPY file.
#[derive(Debug, Clone)]
pub struct NpyFile {
    pub batch: SeriesBatch,
    pub dtype: NpyDtype,
}

impl NpyFile {
    /// True when the file held float64 values that were narrowed to float32.
    pub fn downcast(&self) -> bool {
        self.dtype == NpyDtype::F64
    }
}

/// Complete preamble (magic, version, header length, padded header) for a
/// C-order little-endian float32 array of shape `(rows, cols)`.
pub fn npy_preamble(rows: usize, cols: usize) -> Vec<u8> {
    let dict = format!("{{'descr': '<f4', 'fortran_order': False, 'shape': ({rows}, {cols}), }}");
    let unpadded = NPY_MAGIC.len() + 2 + 2 + dict.len() + 1;
    let total = unpadded.div_ceil(ALIGN) * ALIGN;
    let header_len = total - NPY_MAGIC.len() - 4;
    let mut out = Vec::with_capacity(total);
    out.extend_from_slice(NPY_MAGIC);
    out.extend_from_slice(&[1, 0]);
    out.extend_from_slice(&(header_len as u16).to_le_bytes());
    out.extend_from_slice(dict.as_bytes());
    out.resize(total - 1, b' ');
    out.push(b'\n');
    out
}

/// Streams rows of a known-shape array into an NPY file.
pub struct NpyWriter<W: Write> {
    out: W,
    rows: usize,
    cols: usize,
    written: usize,
}

impl NpyWriter<BufWriter<File>> {
    pub fn create(path: impl AsRef<Path>, rows: usize, cols: usize) -> Result<Self> {
        let file = File::create(path.as_ref())?;
        Self::new(BufWriter::new(file), rows, cols)
    }
}

impl<W: Write> NpyWriter<W> {
    pub fn new(mut out: W, rows: usize, cols: usize) -> Result<Self> {
        out.write_all(&npy_preamble(rows, cols))?;
        Ok(NpyWriter {
            out,
            rows,
            cols,
            written: 0,
        })
    }

    pub fn write_row(&mut self, row: &[f32]) -> Result<()> {
        if row.len() != self.cols || self.written == self.rows {
            return Err(Error::SizeMismatch(format!(
                "row {} of length {} does not fit a ({}, {}) array",
                self.written,
                row.len(),
                self.rows,
                self.cols
            )));
        }
        write_f32s(&mut self.out, row)?;
        self.written += 1;
        Ok(())
    }

    /// Flushes and checks that every declared row was written.
    pub fn finish(mut self) -> Result<W> {
        if self.written != self.rows {
            return Err(Error::SizeMismatch(format!(
                "declared {} rows but wrote {}",
                self.rows, self.written
            )));
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

pub(crate) fn write_f32s<W: Write>(out: &mut W, values: &[f32]) -> Result<()> {
    let mut buf = Vec::with_capacity(values.len() * 4);
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

pub fn write_npy(batch: &SeriesBatch, path: impl AsRef<Path>) -> Result<()> {
    let mut w = NpyWriter::create(path, batch.n(), batch.length())?;
    for row in batch.rows() {
        w.write_row(row)?;
    }
    w.finish()?;
    Ok(())
}

struct Header {
    dtype: NpyDtype,
    rows: usize,
    cols: usize,
}

fn dict_value<'a>(dict: &'a str, key: &str) -> Result<&'a str> {
    let pat = format!("'{key}':");
    let start = dict
        .find(&pat)
        .ok_or_else(|| Error::MalformedHeader(format!("missing key {key:?}")))?;
    Ok(dict[start + pat.len()..].trim_start())
}

fn parse_header(dict: &str) -> Result<Header> {
    let dict = dict.trim_end();
    if !(dict.starts_with('{') && dict.ends_with('}')) {
        return Err(Error::MalformedHeader(
            "header is not a dict literal".into(),
        ));
    }
    let descr = dict_value(dict, "descr")?;
    let descr = descr
        .strip_prefix('\'')
        .and_then(|s| s.split('\'').next())
        .ok_or_else(|| Error::MalformedHeader("descr is not a string".into()))?;
    let dtype = match descr {
        "<f4" => NpyDtype::F32,
        "<f8" => NpyDtype::F64,
        other => return Err(Error::UnsupportedDtype(format!("dtype {other}"))),
    };
    let fortran = dict_value(dict, "fortran_order")?;
    if fortran.starts_with("True") {
        return Err(Error::UnsupportedDtype("Fortran-order arrays".into()));
    } else if !fortran.starts_with("False") {
        return Err(Error::MalformedHeader("fortran_order is not a bool".into()));
    }
    let shape = dict_value(dict, "shape")?;
    let inner = shape
        .strip_prefix('(')
        .and_then(|s| s.split(')').next())
        .ok_or_else(|| Error::MalformedHeader("shape is not a tuple".into()))?;
    let dims = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::MalformedHeader(format!("bad dimension {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    match dims[..] {
        [rows, cols] => Ok(Header { dtype, rows, cols }),
        _ => Err(Error::UnsupportedDtype(format!(
            "{}-D array, expected 2-D",
            dims.len()
        ))),
    }
}

pub fn read_npy_from<R: Read>(mut input: R, name: &str) -> Result<NpyFile> {
    let mut magic = [0u8; 8];
    input
        .read_exact(&mut magic)
        .map_err(|_| Error::BadMagic(name.to_string()))?;
    if &magic[..6] != NPY_MAGIC {
        return Err(Error::BadMagic(name.to_string()));
    }
    let header_len = match magic[6] {
        1 => {
            let mut b = [0u8; 2];
            input.read_exact(&mut b).map_err(truncated)?;
            u16::from_le_bytes(b) as usize
        }
        2 | 3 => {
            let mut b = [0u8; 4];
            input.read_exact(&mut b).map_err(truncated)?;
            u32::from_le_bytes(b) as usize
        }
        v => {
            return Err(Error::MalformedHeader(format!(
                "unsupported version {v}.{}",
                magic[7]
            )))
        }
    };
    let mut header = vec![0u8; header_len];
    input.read_exact(&mut header).map_err(truncated)?;
    let text = std::str::from_utf8(&header)
        .map_err(|_| Error::MalformedHeader("header is not text".into()))?;
    let h = parse_header(text)?;

    let count = h
        .rows
        .checked_mul(h.cols)
        .ok_or_else(|| Error::MalformedHeader("shape overflows".into()))?;
    let width = match h.dtype {
        NpyDtype::F32 => 4,
        NpyDtype::F64 => 8,
    };
    let mut payload = vec![0u8; count * width];
    input.read_exact(&mut payload).map_err(truncated)?;
    let data: Vec<f32> = match h.dtype {
        NpyDtype::F32 => payload
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect(),
        NpyDtype::F64 => payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()) as f32)
            .collect(),
    };
    Ok(NpyFile {
        batch: SeriesBatch::new(h.rows, h.cols, data)?,
        dtype: h.dtype,
    })
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::MalformedHeader("file is truncated".into())
    } else {
        Error::Io(e)
    }
}

pub fn read_npy_file(path: impl AsRef<Path>) -> Result<NpyFile> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_npy_from(BufReader::new(file), &path.display().to_string())
}

pub fn read_npy(path: impl AsRef<Path>) -> Result<SeriesBatch> {
    read_npy_file(path).map(|f| f.batch)
}
