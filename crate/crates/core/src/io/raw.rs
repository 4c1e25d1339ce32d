//! Raw binary format: 16-byte preamble (`CKRAW1\0\0`, u32 rows, u32 length,
//! all little-endian) followed by row-major little-endian f32 values.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::generate::SeriesBatch;
use crate::io::npy::write_f32s;

pub const RAW_MAGIC: &[u8; 8] = b"CKRAW1\0\0";
pub const RAW_PREAMBLE_LEN: usize = 16;

pub fn raw_preamble(rows: usize, cols: usize) -> Result<[u8; RAW_PREAMBLE_LEN]> {
    let to_u32 = |v: usize, what: &str| {
        u32::try_from(v)
            .map_err(|_| Error::InvalidArgument(format!("{what} {v} does not fit in u32")))
    };
    let mut p = [0u8; RAW_PREAMBLE_LEN];
    p[..8].copy_from_slice(RAW_MAGIC);
    p[8..12].copy_from_slice(&to_u32(rows, "row count")?.to_le_bytes());
    p[12..].copy_from_slice(&to_u32(cols, "length")?.to_le_bytes());
    Ok(p)
}

pub struct RawWriter<W: Write> {
    out: W,
    rows: usize,
    cols: usize,
    written: usize,
}

impl RawWriter<BufWriter<File>> {
    pub fn create(path: impl AsRef<Path>, rows: usize, cols: usize) -> Result<Self> {
        let file = File::create(path.as_ref())?;
        Self::new(BufWriter::new(file), rows, cols)
    }
}

impl<W: Write> RawWriter<W> {
    pub fn new(mut out: W, rows: usize, cols: usize) -> Result<Self> {
        out.write_all(&raw_preamble(rows, cols)?)?;
        Ok(RawWriter {
            out,
            rows,
            cols,
            written: 0,
        })
    }

    pub fn write_row(&mut self, row: &[f32]) -> Result<()> {
        if row.len() != self.cols || self.written == self.rows {
            return Err(Error::SizeMismatch(format!(
                "row {} of length {} does not fit a {} x {} file",
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

pub fn write_raw(batch: &SeriesBatch, path: impl AsRef<Path>) -> Result<()> {
    let mut w = RawWriter::create(path, batch.n(), batch.length())?;
    for row in batch.rows() {
        w.write_row(row)?;
    }
    w.finish()?;
    Ok(())
}

pub fn read_raw_from<R: Read>(mut input: R, name: &str) -> Result<SeriesBatch> {
    let mut p = [0u8; RAW_PREAMBLE_LEN];
    input
        .read_exact(&mut p)
        .map_err(|_| Error::BadMagic(name.to_string()))?;
    if &p[..8] != RAW_MAGIC {
        return Err(Error::BadMagic(name.to_string()));
    }
    let rows = u32::from_le_bytes(p[8..12].try_into().unwrap()) as usize;
    let cols = u32::from_le_bytes(p[12..].try_into().unwrap()) as usize;
    let mut payload = vec![0u8; rows * cols * 4];
    input.read_exact(&mut payload).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::MalformedHeader(format!("{name} is truncated"))
        } else {
            Error::Io(e)
        }
    })?;
    let data = payload
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    SeriesBatch::new(rows, cols, data)
}

pub fn read_raw(path: impl AsRef<Path>) -> Result<SeriesBatch> {
    let path = path.as_ref();
    read_raw_from(
        BufReader::new(File::open(path)?),
        &path.display().to_string(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let b = SeriesBatch::new(2, 3, vec![0.0, 1.0, 2.0, 3.0, 4.0, -0.0]).unwrap();
        let mut w = RawWriter::new(Vec::new(), 2, 3).unwrap();
        for r in b.rows() {
            w.write_row(r).unwrap();
        }
        let bytes = w.finish().unwrap();
        assert_eq!(bytes.len(), 16 + 4 * 6);
        assert_eq!(&bytes[..8], b"CKRAW1\0\0");
        assert_eq!(&bytes[8..16], &[2, 0, 0, 0, 3, 0, 0, 0]);
        assert_eq!(&bytes[16..20], &0.0f32.to_le_bytes());
        let back = read_raw_from(&bytes[..], "mem").unwrap();
        assert_eq!(back.data()[5].to_bits(), (-0.0f32).to_bits());
        assert_eq!(back, b);
    }

    #[test]
    fn rejects_bad_input() {
        let mut bytes = raw_preamble(1, 2).unwrap().to_vec();
        bytes.extend_from_slice(&[0; 7]);
        assert!(matches!(
            read_raw_from(&bytes[..], "x"),
            Err(Error::MalformedHeader(_))
        ));
        bytes[0] = b'X';
        assert!(matches!(
            read_raw_from(&bytes[..], "x"),
            Err(Error::BadMagic(_))
        ));
    }
}
