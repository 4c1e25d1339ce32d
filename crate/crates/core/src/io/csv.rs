//! Headerless CSV, one series per line. Values are printed with the shortest
//! decimal that parses back to the same f32.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::generate::SeriesBatch;

pub fn csv_line(row: &[f32]) -> String {
    let mut line = String::with_capacity(row.len() * 12);
    for (i, v) in row.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&v.to_string());
    }
    line
}

pub struct CsvWriter<W: Write> {
    out: W,
}

impl CsvWriter<BufWriter<File>> {
    pub fn create(path: impl AsRef<Path>) -> Result<Self> {
        Ok(CsvWriter::new(BufWriter::new(File::create(path.as_ref())?)))
    }
}

impl<W: Write> CsvWriter<W> {
    pub fn new(out: W) -> Self {
        CsvWriter { out }
    }

    pub fn write_row(&mut self, row: &[f32]) -> Result<()> {
        writeln!(self.out, "{}", csv_line(row))?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

pub fn write_csv(batch: &SeriesBatch, path: impl AsRef<Path>) -> Result<()> {
    let mut w = CsvWriter::create(path)?;
    for row in batch.rows() {
        w.write_row(row)?;
    }
    w.finish()?;
    Ok(())
}

pub fn read_csv_from<R: BufRead>(input: R) -> Result<SeriesBatch> {
    let mut data = Vec::new();
    let mut length = None;
    let mut rows = 0;
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let before = data.len();
        for field in line.split(',') {
            let v: f32 = field.trim().parse().map_err(|_| {
                Error::MalformedHeader(format!("line {}: cannot parse {field:?}", lineno + 1))
            })?;
            data.push(v);
        }
        let len = data.len() - before;
        match length {
            None => length = Some(len),
            Some(l) if l != len => {
                return Err(Error::MalformedHeader(format!(
                    "line {} has {len} values, expected {l}",
                    lineno + 1
                )))
            }
            _ => {}
        }
        rows += 1;
    }
    SeriesBatch::new(rows, length.unwrap_or(0), data)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<SeriesBatch> {
    read_csv_from(BufReader::new(File::open(path.as_ref())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_row() {
        assert_eq!(csv_line(&[0.0, 1.0, 2.0, 3.0]), "0,1,2,3");
    }

    #[test]
    fn value_exact_round_trip() {
        let vals = [
            0.1f32,
            -1.0e-30,
            3.4028235e38,
            f32::MIN_POSITIVE,
            1.0 / 3.0,
            -0.0,
        ];
        let b = SeriesBatch::new(2, 3, vals.to_vec()).unwrap();
        let mut w = CsvWriter::new(Vec::new());
        for r in b.rows() {
            w.write_row(r).unwrap();
        }
        let text = w.finish().unwrap();
        let back = read_csv_from(&text[..]).unwrap();
        for (a, b) in back.data().iter().zip(&vals) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn ragged_or_garbage_rejected() {
        assert!(read_csv_from(&b"1,2\n3\n"[..]).is_err());
        assert!(read_csv_from(&b"1,x\n"[..]).is_err());
    }
}
