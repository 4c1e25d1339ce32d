//! Distance-matrix output: full row-major CSV and a grey P6 heatmap.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

fn check_square(values: &[f64], n: usize) -> Result<()> {
    if values.len() != n * n {
        return Err(Error::SizeMismatch(format!(
            "{} values for a {n}x{n} matrix",
            values.len()
        )));
    }
    Ok(())
}

pub fn write_matrix_csv_to<W: Write>(mut out: W, values: &[f64], n: usize) -> Result<()> {
    check_square(values, n)?;
    for row in values.chunks_exact(n.max(1)).take(n) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_matrix_csv(values: &[f64], n: usize, path: impl AsRef<Path>) -> Result<()> {
    write_matrix_csv_to(BufWriter::new(File::create(path.as_ref())?), values, n)
}

/// Grey levels after min–max scaling; a constant matrix maps to 0.
pub fn grey_levels(values: &[f64]) -> Vec<u8> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = hi - lo;
    values
        .iter()
        .map(|&v| {
            if span > 0.0 && span.is_finite() {
                ((v - lo) / span * 255.0).round() as u8
            } else {
                0
            }
        })
        .collect()
}

pub fn write_ppm_to<W: Write>(mut out: W, values: &[f64], n: usize) -> Result<()> {
    check_square(values, n)?;
    write!(out, "P6\n{n} {n}\n255\n")?;
    let pixels: Vec<u8> = grey_levels(values)
        .into_iter()
        .flat_map(|g| [g, g, g])
        .collect();
    out.write_all(&pixels)?;
    out.flush()?;
    Ok(())
}

pub fn write_ppm(values: &[f64], n: usize, path: impl AsRef<Path>) -> Result<()> {
    write_ppm_to(BufWriter::new(File::create(path.as_ref())?), values, n)
}
