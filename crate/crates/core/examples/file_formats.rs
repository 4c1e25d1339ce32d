//! Writes a small batch in every supported format, reads each back and checks
//! the values survive unchanged.
//!
//! ```bash
//! cargo run --release -p cauker --example file_formats -- /tmp/formats
//! ```

use std::path::PathBuf;

use cauker::generate::SeriesBatch;
use cauker::io::{read_series, write_series, Format};
use cauker::rng::{derive_stream, MasterSeed};

fn main() -> cauker::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;

    let mut s = derive_stream(MasterSeed(3), 0);
    let rows: Vec<Vec<f64>> = (0..4)
        .map(|_| (0..16).map(|_| s.standard_normal() * 100.0).collect())
        .collect();
    let batch = SeriesBatch::from_rows(&rows)?;

    for format in [Format::Npy, Format::Raw, Format::Csv] {
        let path = dir.join(format!("batch.{format}"));
        write_series(&batch, format, &path)?;
        let back = read_series(&path)?;
        let exact = back
            .batch
            .data()
            .iter()
            .zip(batch.data())
            .all(|(a, b)| a.to_bits() == b.to_bits());
        println!(
            "{:<24} {:>6} bytes  {} x {} {}  exact = {exact}",
            path.display(),
            std::fs::metadata(&path)?.len(),
            back.batch.n(),
            back.batch.length(),
            back.dtype
        );
    }
    Ok(())
}
