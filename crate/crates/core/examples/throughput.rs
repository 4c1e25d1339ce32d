//! Measures generation throughput for each method on this machine.
//!
//! ```bash
//! cargo run --release -p cauker --example throughput -- 2000
//! ```

use std::time::Instant;

use cauker::generate::{generate_batch, GeneratorConfig, Method};
use cauker::rng::MasterSeed;

fn main() -> cauker::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1000);
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());
    for method in [Method::KernelSynth, Method::MeanKernelSynth, Method::Cauker] {
        let cfg = GeneratorConfig::new(method);
        let start = Instant::now();
        let (batch, stats) = generate_batch(MasterSeed(42), n, &cfg, workers)?;
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{method:>16}: {} x {} in {secs:.2}s on {workers} worker(s) = {:.1} series/s, resampled {:.2}%",
            batch.n(),
            batch.length(),
            n as f64 / secs,
            100.0 * stats.resample_fraction(),
        );
    }
    Ok(())
}
