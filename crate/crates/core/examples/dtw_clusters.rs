//! Clusters CauKer series and white noise by DTW distance and compares the
//! inter/intra contrast of the two, writing the sorted CauKer matrix as a
//! heatmap.
//!
//! ```bash
//! cargo run --release -p cauker --example dtw_clusters -- 60 heatmap.ppm
//! ```

use cauker::analysis::{
    agglomerative_cluster, cluster_contrast, pairwise_dtw, sorted_matrix, Linkage,
};
use cauker::generate::{generate_batch, GeneratorConfig, Method, SeriesBatch};
use cauker::io::write_ppm;
use cauker::rng::{derive_stream, MasterSeed};

fn report(name: &str, batch: &SeriesBatch, k: usize) -> cauker::Result<f64> {
    let d = pairwise_dtw(batch, batch.n(), None)?;
    let c = agglomerative_cluster(&d, k, Linkage::Average)?;
    let contrast = cluster_contrast(&d, &c.assignments)?;
    let mut sizes = vec![0usize; k];
    for &a in &c.assignments {
        sizes[a] += 1;
    }
    println!(
        "{name:>10}: intra {:.2}, inter {:.2}, ratio {:.3}, cluster sizes {sizes:?}",
        contrast.intra_mean,
        contrast.inter_mean,
        contrast.ratio()
    );
    Ok(contrast.ratio())
}

fn main() -> cauker::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(60);
    let heatmap = args.next().unwrap_or_else(|| "heatmap.ppm".into());
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());
    let mut cfg = GeneratorConfig::new(Method::Cauker);
    cfg.target_length = 128;
    let k = 10.min(n);

    let (series, _) = generate_batch(MasterSeed(42), n, &cfg, workers)?;
    let noise: Vec<Vec<f64>> = (0..n as u64)
        .map(|i| {
            let mut s = derive_stream(MasterSeed(1), i);
            (0..cfg.target_length)
                .map(|_| s.standard_normal())
                .collect()
        })
        .collect();
    let noise = SeriesBatch::from_rows(&noise)?;

    let a = report("cauker", &series, k)?;
    let b = report("noise", &noise, k)?;
    println!("contrast advantage over noise: {:.2}x", a / b);

    let d = pairwise_dtw(&series, n, None)?;
    let sorted = sorted_matrix(&d, &agglomerative_cluster(&d, k, Linkage::Average)?)?;
    write_ppm(&sorted.values, sorted.n, &heatmap)?;
    println!("wrote {heatmap}");
    Ok(())
}
