//! Streams a corpus to an NPY file with its manifest, then regenerates the
//! batch from the manifest and checks that the two agree bit for bit.
//!
//! ```bash
//! cargo run --release -p cauker --example generate_corpus -- corpus.npy 256 cauker
//! ```

use cauker::generate::{generate_streaming, GeneratorConfig, Method};
use cauker::io::{
    manifest_path, read_manifest, read_npy, write_manifest, Format, Manifest, NpyWriter,
};
use cauker::rng::MasterSeed;

fn main() -> cauker::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = args.next().unwrap_or_else(|| "corpus.npy".into());
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(256);
    let method: Method = args.next().as_deref().unwrap_or("cauker").parse()?;
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());

    let cfg = GeneratorConfig::new(method);
    let seed = MasterSeed(2024);
    let mut writer = NpyWriter::create(&out, n, cfg.target_length)?;
    let stats = generate_streaming(seed, n, &cfg, workers, |_, row| writer.write_row(row))?;
    writer.finish()?;

    let manifest = Manifest::new(&cfg, seed, n, stats, Format::Npy);
    write_manifest(&manifest, manifest_path(&out))?;
    println!(
        "wrote {out} ({n} x {}) and {}",
        cfg.target_length,
        manifest_path(&out).display()
    );

    let reloaded = read_manifest(manifest_path(&out))?;
    let again = reloaded.regenerate(workers)?;
    let on_disk = read_npy(&out)?;
    let same = on_disk
        .data()
        .iter()
        .zip(again.data())
        .all(|(a, b)| a.to_bits() == b.to_bits());
    println!("regenerated from manifest: bitwise equal = {same}");
    Ok(())
}
