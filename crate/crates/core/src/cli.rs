//! Command-line front end: `generate`, `analyze` and `inspect`.
//!
//! Exit codes: 0 on success, 2 on argument errors, 1 on generation or I/O
//! failures. Diagnostics go to stderr; only `inspect` writes to stdout.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::analysis::{
    agglomerative_cluster, cluster_contrast, pairwise_dtw_rows, sorted_matrix, Linkage, LocalCost,
    DEFAULT_CLUSTERS, DEFAULT_SAMPLE,
};
use crate::error::Error;
use crate::generate::{generate_streaming, GeneratorConfig, Method, DEFAULT_TARGET_LENGTH};
use crate::io::{
    manifest_path, read_manifest, read_series, write_manifest, write_matrix_csv, write_ppm, Format,
    Manifest, SeriesWriter,
};
use crate::kernel::KernelBank;
use crate::mean::MeanRanges;
use crate::rng::{derive_stream, MasterSeed};

/// Environment variable consulted for the seed when neither a flag nor the
/// config document sets one.
pub const SEED_ENV: &str = "CAUKER_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "cauker",
    version,
    about = "Synthetic time series from GP kernels and random causal graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a dataset file and its manifest.
    Generate(GenerateArgs),
    /// Pairwise DTW and hierarchical clustering of a dataset sample.
    Analyze(AnalyzeArgs),
    /// Print shape, dtype and summary statistics of a dataset file.
    Inspect(InspectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum SwitchValue {
    Bool(bool),
    Word(Switch),
}

impl SwitchValue {
    fn on(self) -> bool {
        matches!(
            self,
            SwitchValue::Bool(true) | SwitchValue::Word(Switch::On)
        )
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct GenerateArgs {
    /// cauker, kernelsynth or mean-kernelsynth [default: cauker].
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    /// Number of series.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    /// Output length of every series [default: 512].
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..))]
    pub length: Option<u64>,
    /// Master seed [default: $CAUKER_SEED, else 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; the manifest is written to `<out>.manifest.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format [default: from the --out extension, else npy].
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
    /// Worker threads [default: available cores].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// JSON document whose keys are the flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Maximum kernels per composition [default: 5].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: Option<u64>,
    /// Standardise parent signals during propagation [default: on].
    #[arg(long, value_enum)]
    pub standardize: Option<Switch>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Config document for `generate`. Keys match the flag names; the extra keys
/// expose the remaining generator settings.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigDoc {
    method: Option<Method>,
    n: Option<u64>,
    length: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    workers: Option<u64>,
    k_max: Option<usize>,
    standardize: Option<SwitchValue>,
    root_lengths: Option<Vec<usize>>,
    max_roots: Option<usize>,
    max_edges: Option<usize>,
    max_resample_attempts: Option<usize>,
    identity_edges: Option<bool>,
    kernel_bank: Option<KernelBank>,
    mean_ranges: Option<MeanRanges>,
}

impl ConfigDoc {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved `generate` invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratePlan {
    pub config: GeneratorConfig,
    pub n: usize,
    pub seed: MasterSeed,
    pub out: PathBuf,
    pub format: Format,
    pub workers: usize,
}

/// Merges flags over the config document over `env_seed` (seed only) over
/// defaults.
pub fn resolve_generate(
    args: &GenerateArgs,
    doc: &ConfigDoc,
    env_seed: Option<&str>,
) -> Result<GeneratePlan, Error> {
    let usage = |m: String| Err(Error::InvalidArgument(m));
    let env_seed = match env_seed {
        Some(s) => Some(s.trim().parse::<u64>().map_err(|_| {
            Error::InvalidArgument(format!("{SEED_ENV}={s:?} is not an unsigned integer"))
        })?),
        None => None,
    };

    let mut config = GeneratorConfig::new(args.method.or(doc.method).unwrap_or(Method::Cauker));
    config.target_length = args
        .length
        .or(doc.length)
        .map_or(DEFAULT_TARGET_LENGTH, |v| v as usize);
    if let Some(k) = args.k_max.map(|v| v as usize).or(doc.k_max) {
        config.k_max = k;
    }
    if let Some(s) = args.standardize {
        config.standardize = s == Switch::On;
    } else if let Some(s) = doc.standardize {
        config.standardize = s.on();
    }
    if let Some(v) = &doc.root_lengths {
        config.root_lengths = v.clone();
    }
    if let Some(v) = doc.max_roots {
        config.max_roots = v;
    }
    if let Some(v) = doc.max_edges {
        config.max_edges = v;
    }
    if let Some(v) = doc.max_resample_attempts {
        config.max_resample_attempts = v;
    }
    if let Some(v) = doc.identity_edges {
        config.identity_edges = v;
    }
    if doc.kernel_bank.is_some() {
        config.kernel_bank = doc.kernel_bank.clone();
    }
    if let Some(v) = &doc.mean_ranges {
        config.mean_ranges = v.clone();
    }
    config.validate()?;

    let n = match args.n.or(doc.n) {
        Some(0) => return usage("n must be >= 1".into()),
        Some(n) => n as usize,
        None => return usage("--n is required".into()),
    };
    let Some(out) = args.out.clone().or_else(|| doc.out.clone()) else {
        return usage("--out is required".into());
    };
    let format = args
        .format
        .or(doc.format)
        .or_else(|| Format::from_path(&out))
        .unwrap_or_default();
    let workers = match args.workers.or(doc.workers) {
        Some(0) => return usage("workers must be >= 1".into()),
        Some(w) => w as usize,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };
    let seed = MasterSeed(args.seed.or(doc.seed).or(env_seed).unwrap_or(0));
    Ok(GeneratePlan {
        config,
        n,
        seed,
        out,
        format,
        workers,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LinkageArg {
    Average,
    Complete,
    Single,
}

impl From<LinkageArg> for Linkage {
    fn from(l: LinkageArg) -> Self {
        match l {
            LinkageArg::Average => Linkage::Average,
            LinkageArg::Complete => Linkage::Complete,
            LinkageArg::Single => Linkage::Single,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostArg {
    Absolute,
    Squared,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Dataset file (npy, csv or raw).
    #[arg(long)]
    pub input: PathBuf,
    /// Number of series drawn from the file.
    #[arg(long, default_value_t = DEFAULT_SAMPLE)]
    pub sample: usize,
    /// Number of flat clusters cut from the dendrogram.
    #[arg(long, default_value_t = DEFAULT_CLUSTERS)]
    pub clusters: usize,
    #[arg(long, value_enum, default_value_t = LinkageArg::Average)]
    pub linkage: LinkageArg,
    /// Sakoe–Chiba band half-width [default: unbanded].
    #[arg(long)]
    pub band: Option<usize>,
    #[arg(long, value_enum, default_value_t = CostArg::Absolute)]
    pub cost: CostArg,
    /// Cluster-sorted distance matrix CSV [default: <input>.dtw.csv]. The
    /// permutation, cluster and summary files are written next to it.
    #[arg(long)]
    pub out_matrix: Option<PathBuf>,
    /// Optional grey PPM rendering of the sorted matrix.
    #[arg(long)]
    pub out_heatmap: Option<PathBuf>,
    /// Seed for the subset draw.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct InspectArgs {
    /// Dataset file (npy, csv or raw).
    #[arg(long)]
    pub input: PathBuf,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return 0;
            }
            if !e.to_string().contains("Usage:") {
                let mut cmd = Cli::command();
                cmd.build();
                let sub = args.get(1).and_then(|a| a.to_str()).unwrap_or_default();
                let usage = match cmd.find_subcommand_mut(sub) {
                    Some(sc) => sc.render_usage(),
                    None => cmd.render_usage(),
                };
                eprintln!("{usage}");
            }
            return 2;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Inspect(a) => cmd_inspect(&a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("{}", Cli::command().render_usage());
            2
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let doc = match &args.config {
        Some(p) => ConfigDoc::load(p).map_err(|e| Failure::Usage(e.to_string()))?,
        None => ConfigDoc::default(),
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    let plan = resolve_generate(args, &doc, env_seed.as_deref())
        .map_err(|e| Failure::Usage(e.to_string()))?;

    let length = plan.config.target_length;
    eprintln!(
        "generating {} {} series of length {} (seed {}, {} workers) -> {}",
        plan.n,
        plan.config.method,
        length,
        plan.seed.0,
        plan.workers,
        plan.out.display()
    );
    let started = Instant::now();
    let mut writer = SeriesWriter::create(plan.format, &plan.out, plan.n, length)?;
    let report_every = (plan.n / 10).max(crate::generate::STREAM_CHUNK);
    let outcome = generate_streaming(plan.seed, plan.n, &plan.config, plan.workers, |i, row| {
        writer.write_row(row)?;
        let done = i as usize + 1;
        if done % report_every == 0 && done < plan.n {
            let rate = done as f64 / started.elapsed().as_secs_f64();
            eprintln!("  {done}/{} series ({rate:.1} series/s)", plan.n);
        }
        Ok(())
    });
    let stats = match outcome.and_then(|s| writer.finish().map(|_| s)) {
        Ok(s) => s,
        Err(e) => {
            let _ = std::fs::remove_file(&plan.out);
            return Err(e.into());
        }
    };
    let secs = started.elapsed().as_secs_f64();
    let manifest = Manifest::new(&plan.config, plan.seed, plan.n, stats, plan.format);
    let mpath = manifest_path(&plan.out);
    write_manifest(&manifest, &mpath)?;
    eprintln!(
        "wrote {} series in {secs:.2} s ({:.1} series/s); resampled {} ({:.3}%); manifest {}",
        plan.n,
        plan.n as f64 / secs.max(1e-9),
        stats.resampled_samples,
        100.0 * stats.resample_fraction(),
        mpath.display()
    );
    Ok(())
}

/// `x.csv` → `x`; other paths unchanged.
fn strip_csv(path: &Path) -> PathBuf {
    match path.extension() {
        Some(e) if e == "csv" => path.with_extension(""),
        _ => path.to_path_buf(),
    }
}

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let loaded = read_series(&args.input)?;
    let batch = loaded.batch;
    if args.sample < 1 || args.sample > batch.n() {
        return Err(Failure::Usage(format!(
            "--sample {} must lie in [1, {}] for {}",
            args.sample,
            batch.n(),
            args.input.display()
        )));
    }
    if args.clusters < 1 || args.clusters > args.sample {
        return Err(Failure::Usage(format!(
            "--clusters {} must lie in [1, {}]",
            args.clusters, args.sample
        )));
    }
    let mut picks = derive_stream(MasterSeed(args.seed), 0)
        .sample_without_replacement(batch.n(), args.sample)?;
    picks.sort_unstable();
    let rows: Vec<Vec<f64>> = picks.iter().map(|&i| batch.row_f64(i)).collect();
    let cost = match args.cost {
        CostArg::Absolute => LocalCost::Absolute,
        CostArg::Squared => LocalCost::Squared,
    };

    let started = Instant::now();
    let d = pairwise_dtw_rows(&rows, args.band, cost)?;
    let clusters = agglomerative_cluster(&d, args.clusters, args.linkage.into())?;
    let sorted = sorted_matrix(&d, &clusters)?;
    let contrast = cluster_contrast(&d, &clusters.assignments)?;

    let matrix_path = args
        .out_matrix
        .clone()
        .unwrap_or_else(|| with_suffix(&args.input, ".dtw.csv"));
    let base = strip_csv(&matrix_path);
    write_matrix_csv(&sorted.values, sorted.n, &matrix_path)?;

    let perm: String = clusters
        .permutation
        .iter()
        .map(|&p| format!("{}\n", picks[p]))
        .collect();
    let perm_path = with_suffix(&base, ".permutation.txt");
    std::fs::write(&perm_path, perm)?;

    let mut assign = String::from("row,cluster\n");
    for (k, &c) in clusters.assignments.iter().enumerate() {
        assign.push_str(&format!("{},{c}\n", picks[k]));
    }
    let clusters_path = with_suffix(&base, ".clusters.csv");
    std::fs::write(&clusters_path, assign)?;

    let summary = serde_json::json!({
        "input": args.input.display().to_string(),
        "sample": args.sample,
        "clusters": args.clusters,
        "linkage": Linkage::from(args.linkage).as_str(),
        "band": args.band,
        "seed": args.seed,
        "intra_mean": contrast.intra_mean,
        "inter_mean": contrast.inter_mean,
        "intra_pairs": contrast.intra_pairs,
        "inter_pairs": contrast.inter_pairs,
        "contrast_ratio": contrast.ratio(),
    });
    let summary_path = with_suffix(&base, ".summary.json");
    std::fs::write(
        &summary_path,
        serde_json::to_string_pretty(&summary).expect("json") + "\n",
    )?;

    if let Some(h) = &args.out_heatmap {
        write_ppm(&sorted.values, sorted.n, h)?;
    }
    eprintln!(
        "{} series, {} clusters ({} linkage) in {:.2} s: intra mean {:.4}, inter mean {:.4}, ratio {:.3}",
        args.sample,
        args.clusters,
        Linkage::from(args.linkage),
        started.elapsed().as_secs_f64(),
        contrast.intra_mean,
        contrast.inter_mean,
        contrast.ratio()
    );
    eprintln!(
        "wrote {}, {}, {}, {}",
        matrix_path.display(),
        perm_path.display(),
        clusters_path.display(),
        summary_path.display()
    );
    Ok(())
}

/// Min, max, mean and population standard deviation.
pub fn summary_stats(values: &[f32]) -> (f64, f64, f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN, f64::NAN);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &v in values {
        let v = v as f64;
        lo = lo.min(v);
        hi = hi.max(v);
        sum += v;
    }
    let mean = sum / values.len() as f64;
    let var = values
        .iter()
        .map(|&v| (v as f64 - mean).powi(2))
        .sum::<f64>()
        / values.len() as f64;
    (lo, hi, mean, var.sqrt())
}

fn cmd_inspect(args: &InspectArgs) -> Result<(), Failure> {
    use std::fmt::Write as _;

    let loaded = read_series(&args.input)?;
    let b = &loaded.batch;
    let (lo, hi, mean, std) = summary_stats(b.data());
    let mut out = String::new();
    let _ = writeln!(out, "file: {}", args.input.display());
    let _ = writeln!(out, "format: {}", loaded.format);
    let _ = writeln!(out, "shape: {} x {}", b.n(), b.length());
    let _ = writeln!(out, "dtype: {}", loaded.dtype);
    let _ = writeln!(out, "min: {lo}\nmax: {hi}\nmean: {mean}\nstd: {std}");
    let mpath = manifest_path(&args.input);
    if mpath.exists() {
        let m = read_manifest(&mpath)?;
        let _ = writeln!(out, "seed: {}", m.seed.0);
        let _ = writeln!(out, "method: {}", m.method);
        let _ = writeln!(out, "manifest: {}", mpath.display());
        let _ = writeln!(out, "{}", m.to_json());
    }
    let mut stdout = std::io::stdout().lock();
    match std::io::Write::write_all(&mut stdout, out.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(e).into()),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> GenerateArgs {
        let mut full = vec!["cauker", "generate"];
        full.extend_from_slice(list);
        match Cli::try_parse_from(full).unwrap().command {
            Command::Generate(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn defaults() {
        let p = resolve_generate(
            &args(&["--n", "3", "--out", "a.csv"]),
            &ConfigDoc::default(),
            None,
        )
        .unwrap();
        assert_eq!(p.n, 3);
        assert_eq!(p.seed, MasterSeed(0));
        assert_eq!(p.format, Format::Csv);
        assert_eq!(p.config, GeneratorConfig::default());
    }

    #[test]
    fn precedence_matrix() {
        let doc = ConfigDoc::from_json(
            r#"{"method": "kernelsynth", "n": 5, "length": 64, "seed": 11, "out": "doc.raw",
                "k-max": 2, "standardize": "off", "workers": 3}"#,
        )
        .unwrap();
        let base = args(&[]);
        let flags = args(&[
            "--method",
            "cauker",
            "--n",
            "7",
            "--length",
            "32",
            "--seed",
            "13",
            "--out",
            "flag.npy",
            "--k-max",
            "4",
            "--standardize",
            "on",
            "--workers",
            "2",
        ]);

        // defaults only (n and out must come from somewhere)
        let p = resolve_generate(
            &args(&["--n", "1", "--out", "x"]),
            &ConfigDoc::default(),
            None,
        )
        .unwrap();
        assert_eq!(
            (p.config.method, p.config.target_length, p.seed.0),
            (Method::Cauker, 512, 0)
        );
        assert_eq!(
            (p.config.k_max, p.config.standardize, p.format),
            (5, true, Format::Npy)
        );

        // document over defaults
        let p = resolve_generate(&base, &doc, Some("99")).unwrap();
        assert_eq!(
            (p.config.method, p.n, p.config.target_length, p.seed.0),
            (Method::KernelSynth, 5, 64, 11)
        );
        assert_eq!(
            (p.config.k_max, p.config.standardize, p.workers),
            (2, false, 3)
        );
        assert_eq!(
            (p.out.clone(), p.format),
            (PathBuf::from("doc.raw"), Format::Raw)
        );

        // flags over document
        let p = resolve_generate(&flags, &doc, Some("99")).unwrap();
        assert_eq!(
            (p.config.method, p.n, p.config.target_length, p.seed.0),
            (Method::Cauker, 7, 32, 13)
        );
        assert_eq!(
            (p.config.k_max, p.config.standardize, p.workers),
            (4, true, 2)
        );
        assert_eq!(
            (p.out.clone(), p.format),
            (PathBuf::from("flag.npy"), Format::Npy)
        );

        // environment seed only when nothing else sets it
        let p = resolve_generate(
            &args(&["--n", "1", "--out", "x"]),
            &ConfigDoc::default(),
            Some("99"),
        )
        .unwrap();
        assert_eq!(p.seed.0, 99);
        assert!(resolve_generate(
            &args(&["--n", "1", "--out", "x"]),
            &ConfigDoc::default(),
            Some("abc")
        )
        .is_err());
    }

    #[test]
    fn bad_documents() {
        assert!(ConfigDoc::from_json(r#"{"k_max": 2}"#).is_err());
        assert!(ConfigDoc::from_json(r#"{"method": "nope"}"#).is_err());
        let doc = ConfigDoc::from_json(r#"{"n": 0, "out": "x"}"#).unwrap();
        assert!(resolve_generate(&GenerateArgs::default(), &doc, None).is_err());
        let doc = ConfigDoc::from_json(r#"{"k-max": 99}"#).unwrap();
        assert!(resolve_generate(&args(&["--n", "1", "--out", "x"]), &doc, None).is_err());
    }

    #[test]
    fn document_kernel_bank() {
        let doc = ConfigDoc::from_json(
            r#"{"kernel-bank": [{"family": "rbf", "length_scale": 0.1}, {"family": "white", "noise_level": 0.5}],
                "k-max": 2, "root-lengths": [64], "standardize": true}"#,
        )
        .unwrap();
        let p = resolve_generate(&args(&["--n", "1", "--out", "x"]), &doc, None).unwrap();
        assert_eq!(p.config.bank().len(), 2);
        assert_eq!(p.config.root_lengths, vec![64]);
    }

    #[test]
    fn argument_errors_exit_2() {
        assert_eq!(run(["cauker", "generate", "--n", "0", "--out", "x.npy"]), 2);
        assert_eq!(
            run(["cauker", "generate", "--method", "fpfn", "--n", "1", "--out", "x.npy"]),
            2
        );
        assert_eq!(run(["cauker", "frobnicate"]), 2);
        assert_eq!(run(["cauker", "generate", "--n", "1"]), 2);
    }

    #[test]
    fn stats_helper() {
        let (lo, hi, mean, std) = summary_stats(&[1.0, 3.0]);
        assert_eq!((lo, hi, mean, std), (1.0, 3.0, 2.0, 1.0));
    }
}
