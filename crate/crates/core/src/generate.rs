//! Sample pipelines and deterministic parallel batch generation.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::causal::{build_dag, propagate, Activation, Aggregation, CausalDag};
use crate::error::{Error, Result};
use crate::gp::{sample_gp, GpPrior};
use crate::kernel::{sample_kernel_expr, KernelBank, DEFAULT_K_MAX};
use crate::mean::{sample_mean_with, MeanRanges, MeanSpec};
use crate::rng::{derive_stream, MasterSeed, SampleStream};

pub const DEFAULT_TARGET_LENGTH: usize = 512;
pub const DEFAULT_ROOT_LENGTHS: [usize; 4] = [128, 256, 512, 1024];
pub const DEFAULT_MAX_ROOTS: usize = 4;
pub const DEFAULT_MAX_EDGES: usize = 6;
pub const DEFAULT_MAX_RESAMPLE_ATTEMPTS: usize = 8;

/// Rows generated per parallel chunk when streaming.
pub const STREAM_CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "cauker")]
    Cauker,
    #[serde(rename = "kernelsynth")]
    KernelSynth,
    #[serde(rename = "mean-kernelsynth")]
    MeanKernelSynth,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cauker => "cauker",
            Method::KernelSynth => "kernelsynth",
            Method::MeanKernelSynth => "mean-kernelsynth",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cauker" => Ok(Method::Cauker),
            "kernelsynth" => Ok(Method::KernelSynth),
            "mean-kernelsynth" | "mean_kernelsynth" => Ok(Method::MeanKernelSynth),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub method: Method,
    pub target_length: usize,
    /// Upper bound on leaves per composed kernel.
    pub k_max: usize,
    /// Native root-series lengths, one drawn uniformly per sample.
    pub root_lengths: Vec<usize>,
    /// Standardise activated parent signals before aggregation.
    pub standardize: bool,
    pub max_resample_attempts: usize,
    /// Number of roots is uniform on `1..=max_roots`.
    pub max_roots: usize,
    /// Number of edges is uniform on `1..=max_edges`.
    pub max_edges: usize,
    /// Ablation: replace every sampled edge by the identity with unit weight
    /// and zero bias.
    pub identity_edges: bool,
    /// Replaces the default 36-entry bank.
    pub kernel_bank: Option<KernelBank>,
    pub mean_ranges: MeanRanges,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            method: Method::Cauker,
            target_length: DEFAULT_TARGET_LENGTH,
            k_max: DEFAULT_K_MAX,
            root_lengths: DEFAULT_ROOT_LENGTHS.to_vec(),
            standardize: true,
            max_resample_attempts: DEFAULT_MAX_RESAMPLE_ATTEMPTS,
            max_roots: DEFAULT_MAX_ROOTS,
            max_edges: DEFAULT_MAX_EDGES,
            identity_edges: false,
            kernel_bank: None,
            mean_ranges: MeanRanges::default(),
        }
    }
}

impl GeneratorConfig {
    pub fn new(method: Method) -> Self {
        GeneratorConfig {
            method,
            ..Default::default()
        }
    }

    pub fn bank(&self) -> Cow<'_, KernelBank> {
        match &self.kernel_bank {
            Some(b) => Cow::Borrowed(b),
            None => Cow::Owned(KernelBank::default_bank()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.target_length < 8 {
            return bad(format!(
                "target_length must be >= 8, got {}",
                self.target_length
            ));
        }
        if self.max_resample_attempts < 1 {
            return bad("max_resample_attempts must be >= 1".into());
        }
        let bank_len = match &self.kernel_bank {
            Some(b) => {
                b.kernels().iter().try_for_each(|k| k.validate())?;
                b.len()
            }
            None => crate::kernel::DEFAULT_BANK_SIZE,
        };
        if bank_len == 0 {
            return bad("kernel bank is empty".into());
        }
        if self.k_max < 1 || self.k_max > bank_len {
            return bad(format!(
                "k_max must lie in [1, {bank_len}], got {}",
                self.k_max
            ));
        }
        if self.root_lengths.is_empty() || self.root_lengths.iter().any(|&l| l < 2) {
            return bad("root_lengths must be non-empty with every length >= 2".into());
        }
        if self.max_roots < 1 || self.max_edges < 1 {
            return bad("max_roots and max_edges must be >= 1".into());
        }
        self.mean_ranges.validate()
    }
}

/// Piecewise-linear resampling of `x` onto `target` points; the output index
/// grid maps affinely onto `[0, len - 1]`, so both endpoints are kept exactly.
pub fn interpolate_linear(x: &[f64], target: usize) -> Result<Vec<f64>> {
    let n = x.len();
    if n < 2 || target < 2 {
        return Err(Error::InvalidLength(format!(
            "interpolation needs at least 2 points on both sides, got {n} -> {target}"
        )));
    }
    if n == target {
        return Ok(x.to_vec());
    }
    let den = target - 1;
    Ok((0..target)
        .map(|i| {
            let num = i * (n - 1);
            let (k, rem) = (num / den, num % den);
            if rem == 0 {
                x[k]
            } else {
                let frac = rem as f64 / den as f64;
                x[k] + frac * (x[k + 1] - x[k])
            }
        })
        .collect())
}

fn is_retryable(e: &Error) -> bool {
    matches!(
        e,
        Error::NonFiniteOutput(_)
            | Error::NonFiniteEntry { .. }
            | Error::NotPositiveDefinite { .. }
    )
}

fn draw_root_length(s: &mut SampleStream, cfg: &GeneratorConfig) -> usize {
    cfg.root_lengths[s.index_in(0, cfg.root_lengths.len() - 1)]
}

fn draw_prior(
    s: &mut SampleStream,
    cfg: &GeneratorConfig,
    bank: &KernelBank,
    len: usize,
    with_mean: bool,
) -> Result<GpPrior> {
    let kernel = sample_kernel_expr(s, bank, cfg.k_max);
    let mean = if with_mean {
        sample_mean_with(s, len, &cfg.mean_ranges)?
    } else {
        MeanSpec::zero()
    };
    GpPrior::new(mean, kernel, len)
}

impl CausalDag {
    /// Same graph with every edge made the identity, unit weights, zero biases.
    pub fn with_identity_edges(&self) -> CausalDag {
        let aggregation = (self.root_count()..self.node_count())
            .map(|j| Aggregation {
                weights: vec![1.0; self.in_degree(j)],
                bias: 0.0,
            })
            .collect();
        CausalDag::new(
            self.node_count(),
            self.root_count(),
            self.edges().to_vec(),
            vec![Activation::IDENTITY; self.edges().len()],
            aggregation,
        )
        .expect("structure unchanged")
    }
}

/// Everything drawn for one causal sample; kept for inspection and examples.
#[derive(Debug, Clone)]
pub struct CaukerTrace {
    pub priors: Vec<GpPrior>,
    pub dag: CausalDag,
    pub nodes: Vec<Vec<f64>>,
    pub selected: usize,
    pub output: Vec<f64>,
}

/// One attempt of the causal pipeline: roots from GP priors, a random DAG,
/// propagation, then one non-root node picked uniformly and resampled to
/// the target length.
pub fn cauker_attempt(
    s: &mut SampleStream,
    cfg: &GeneratorConfig,
    bank: &KernelBank,
) -> Result<CaukerTrace> {
    let m = s.index_in(1, cfg.max_roots);
    let len = draw_root_length(s, cfg);
    let mut priors = Vec::with_capacity(m);
    let mut roots = Vec::with_capacity(m);
    for _ in 0..m {
        let prior = draw_prior(s, cfg, bank, len, true)?;
        roots.push(sample_gp(s, &prior)?);
        priors.push(prior);
    }
    let e = s.index_in(1, cfg.max_edges);
    let mut dag = build_dag(s, m, e)?;
    if cfg.identity_edges {
        dag = dag.with_identity_edges();
    }
    let nodes = propagate(&dag, &roots, cfg.standardize)?;
    let selected = s.index_in(m, dag.node_count() - 1);
    let output = interpolate_linear(&nodes[selected], cfg.target_length)?;
    Ok(CaukerTrace {
        priors,
        dag,
        nodes,
        selected,
        output,
    })
}

fn attempt(s: &mut SampleStream, cfg: &GeneratorConfig, bank: &KernelBank) -> Result<Vec<f64>> {
    let out = match cfg.method {
        Method::Cauker => cauker_attempt(s, cfg, bank)?.output,
        Method::KernelSynth | Method::MeanKernelSynth => {
            let len = draw_root_length(s, cfg);
            let prior = draw_prior(s, cfg, bank, len, cfg.method == Method::MeanKernelSynth)?;
            interpolate_linear(&sample_gp(s, &prior)?, cfg.target_length)?
        }
    };
    // rows are stored as f32, so anything past its range counts as overflow
    if let Some(i) = out.iter().position(|&v| !(v as f32).is_finite()) {
        return Err(Error::NonFiniteOutput(format!("output at index {i}")));
    }
    Ok(out)
}

/// A generated series together with the number of attempts it took.
#[derive(Debug, Clone)]
pub struct Generated {
    pub values: Vec<f64>,
    pub attempts: usize,
}

/// Runs the configured pipeline, retrying on numerical failure with the next
/// draws of the same stream.
pub fn generate_sample_traced(s: &mut SampleStream, cfg: &GeneratorConfig) -> Result<Generated> {
    let bank = cfg.bank();
    generate_with_bank(s, cfg, &bank)
}

fn generate_with_bank(
    s: &mut SampleStream,
    cfg: &GeneratorConfig,
    bank: &KernelBank,
) -> Result<Generated> {
    let mut last = String::new();
    for n in 1..=cfg.max_resample_attempts {
        match attempt(s, cfg, bank) {
            Ok(values) => {
                return Ok(Generated {
                    values,
                    attempts: n,
                })
            }
            Err(e) if is_retryable(&e) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationExhausted {
        sample_index: s.sample_index(),
        attempts: cfg.max_resample_attempts,
        last,
    })
}

/// Produces one series of `cfg.target_length` values.
pub fn generate_sample(s: &mut SampleStream, cfg: &GeneratorConfig) -> Result<Vec<f64>> {
    generate_sample_traced(s, cfg).map(|g| g.values)
}

/// Resampling counters for a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub samples: u64,
    /// Samples that needed more than one attempt.
    pub resampled_samples: u64,
    /// Failed attempts summed over all samples.
    pub failed_attempts: u64,
}

impl GenerationStats {
    pub fn resample_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.resampled_samples as f64 / self.samples as f64
        }
    }

    fn record(&mut self, attempts: usize) {
        self.samples += 1;
        if attempts > 1 {
            self.resampled_samples += 1;
            self.failed_attempts += (attempts - 1) as u64;
        }
    }

    pub fn merge(&mut self, other: GenerationStats) {
        self.samples += other.samples;
        self.resampled_samples += other.resampled_samples;
        self.failed_attempts += other.failed_attempts;
    }
}

/// `n × length` row-major matrix of f32 series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesBatch {
    n: usize,
    length: usize,
    data: Vec<f32>,
    sample_indices: Vec<u64>,
}

impl SeriesBatch {
    pub fn new(n: usize, length: usize, data: Vec<f32>) -> Result<Self> {
        Self::with_indices(n, length, data, (0..n as u64).collect())
    }

    pub fn with_indices(
        n: usize,
        length: usize,
        data: Vec<f32>,
        sample_indices: Vec<u64>,
    ) -> Result<Self> {
        if data.len() != n * length {
            return Err(Error::SizeMismatch(format!(
                "{} values for a {n} x {length} batch",
                data.len()
            )));
        }
        if sample_indices.len() != n {
            return Err(Error::SizeMismatch(format!(
                "{} sample indices for {n} rows",
                sample_indices.len()
            )));
        }
        Ok(SeriesBatch {
            n,
            length,
            data,
            sample_indices,
        })
    }

    /// Builds from f64 rows of equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let length = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != length) {
            return Err(Error::SizeMismatch("rows differ in length".into()));
        }
        let data = rows.iter().flatten().map(|&v| v as f32).collect();
        Self::new(rows.len(), length, data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn sample_indices(&self) -> &[u64] {
        &self.sample_indices
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.length..(i + 1) * self.length]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f32]> {
        // chunks_exact panics on a zero chunk size
        self.data.chunks_exact(self.length.max(1)).take(self.n)
    }

    pub fn row_f64(&self, i: usize) -> Vec<f64> {
        self.row(i).iter().map(|&v| v as f64).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be >= 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))
}

fn fill_rows(
    master: MasterSeed,
    first_index: u64,
    out: &mut [f32],
    cfg: &GeneratorConfig,
    bank: &KernelBank,
) -> Result<GenerationStats> {
    let length = cfg.target_length;
    let attempts: Vec<Result<usize>> = out
        .par_chunks_mut(length)
        .enumerate()
        .map(|(k, row)| {
            let mut s = derive_stream(master, first_index + k as u64);
            let g = generate_with_bank(&mut s, cfg, bank)?;
            for (dst, src) in row.iter_mut().zip(&g.values) {
                *dst = *src as f32;
            }
            Ok(g.attempts)
        })
        .collect();
    let mut stats = GenerationStats::default();
    // first failure in index order, independent of scheduling
    for a in attempts {
        stats.record(a?);
    }
    Ok(stats)
}

/// Generates rows `0..n`; row `i` is drawn from `derive_stream(master, i)`, so
/// the batch is identical for every `workers` value.
pub fn generate_batch(
    master: MasterSeed,
    n: usize,
    cfg: &GeneratorConfig,
    workers: usize,
) -> Result<(SeriesBatch, GenerationStats)> {
    if n == 0 {
        return Err(Error::InvalidArgument("batch size must be >= 1".into()));
    }
    cfg.validate()?;
    let bank = cfg.bank();
    let mut data = vec![0.0f32; n * cfg.target_length];
    let stats = pool(workers)?.install(|| fill_rows(master, 0, &mut data, cfg, &bank))?;
    Ok((SeriesBatch::new(n, cfg.target_length, data)?, stats))
}

/// Generates rows `0..n` in chunks of [`STREAM_CHUNK`] and hands each row, in
/// index order, to `sink`. Memory use is one chunk regardless of `n`.
pub fn generate_streaming<F>(
    master: MasterSeed,
    n: usize,
    cfg: &GeneratorConfig,
    workers: usize,
    mut sink: F,
) -> Result<GenerationStats>
where
    F: FnMut(u64, &[f32]) -> Result<()>,
{
    if n == 0 {
        return Err(Error::InvalidArgument("batch size must be >= 1".into()));
    }
    cfg.validate()?;
    let bank = cfg.bank();
    let pool = pool(workers)?;
    let length = cfg.target_length;
    let mut buf = vec![0.0f32; STREAM_CHUNK.min(n) * length];
    let mut stats = GenerationStats::default();
    let mut start = 0usize;
    while start < n {
        let rows = STREAM_CHUNK.min(n - start);
        let chunk = &mut buf[..rows * length];
        stats.merge(pool.install(|| fill_rows(master, start as u64, chunk, cfg, &bank))?);
        for (k, row) in chunk.chunks_exact(length).enumerate() {
            sink((start + k) as u64, row)?;
        }
        start += rows;
    }
    Ok(stats)
}
