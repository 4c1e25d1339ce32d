//! Synthetic univariate time series from Gaussian-process kernel composition
//! propagated through random structural causal models.
//!
//! The pipeline for one sample:
//!
//! 1. compose kernels drawn from a 36-entry [`kernel::KernelBank`];
//! 2. pair each composed kernel with a sampled [`mean::MeanSpec`] and draw
//!    root series from the resulting GP priors ([`gp`]);
//! 3. build a random DAG whose edges carry activations ([`causal`]) and
//!    propagate the roots through it;
//! 4. pick one non-root node and resample it to the target length
//!    ([`generate`]).
//!
//! Every sample draws from its own substream ([`rng`]), so batches are
//! reproducible and identical for any worker count. [`analysis`] holds the
//! DTW / hierarchical-clustering tools used to inspect corpus structure and
//! [`io`] the NPY, CSV and raw writers.

pub mod analysis;
pub mod causal;
pub mod cli;
pub mod error;
pub mod generate;
pub mod gp;
pub mod io;
pub mod kernel;
pub mod mean;
pub mod rng;

pub use error::{Error, Result};
pub use generate::{generate_batch, generate_sample, GeneratorConfig, Method, SeriesBatch};
pub use rng::{derive_stream, MasterSeed, SampleStream};

/// Crate version, recorded in manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
