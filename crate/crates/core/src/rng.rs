//! Per-sample random substreams.
//!
//! Every generated sample owns a [`SampleStream`] keyed by
//! `(master seed, sample index)`. The stream is a ChaCha8 generator whose key is
//! expanded from the master seed and whose 64-bit stream id is the sample
//! index, so two samples never share keystream and a sample's draws never
//! depend on which worker produced it or in what order.

use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seed shared by every sample of one generation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MasterSeed(pub u64);

impl MasterSeed {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl From<u64> for MasterSeed {
    fn from(value: u64) -> Self {
        MasterSeed(value)
    }
}

/// Random stream owned by exactly one sample.
#[derive(Debug, Clone)]
pub struct SampleStream {
    master: MasterSeed,
    sample_index: u64,
    rng: ChaCha8Rng,
}

/// Derives the stream for `sample_index` under `master`.
///
/// Pure: equal arguments always give streams with identical draw sequences.
pub fn derive_stream(master: MasterSeed, sample_index: u64) -> SampleStream {
    let mut rng = ChaCha8Rng::seed_from_u64(master.0);
    rng.set_stream(sample_index);
    SampleStream {
        master,
        sample_index,
        rng,
    }
}

impl SampleStream {
    pub fn master(&self) -> MasterSeed {
        self.master
    }

    pub fn sample_index(&self) -> u64 {
        self.sample_index
    }

    /// Uniform draw on the half-open interval `[lo, hi)`; `lo == hi` returns `lo`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidRange(format!(
                "uniform bounds [{lo}, {hi}) are not ordered finite reals"
            )));
        }
        Ok(self.uniform_in(lo, hi))
    }

    /// Same as [`uniform`](Self::uniform) for bounds known to be valid.
    pub(crate) fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo <= hi);
        if lo == hi {
            return lo;
        }
        loop {
            let u: f64 = self.rng.random();
            let x = lo + (hi - lo) * u;
            // rounding can land exactly on `hi` for some spans
            if x < hi {
                return x;
            }
        }
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform integer on the inclusive range `[lo, hi]`.
    pub fn uniform_int(&mut self, lo: i64, hi: i64) -> Result<i64> {
        if lo > hi {
            return Err(Error::InvalidRange(format!(
                "integer bounds [{lo}, {hi}] are empty"
            )));
        }
        Ok(self.rng.random_range(lo..=hi))
    }

    /// Uniform index on the inclusive range `[lo, hi]`.
    pub(crate) fn index_in(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        self.rng.random_range(lo..=hi)
    }

    /// `k` distinct indices from `[0, n)`, uniform over k-subsets, in draw order.
    pub fn sample_without_replacement(&mut self, n: usize, k: usize) -> Result<Vec<usize>> {
        if k > n {
            return Err(Error::InvalidRange(format!(
                "cannot draw {k} distinct indices from {n}"
            )));
        }
        Ok(index::sample(&mut self.rng, n, k).into_vec())
    }

    /// Raw 32-bit word; used by tests and for cheap tie-breaking.
    pub fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn draws(master: u64, index: u64, count: usize) -> Vec<f64> {
        let mut s = derive_stream(MasterSeed(master), index);
        (0..count).map(|_| s.uniform(0.0, 1.0).unwrap()).collect()
    }

    #[test]
    fn equal_keys_give_equal_sequences() {
        assert_eq!(draws(42, 0, 100), draws(42, 0, 100));
    }

    #[test]
    fn neighbouring_indices_differ() {
        assert_ne!(draws(42, 0, 100), draws(42, 1, 100));
    }

    #[test]
    fn neighbouring_seeds_differ() {
        assert_ne!(draws(42, 0, 100), draws(43, 0, 100));
    }

    #[test]
    fn degenerate_interval() {
        let mut s = derive_stream(MasterSeed(1), 0);
        assert_eq!(s.uniform(3.0, 3.0).unwrap(), 3.0);
        assert_eq!(s.uniform_int(1, 1).unwrap(), 1);
    }

    #[test]
    fn inverted_bounds_rejected() {
        let mut s = derive_stream(MasterSeed(1), 0);
        assert!(matches!(s.uniform(1.0, 0.0), Err(Error::InvalidRange(_))));
        assert!(matches!(s.uniform_int(2, 1), Err(Error::InvalidRange(_))));
        assert!(matches!(
            s.sample_without_replacement(3, 4),
            Err(Error::InvalidRange(_))
        ));
    }

    #[test]
    fn unit_uniform_mean() {
        let v = draws(7, 3, 100_000);
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn symmetric_interval_bounds() {
        let mut s = derive_stream(MasterSeed(42), 9);
        for _ in 0..10_000 {
            let x = s.uniform(-5.0, 5.0).unwrap();
            assert!((-5.0..5.0).contains(&x));
        }
    }

    #[test]
    fn normal_moments() {
        let mut s = derive_stream(MasterSeed(11), 0);
        let v: Vec<f64> = (0..100_000).map(|_| s.standard_normal()).collect();
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var - 1.0).abs() < 0.03, "var {var}");
    }

    #[test]
    fn normal_is_deterministic() {
        let mut a = derive_stream(MasterSeed(5), 5);
        let mut b = a.clone();
        assert_eq!(a.standard_normal().to_bits(), b.standard_normal().to_bits());
    }

    #[test]
    fn full_subset_is_permutation() {
        let mut s = derive_stream(MasterSeed(0), 0);
        let mut p = s.sample_without_replacement(5, 5).unwrap();
        p.sort_unstable();
        assert_eq!(p, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn subsets_are_distinct_and_in_range() {
        let mut s = derive_stream(MasterSeed(0), 1);
        for _ in 0..1000 {
            let mut p = s.sample_without_replacement(36, 3).unwrap();
            assert!(p.iter().all(|&i| i < 36));
            p.sort_unstable();
            p.dedup();
            assert_eq!(p.len(), 3);
        }
    }

    #[test]
    fn adjacent_streams_uncorrelated() {
        let a = draws(42, 100, 100_000);
        let b = draws(42, 101, 100_000);
        let n = a.len() as f64;
        let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
        let cov: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
        let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
        let r = cov / (va * vb).sqrt();
        assert!(r.abs() < 0.01, "r = {r}");
    }

    proptest! {
        #[test]
        fn bounded_draws_respect_bounds(
            seed in any::<u64>(),
            lo in -1e6f64..1e6,
            width in 0f64..1e6,
            ilo in -1000i64..1000,
            iwidth in 0i64..1000,
        ) {
            let mut s = derive_stream(MasterSeed(seed), 0);
            let hi = lo + width;
            for _ in 0..32 {
                let x = s.uniform(lo, hi).unwrap();
                prop_assert!(x >= lo && (x < hi || lo == hi));
                let k = s.uniform_int(ilo, ilo + iwidth).unwrap();
                prop_assert!(k >= ilo && k <= ilo + iwidth);
            }
        }
    }
}
