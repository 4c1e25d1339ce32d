//! Mean-function bank: zero, linear, exponential and sparse anomalies, combined
//! pairwise by sum or elementwise product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::CombineOp;
use crate::rng::SampleStream;

/// Number of primitive mean kinds.
pub const MEAN_BANK_SIZE: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeanKind {
    Zero,
    /// `a·t + b`
    Linear {
        a: f64,
        b: f64,
    },
    /// `a·exp(b·t)`
    Exponential {
        a: f64,
        b: f64,
    },
    /// Zero except at the listed grid indices.
    Anomaly {
        spikes: Vec<(usize, f64)>,
    },
}

impl MeanKind {
    pub fn name(&self) -> &'static str {
        match self {
            MeanKind::Zero => "zero",
            MeanKind::Linear { .. } => "linear",
            MeanKind::Exponential { .. } => "exponential",
            MeanKind::Anomaly { .. } => "anomaly",
        }
    }

    fn eval(&self, grid: &[f64]) -> Vec<f64> {
        match self {
            MeanKind::Zero => vec![0.0; grid.len()],
            MeanKind::Linear { a, b } => grid.iter().map(|t| a * t + b).collect(),
            MeanKind::Exponential { a, b } => grid.iter().map(|t| a * (b * t).exp()).collect(),
            MeanKind::Anomaly { spikes } => {
                let mut out = vec![0.0; grid.len()];
                // spikes past the end of a shorter grid are dropped
                for &(i, v) in spikes {
                    if let Some(slot) = out.get_mut(i) {
                        *slot = v;
                    }
                }
                out
            }
        }
    }
}

/// A single primitive or one combination of two primitives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanSpec {
    Primitive(MeanKind),
    Combined {
        op: CombineOp,
        left: MeanKind,
        right: MeanKind,
    },
}

impl MeanSpec {
    pub fn zero() -> Self {
        MeanSpec::Primitive(MeanKind::Zero)
    }

    pub fn primitive(kind: MeanKind) -> Self {
        MeanSpec::Primitive(kind)
    }

    pub fn combined(op: CombineOp, left: MeanKind, right: MeanKind) -> Self {
        MeanSpec::Combined { op, left, right }
    }

    pub fn kinds(&self) -> Vec<&MeanKind> {
        match self {
            MeanSpec::Primitive(k) => vec![k],
            MeanSpec::Combined { left, right, .. } => vec![left, right],
        }
    }
}

/// Parameter ranges for sampled means. Continuous ranges are half-open.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeanRanges {
    pub linear_a: (f64, f64),
    pub linear_b: (f64, f64),
    pub exp_a: (f64, f64),
    pub exp_b: (f64, f64),
    pub anomaly_value: (f64, f64),
    /// Inclusive bounds on the number of spikes.
    pub anomaly_count: (usize, usize),
}

impl Default for MeanRanges {
    fn default() -> Self {
        MeanRanges {
            linear_a: (-2.0, 2.0),
            linear_b: (-2.0, 2.0),
            exp_a: (-2.0, 2.0),
            exp_b: (-3.0, 3.0),
            anomaly_value: (-5.0, 5.0),
            anomaly_count: (1, 5),
        }
    }
}

impl MeanRanges {
    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [
            ("linear_a", self.linear_a),
            ("linear_b", self.linear_b),
            ("exp_a", self.exp_a),
            ("exp_b", self.exp_b),
            ("anomaly_value", self.anomaly_value),
        ] {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Config(format!(
                    "mean range {name} = [{lo}, {hi}) is invalid"
                )));
            }
        }
        let (lo, hi) = self.anomaly_count;
        if lo < 1 || lo > hi {
            return Err(Error::Config(format!(
                "anomaly_count [{lo}, {hi}] is invalid"
            )));
        }
        Ok(())
    }
}

fn sample_kind(s: &mut SampleStream, which: usize, length: usize, r: &MeanRanges) -> MeanKind {
    let u = |s: &mut SampleStream, (lo, hi): (f64, f64)| s.uniform_in(lo, hi);
    match which {
        0 => MeanKind::Zero,
        1 => MeanKind::Linear {
            a: u(s, r.linear_a),
            b: u(s, r.linear_b),
        },
        2 => MeanKind::Exponential {
            a: u(s, r.exp_a),
            b: u(s, r.exp_b),
        },
        _ => {
            let count = s.index_in(r.anomaly_count.0, r.anomaly_count.1).min(length);
            let idx = s
                .sample_without_replacement(length, count)
                .expect("count clamped to length");
            let spikes = idx
                .into_iter()
                .map(|i| (i, u(s, r.anomaly_value)))
                .collect();
            MeanKind::Anomaly { spikes }
        }
    }
}

/// Draws two distinct primitive kinds and a combining operator, with default
/// parameter ranges.
pub fn sample_mean(s: &mut SampleStream, length: usize) -> Result<MeanSpec> {
    sample_mean_with(s, length, &MeanRanges::default())
}

pub fn sample_mean_with(
    s: &mut SampleStream,
    length: usize,
    ranges: &MeanRanges,
) -> Result<MeanSpec> {
    if length < 2 {
        return Err(Error::InvalidLength(format!(
            "mean needs at least 2 grid points, got {length}"
        )));
    }
    let kinds = s.sample_without_replacement(MEAN_BANK_SIZE, 2)?;
    let op = if s.index_in(0, 1) == 0 {
        CombineOp::Sum
    } else {
        CombineOp::Product
    };
    let left = sample_kind(s, kinds[0], length, ranges);
    let right = sample_kind(s, kinds[1], length, ranges);
    Ok(MeanSpec::Combined { op, left, right })
}

/// Evaluates `m` elementwise on `grid`.
pub fn eval_mean(m: &MeanSpec, grid: &[f64]) -> Result<Vec<f64>> {
    let out = match m {
        MeanSpec::Primitive(k) => k.eval(grid),
        MeanSpec::Combined { op, left, right } => {
            let mut a = left.eval(grid);
            for (x, y) in a.iter_mut().zip(right.eval(grid)) {
                *x = op.apply(*x, y);
            }
            a
        }
    };
    if let Some(i) = out.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteOutput(format!(
            "mean function at index {i}"
        )));
    }
    Ok(out)
}
